"""Shared numerical infrastructure.

This module provides the three services every other part of the package
relies on:

* adaptive quadrature on semi-infinite or symmetric domains, with an
  error estimate obtained from the conservative doubling rule (the
  difference between two successive refinement levels),
* limit extrapolation in a cutoff parameter, fitting either a power-law
  or a logarithmic correction model by least squares,
* an extended-precision execution context wrapping mpmath's working
  precision, with a configurable hard cap.

All routines are pure functions; the only ambient state they touch is
mpmath's thread-local precision, and that only through ``mp.workdps``
context managers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath as mp

__all__ = [
    "DEFAULT_MAX_DIGITS",
    "ExtrapolationSpec",
    "NumericsError",
    "PrecisionCapError",
    "QuadratureSpec",
    "ToleranceError",
    "extrapolate_limit",
    "integrate",
    "max_digits",
    "with_precision",
]

#: Hard ceiling on the working precision, overridable through the
#: ``COULOMB1D_MAX_DIGITS`` environment variable.
DEFAULT_MAX_DIGITS = 2048

#: Interior split points used for the semi-infinite domain.  The
#: integrands of interest decay exponentially, so a handful of panels
#: followed by an infinite tail panel is enough for mpmath's quadrature.
_INF_SPLITS = (1, 5, 20, 60, 150)


class NumericsError(ArithmeticError):
    """Base class for numerical failures in this package."""


class ToleranceError(NumericsError):
    """A requested tolerance could not be met within the refinement budget."""


class PrecisionCapError(NumericsError):
    """A computation requested more digits than the configured maximum."""


def max_digits() -> int:
    """Return the precision cap, honoring ``COULOMB1D_MAX_DIGITS``."""
    raw = os.environ.get("COULOMB1D_MAX_DIGITS")
    if raw is None:
        return DEFAULT_MAX_DIGITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise PrecisionCapError(
            f"COULOMB1D_MAX_DIGITS must be an integer, got {raw!r}"
        ) from exc
    if value < 16:
        raise PrecisionCapError("COULOMB1D_MAX_DIGITS must be at least 16")
    return value


@dataclass(frozen=True)
class QuadratureSpec:
    """Description of a definite integral to be computed adaptively.

    Parameters
    ----------
    domain : {'zero_to_inf', 'symmetric_interval'}
        Integration domain.  ``symmetric_interval`` means
        ``[-half_width, half_width]``.
    singularity_hint : {'none', 'log_at_zero', 'inv_sqrt_at_endpoint'}
        Advisory flag describing the worst endpoint behavior; tanh-sinh
        quadrature absorbs both hinted singularity types.
    abs_tol, rel_tol : float
        Acceptance thresholds for the error estimate.
    max_refinements : int
        Number of times the quadrature degree may be raised before
        giving up.
    method : {'tanh-sinh', 'gauss-legendre'}
        Underlying mpmath scheme.  Two genuinely different schemes are
        kept available so results can be cross-validated.
    half_width : float
        Extent of the symmetric interval; ignored for ``zero_to_inf``.
    """

    domain: str = "zero_to_inf"
    singularity_hint: str = "none"
    abs_tol: float = 1e-30
    rel_tol: float = 1e-25
    max_refinements: int = 8
    method: str = "tanh-sinh"
    half_width: float = 1.0

    def __post_init__(self) -> None:
        if self.domain not in ("zero_to_inf", "symmetric_interval"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.singularity_hint not in ("none", "log_at_zero", "inv_sqrt_at_endpoint"):
            raise ValueError(f"unknown singularity hint {self.singularity_hint!r}")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be at least 1")
        if self.method not in ("tanh-sinh", "gauss-legendre"):
            raise ValueError(f"unknown method {self.method!r}")


def _panel_points(spec: QuadratureSpec) -> list:
    if spec.domain == "zero_to_inf":
        return [mp.mpf(0), *(mp.mpf(s) for s in _INF_SPLITS), mp.inf]
    h = mp.mpf(spec.half_width)
    # Split at zero so an integrable singularity there sits on a panel edge.
    return [-h, mp.mpf(0), h]


def integrate(f: Callable, spec: QuadratureSpec) -> tuple:
    """Integrate ``f`` over the domain described by ``spec``.

    Returns
    -------
    (value, error_estimate) : tuple of mpf
        ``error_estimate`` is the difference between the last two
        refinement levels, a conservative bound for smooth integrands.

    Raises
    ------
    ToleranceError
        If the estimate still exceeds ``abs_tol + rel_tol*|value|``
        after ``max_refinements`` degree increases.
    """
    points = _panel_points(spec)
    previous = None
    value = err = None
    for level in range(spec.max_refinements + 1):
        degree = 4 + level
        value = mp.quad(f, points, method=spec.method, maxdegree=degree)
        if previous is not None:
            err = abs(value - previous)
            if err <= mp.mpf(spec.abs_tol) + mp.mpf(spec.rel_tol) * abs(value):
                return value, err
        previous = value
    raise ToleranceError(
        f"quadrature error estimate {mp.nstr(err, 5)} above tolerance "
        f"after {spec.max_refinements} refinements"
    )


@dataclass(frozen=True)
class ExtrapolationSpec:
    """Model declaration for extrapolating a cutoff parameter to zero.

    ``richardson_power`` fits ``c0 + c1*eps + ... + c_order*eps^order``.
    ``richardson_log`` augments each power with a logarithmic companion,
    ``c0 + d0*log(eps) + sum_k eps^k*(c_k + d_k*log(eps))``, which is the
    natural correction class for integrands with log-singular endpoints.
    """

    grid: Sequence[float] = field(default_factory=tuple)
    model: str = "richardson_power"
    order: int = 2

    def __post_init__(self) -> None:
        if self.model not in ("richardson_power", "richardson_log"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.order < 1:
            raise ValueError("order must be at least 1")
        eps = [mp.mpf(e) for e in self.grid]
        if eps and (any(e <= 0 for e in eps) or any(
                a <= b for a, b in zip(eps, eps[1:]))):
            raise ValueError("grid must be strictly decreasing and positive")


def _basis(model: str, order: int, eps) -> list:
    cols = [mp.mpf(1)]
    log_eps = mp.log(eps)
    if model == "richardson_log":
        cols.append(log_eps)
    for k in range(1, order + 1):
        cols.append(eps ** k)
        if model == "richardson_log":
            cols.append(eps ** k * log_eps)
    return cols


def _lstsq_limit(samples, model: str, order: int):
    rows = [_basis(model, order, mp.mpf(e)) for e, _ in samples]
    ncols = len(rows[0])
    if len(rows) < ncols:
        raise ValueError(
            f"need at least {ncols} samples for {model} of order {order}, "
            f"got {len(rows)}"
        )
    A = mp.matrix(rows)
    y = mp.matrix([mp.mpf(v) for _, v in samples])
    coeffs = mp.qr_solve(A, y)[0]
    residual = mp.norm(A * coeffs - y)
    return coeffs[0], residual


def extrapolate_limit(samples: Sequence, spec: ExtrapolationSpec) -> tuple:
    """Estimate ``lim value(eps)`` as ``eps -> 0`` from sampled pairs.

    Parameters
    ----------
    samples : sequence of (eps, value) pairs
        Cutoff values need not match ``spec.grid``; the grid there is
        advisory.  At least ``order + 1`` samples are required.

    Returns
    -------
    (limit_estimate, uncertainty) : tuple of mpf
        The uncertainty combines the fit residual with the shift
        observed when the model order is reduced by one, whichever is
        larger.
    """
    if len(samples) < spec.order + 1:
        raise ValueError("not enough samples for the requested order")
    limit, residual = _lstsq_limit(samples, spec.model, spec.order)
    if spec.order > 1:
        lower, _ = _lstsq_limit(samples, spec.model, spec.order - 1)
        uncertainty = max(residual, abs(limit - lower))
    else:
        uncertainty = residual
    return limit, uncertainty


def with_precision(digits: int, computation: Callable, *args, **kwargs):
    """Run ``computation`` under ``digits`` decimal digits of precision.

    Raises
    ------
    PrecisionCapError
        If ``digits`` exceeds the configured maximum (see
        :func:`max_digits`) or is below the 16-digit floor.
    """
    if digits < 16:
        raise PrecisionCapError("working precision below the 16-digit floor")
    cap = max_digits()
    if digits > cap:
        raise PrecisionCapError(
            f"requested {digits} digits, cap is {cap} "
            "(set COULOMB1D_MAX_DIGITS to raise it)"
        )
    with mp.workdps(digits):
        return computation(*args, **kwargs)
