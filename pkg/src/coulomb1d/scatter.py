"""Scattering through truncated Coulomb barriers.

The ``lambda/|x|`` potential is regularized inside ``|x| < eps`` either
by a hole (V = 0) or by a plateau (V = lambda/eps).  This module
computes:

* half-barrier transmission/reflection amplitudes by matching a plane
  wave onto the outgoing Coulomb wave at the cut,
* the exact composed transmission of the symmetric double barrier and
  its vanishing limit as eps -> 0,
* the plateau-form transmission by exact two-interface matching (no
  first-order shortcut), valid in both the oscillatory and evanescent
  interior regimes,
* the unitary S-matrix parametrization in terms of (T, eps, eps') and
  the connection-coefficient maps between plane-wave amplitudes and the
  (regular, singular) basis on each half-line,
* the WKB/Gamow escape exponent for comparison against the exact
  half-barrier amplitude.

The outgoing wave is ``H = g + i*f``: the combination of the singular
and regular solutions behaving as ``exp(i*(u - theta))`` at ``u -> +inf``
(at ``eta = 0`` it is exactly ``exp(i*u)``).  The Wronskian ``df*g - f*dg
= +1`` then makes ``|t|^2 + |r|^2 = 1`` an identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import mpmath as mp

from .numerics import PrecisionCapError
from .specfun import (
    DEFAULT_CONTEXT,
    AccuracyError,
    DomainError,
    PrecisionContext,
    ProblemParams,
    coulomb_eval,
)

__all__ = [
    "ConnectionCoefficients",
    "SMatrix",
    "ScatteringSolution",
    "TruncationConfig",
    "coefficients_from_T",
    "coefficients_from_t_r",
    "composed_transmission",
    "exact_escape_probability",
    "half_barrier",
    "matched_solution",
    "plateau_transmission",
    "s_matrix",
    "wkb_gamow",
]

#: Reference point on the negative half-line where the left solution is
#: decomposed into incoming/outgoing plane-wave components.
_DECOMPOSE_AT = mp.mpf(-50)

_UNITARITY_TOL = mp.mpf("1e-10")


@dataclass(frozen=True)
class TruncationConfig:
    """Cutoff description: ``epsilon`` in units of 1/k, and the form.

    ``form='hole'`` zeroes the potential inside ``|x| < eps``;
    ``form='plateau'`` replaces it by the constant ``lambda/eps``.
    """

    epsilon: object
    form: str = "hole"

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", mp.mpf(self.epsilon))
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.form not in ("hole", "plateau"):
            raise ValueError(f"unknown truncation form {self.form!r}")


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes (t, r) with coefficients T, R and sign bookkeeping.

    ``eps_sign`` is defined by ``t/|t| = -i*eps_sign*r/|r|`` (from the
    identity ``t*conj(r) = -i*eps_sign*sqrt(T*R)``) and
    ``epsprime_sign`` by ``t = epsprime_sign*(1 + r)``; both are ``None``
    when the respective phase relation does not hold (they are exact
    only for symmetric-barrier solutions, asymptotically as eps -> 0).
    """

    t: object
    r: object
    T: object
    R: object
    eps_sign: Optional[int] = None
    epsprime_sign: Optional[int] = None
    achieved_digits: Optional[int] = None

    @classmethod
    def from_amplitudes(cls, t, r, achieved_digits=None,
                        phase_tol="1e-6") -> "ScatteringSolution":
        t = mp.mpc(t)
        r = mp.mpc(r)
        T = abs(t) ** 2
        R = abs(r) ** 2
        eps_sign = epsprime_sign = None
        tol = mp.mpf(phase_tol)
        if abs(t) > 0 and abs(r) > 0:
            ratio = (t / abs(t)) / (-1j * r / abs(r))
            for s in (1, -1):
                if abs(ratio - s) < tol:
                    eps_sign = s
        if abs(1 + r) > 0 and abs(t) > 0:
            ratio = t / (1 + r)
            for s in (1, -1):
                if abs(ratio - s) < tol:
                    epsprime_sign = s
        return cls(t, r, T, R, eps_sign, epsprime_sign, achieved_digits)

    def unitarity_defect(self):
        return abs(self.T + self.R - 1)


@dataclass(frozen=True)
class SMatrix:
    """Symmetric 2x2 scattering matrix."""

    entries: object  # 2x2 mp.matrix

    def unitarity_defect(self):
        S = self.entries
        prod = S * S.transpose_conj()
        return mp.mnorm(prod - mp.eye(2), "f")

    def symmetry_defect(self):
        return abs(self.entries[0, 1] - self.entries[1, 0])


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Coefficients (A, B) on u > 0 and (a, b) on u < 0 for one incidence side.

    The wave is ``A*f + B*g`` on the positive half-line and ``a*f + b*g``
    on the negative one.  Probability-density continuity across the
    origin forces ``|B/b| = exp(-pi*eta)``, and in fact
    ``B = epsprime_sign * exp(-pi*eta) * b``.
    """

    side: str
    eta: object
    A: object
    B: object
    a: object
    b: object


def _outgoing(params: ProblemParams, u, ctx: PrecisionContext):
    """Outgoing wave H = g + i*f and its derivative at u."""
    w = coulomb_eval(params, u, ctx)
    return w.g + 1j * w.f, w.dg + 1j * w.df


def _escalating(ctx: PrecisionContext, compute, defect_of):
    """Run ``compute`` with doubling precision until the defect is small."""
    current = ctx
    while True:
        with current.applied():
            result = compute(current)
        if defect_of(result) <= _UNITARITY_TOL:
            return result, current.working_digits
        try:
            current = current.escalated()
        except PrecisionCapError as exc:
            raise AccuracyError(
                "precision escalation cap reached before the unitarity "
                "defect dropped below tolerance"
            ) from exc


def half_barrier(params: ProblemParams, cfg: TruncationConfig,
                 ctx: PrecisionContext = DEFAULT_CONTEXT) -> ScatteringSolution:
    """Amplitudes for the right half-barrier, cut at ``x = eps``.

    A unit plane wave comes in from the left; matching value and slope
    at the cut against ``t*H`` gives ``t = 2/(H - i*H')`` and
    ``r = (H + i*H')/(H - i*H')`` evaluated at ``u = k*eps``.
    """
    if params.energy_sign != "positive":
        raise DomainError("half_barrier requires the scattering regime")
    if cfg.form != "hole":
        raise DomainError("half_barrier is defined for the hole form")
    u0 = params.k * cfg.epsilon

    def compute(cur):
        H, dH = _outgoing(params, u0, cur)
        denom = H - 1j * dH
        return 2 / denom, (H + 1j * dH) / denom

    (t, r), digits = _escalating(
        ctx, compute, lambda tr: abs(abs(tr[0]) ** 2 + abs(tr[1]) ** 2 - 1)
    )
    return ScatteringSolution.from_amplitudes(t, r, achieved_digits=digits)


def composed_transmission(params: ProblemParams, cfg: TruncationConfig,
                          ctx: PrecisionContext = DEFAULT_CONTEXT) -> mp.mpc:
    """Exact transmission amplitude of the symmetric double barrier.

    ``T_eps = t^2/(1 - exp(2i*k*eps)*r^2)`` from the half-barrier
    amplitudes.  ``|T_eps| <= 1`` always, and ``|T_eps| -> 0`` as
    ``eps -> 0`` for any nonzero coupling.
    """
    if cfg.form != "hole":
        raise DomainError("composed_transmission uses the hole form")
    sol = half_barrier(params, cfg, ctx)
    digits = sol.achieved_digits or ctx.working_digits
    with mp.workdps(digits):
        phase = mp.exp(2j * params.k * cfg.epsilon)
        return sol.t ** 2 / (1 - phase * sol.r ** 2)


def _inside_basis(w2, delta):
    """Even/odd interior basis values and slopes at +delta and -delta."""
    if w2 >= 0:
        w = mp.sqrt(w2)
        c, s = mp.cos(w * delta), mp.sin(w * delta)
        plus = (c, -w * s, s, w * c)
        minus = (c, w * s, -s, w * c)
    else:
        w = mp.sqrt(-w2)
        ch, sh = mp.cosh(w * delta), mp.sinh(w * delta)
        plus = (ch, w * sh, sh, w * ch)
        minus = (ch, -w * sh, -sh, w * ch)
    return plus, minus


def matched_solution(params: ProblemParams, cfg: TruncationConfig,
                     ctx: PrecisionContext = DEFAULT_CONTEXT) -> ScatteringSolution:
    """Full double-sided solution by exact matching at ``x = +-eps``.

    The interior region carries either no potential (hole) or the
    constant ``lambda/eps`` (plateau); in the latter case the interior
    wavenumber ``k' = sqrt(k^2 - lambda/eps)`` may be real (oscillatory)
    or imaginary (evanescent) and both are handled by the even/odd
    hyperbolic basis, whose arguments stay bounded as ``eps -> 0``.

    The transmitted amplitude is normalized to 1 and the left-side
    solution is decomposed into incoming/outgoing plane-wave components
    far down the negative half-line, which makes ``R + T = 1`` exact.
    """
    if params.energy_sign != "positive":
        raise DomainError("matched_solution requires the scattering regime")
    delta = params.k * cfg.epsilon
    if cfg.form == "plateau":
        # dimensionless interior dispersion: k'^2/k^2 = 1 - 2*eta/delta
        w2 = 1 - 2 * params.eta / delta
    else:
        w2 = mp.mpf(1)

    def compute(cur):
        right = coulomb_eval(params, delta, cur)
        left = coulomb_eval(params, -delta, cur)
        H = right.g + 1j * right.f
        dH = right.dg + 1j * right.df
        plus, minus = _inside_basis(w2, delta)
        e1, de1, e2, de2 = plus
        e1m, de1m, e2m, de2m = minus
        det = e1 * de2 - e2 * de1
        alpha = (H * de2 - dH * e2) / det
        beta = (dH * e1 - H * de1) / det
        lv = alpha * e1m + beta * e2m
        ld = alpha * de1m + beta * de2m
        wr = left.f * left.dg - left.g * left.df  # = -1 up to roundoff
        a = (lv * left.dg - ld * left.g) / wr
        b = (ld * left.f - lv * left.df) / wr
        far = coulomb_eval(params, _DECOMPOSE_AT, cur)
        Pf = (far.f - 1j * far.df) / 2
        Qf = (far.f + 1j * far.df) / 2
        Pg = (far.g - 1j * far.dg) / 2
        Qg = (far.g + 1j * far.dg) / 2
        P = a * Pf + b * Pg
        Q = a * Qf + b * Qg
        return 1 / P, Q / P

    (t, r), digits = _escalating(
        ctx, compute, lambda tr: abs(abs(tr[0]) ** 2 + abs(tr[1]) ** 2 - 1)
    )
    return ScatteringSolution.from_amplitudes(t, r, achieved_digits=digits)


def plateau_transmission(params: ProblemParams, cfg: TruncationConfig,
                         ctx: PrecisionContext = DEFAULT_CONTEXT) -> mp.mpf:
    """Transmission coefficient for the plateau truncation."""
    if cfg.form != "plateau":
        raise DomainError("plateau_transmission requires form='plateau'")
    return matched_solution(params, cfg, ctx).T


def s_matrix(T, eps_sign: int, epsprime_sign: int) -> SMatrix:
    """Unitary symmetric S-matrix parametrized by (T, eps, eps').

    ``S = [[T-1+i*e*e'*s, e'*T+i*e*s], [e'*T+i*e*s, T-1+i*e*e'*s]]``
    with ``s = sqrt(T - T^2)``.  ``T = 0`` yields ``-identity``.
    """
    T = mp.mpf(T)
    if not 0 <= T <= 1:
        raise DomainError("transmission coefficient must lie in [0, 1]")
    if eps_sign not in (1, -1) or epsprime_sign not in (1, -1):
        raise ValueError("eps_sign and epsprime_sign must be +-1")
    s = mp.sqrt(T - T ** 2)
    diag = T - 1 + 1j * eps_sign * epsprime_sign * s
    off = epsprime_sign * T + 1j * eps_sign * s
    return SMatrix(mp.matrix([[diag, off], [off, diag]]))


def coefficients_from_t_r(sol: ScatteringSolution, side: str,
                          eta) -> ConnectionCoefficients:
    """Map (t, r) to the (A, B, a, b) coefficients for one incidence side.

    For left incidence: ``A = i*t``, ``B = t``,
    ``a = i*exp(-pi*eta)*(1 - r)``, ``b = exp(pi*eta)*(1 + r)``.
    For right incidence the roles of the two half-lines swap.
    """
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    eta = mp.mpf(eta)
    em = mp.exp(-mp.pi * eta)
    ep = mp.exp(mp.pi * eta)
    t, r = mp.mpc(sol.t), mp.mpc(sol.r)
    if side == "L":
        return ConnectionCoefficients(
            side, eta,
            A=1j * t, B=t,
            a=1j * em * (1 - r), b=ep * (1 + r),
        )
    return ConnectionCoefficients(
        side, eta,
        A=-1j * (1 - r), B=1 + r,
        a=-1j * em * t, b=ep * t,
    )


def coefficients_from_T(T, eps_sign: int, epsprime_sign: int, side: str,
                        eta) -> ConnectionCoefficients:
    """(A, B, a, b) in the (T, eps, eps') parametrization.

    Algebraically equivalent to :func:`coefficients_from_t_r` with
    ``t = e'*T + i*e*s`` and ``r = T - 1 + i*e*e'*s``; in this form the
    continuity relation ``B = e' * exp(-pi*eta) * b`` is an identity.
    """
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    T = mp.mpf(T)
    if not 0 <= T <= 1:
        raise DomainError("transmission coefficient must lie in [0, 1]")
    e, ep_ = eps_sign, epsprime_sign
    s = mp.sqrt(T - T ** 2)
    eta = mp.mpf(eta)
    em = mp.exp(-mp.pi * eta)
    ep = mp.exp(mp.pi * eta)
    if side == "L":
        return ConnectionCoefficients(
            side, eta,
            A=-e * s + 1j * ep_ * T,
            B=ep_ * T + 1j * e * s,
            a=em * (e * ep_ * s + 1j * (2 - T)),
            b=ep * (T + 1j * e * ep_ * s),
        )
    return ConnectionCoefficients(
        side, eta,
        A=-e * ep_ * s - 1j * (2 - T),
        B=T + 1j * e * ep_ * s,
        a=em * (e * s - 1j * ep_ * T),
        b=ep * (ep_ * T + 1j * e * s),
    )


# ---------------------------------------------------------------------------
# WKB / Gamow comparison


def wkb_gamow(mass_scale, coupling, energy, inner_radius):
    """Tunneling exponents for a repulsive Coulomb tail cut at ``inner_radius``.

    ``kappa(r) = sqrt(mass_scale*(coupling/r - energy))`` is integrated
    from 0 to the classical turning point ``R_c = coupling/energy``
    (giving ``Lambda_G``) and from 0 to ``inner_radius`` (``Lambda_R``),
    using the substitution ``r = R_c*sin(theta)^2`` which removes the
    inverse-square-root turning-point singularity.  Returns
    ``(Lambda_G, Lambda_R, P)`` with ``P = exp(-2*(Lambda_G - Lambda_R))``.

    ``Lambda_G`` has the closed form ``pi*eta`` with
    ``eta = coupling*sqrt(mass_scale)/(2*sqrt(energy))``; the quadrature
    is kept as an independent route and tested against it.
    """
    mass_scale = mp.mpf(mass_scale)
    coupling = mp.mpf(coupling)
    energy = mp.mpf(energy)
    inner_radius = mp.mpf(inner_radius)
    if coupling <= 0 or energy <= 0 or mass_scale <= 0:
        raise DomainError("wkb_gamow requires a repulsive tail and E > 0")
    r_c = coupling / energy
    if not 0 < inner_radius < r_c:
        raise DomainError("inner_radius must lie inside the turning point")
    amp = 2 * r_c * mp.sqrt(mass_scale * energy)

    def integrand(theta):
        return amp * mp.cos(theta) ** 2

    lambda_g = mp.quad(integrand, [0, mp.pi / 2])
    theta_r = mp.asin(mp.sqrt(inner_radius / r_c))
    lambda_r = mp.quad(integrand, [0, theta_r])
    p = mp.exp(-2 * (lambda_g - lambda_r))
    return lambda_g, lambda_r, p


def exact_escape_probability(mass_scale, coupling, energy, inner_radius,
                             ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Exact ``|t|^2`` through the half-barrier cut at ``inner_radius``.

    The comparison partner of :func:`wkb_gamow`: as ``inner_radius -> 0``
    this vanishes while the WKB factor stays bounded away from zero.
    """
    mass_scale = mp.mpf(mass_scale)
    k = mp.sqrt(mass_scale * mp.mpf(energy))
    eta = mp.mpf(coupling) * mass_scale / (2 * k)
    params = ProblemParams.from_eta(eta, k)
    sol = half_barrier(params, TruncationConfig(inner_radius), ctx)
    return sol.T
