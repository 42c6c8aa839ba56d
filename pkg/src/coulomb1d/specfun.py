"""Special functions for the one-dimensional Coulomb problem.

The scattering states of the Schrodinger equation with potential
``lambda/|x|`` on the line are built from a regular solution ``f`` and a
singular solution ``g``, parametrized by the Sommerfeld parameter
``eta = lambda/(2k)``.  On the positive half-line these are the L = 0
Coulomb wave functions; on the negative half-line the same functions
reappear with ``eta`` negated.  This module evaluates them (and their
derivatives) in three regimes:

* ``series``   -- confluent hypergeometric M and U, valid everywhere,
* ``maclaurin`` -- small-argument expansions, including the logarithmic
  term in the derivative of ``g``,
* ``asymptotic`` -- large-argument trigonometric expansions, summed to
  optimal truncation, with the ``exp(+-pi*eta)`` amplitude factors on
  the negative half-line.

It also provides the hyperbolic (bound-regime) series ``J`` and ``K``
and a small dispatch front-end for the Bessel, Laguerre, and complete
elliptic functions the bound-state machinery needs.

Conventions
-----------
The regular solution satisfies ``f(u) ~ C_eta * u`` near zero with
``C_eta = exp(-pi*eta/2)*sqrt(pi*eta/sinh(pi*eta))``; the singular one
has ``g(0+) = 1/C_eta`` and a derivative diverging like
``2*eta*log(2|u|)/C_eta``.  The Wronskian ``df*g - f*dg`` equals +1 for
all ``eta`` (at ``eta = 0``: ``cos^2 + sin^2``).
"""

from __future__ import annotations

import warnings
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

import mpmath as mp

from .numerics import NumericsError, PrecisionCapError, max_digits

__all__ = [
    "AccuracyError",
    "DomainError",
    "PoleError",
    "PrecisionContext",
    "ProblemParams",
    "SingularityError",
    "WaveEval",
    "bessel_and_friends",
    "bound_series_JK",
    "coulomb_C",
    "coulomb_asymptotic",
    "coulomb_eval",
    "coulomb_maclaurin",
    "digamma_real",
    "gamma_complex",
    "hyp_M",
    "hyp_U",
    "theta_phase",
]


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a singular point (u = 0)."""


class PoleError(DomainError):
    """Evaluation requested at a pole of the gamma function."""


class AccuracyError(NumericsError):
    """The requested relative accuracy could not be reached."""


@dataclass(frozen=True)
class PrecisionContext:
    """Precision policy threaded through every evaluation.

    ``working_digits`` is the mpmath decimal precision; ``target_rel_err``
    the requested relative accuracy of results.  Four guard digits are
    enforced between the two.
    """

    working_digits: int = 50
    target_rel_err: float = 1e-40

    def __post_init__(self) -> None:
        if self.working_digits < 16:
            raise ValueError("working_digits must be at least 16")
        if self.target_rel_err <= 0:
            raise ValueError("target_rel_err must be positive")
        if mp.mpf(self.target_rel_err) < mp.mpf(10) ** (-self.working_digits + 4):
            raise ValueError("target_rel_err leaves no guard digits")

    @contextmanager
    def applied(self):
        with mp.workdps(self.working_digits):
            yield

    def escalated(self) -> "PrecisionContext":
        """Return a context with doubled working precision (same target)."""
        doubled = min(2 * self.working_digits, max_digits())
        if doubled == self.working_digits:
            raise PrecisionCapError(
                f"cannot escalate beyond {self.working_digits} digits"
            )
        return PrecisionContext(doubled, self.target_rel_err)


DEFAULT_CONTEXT = PrecisionContext()


@dataclass(frozen=True)
class ProblemParams:
    """Physical parameters (coupling, energy) and their derived quantities.

    Attributes
    ----------
    lam : mpf
        Coupling of the ``lam/|x|`` potential; sign is the sign of the
        charge product.
    energy_sign : {'positive', 'negative'}
        Scattering vs bound regime.
    k : mpf
        Wavenumber, ``sqrt(|energy|)``; always positive.
    eta : mpf
        Sommerfeld parameter ``lam/(2k)``.
    """

    lam: object
    energy_sign: str
    k: object
    eta: object

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", mp.mpf(self.lam))
        object.__setattr__(self, "k", mp.mpf(self.k))
        object.__setattr__(self, "eta", mp.mpf(self.eta))
        if self.energy_sign not in ("positive", "negative"):
            raise ValueError("energy_sign must be 'positive' or 'negative'")
        if not self.k > 0:
            raise ValueError("wavenumber k must be positive")
        if abs(self.eta - self.lam / (2 * self.k)) > mp.mpf("1e-12") * max(
                mp.mpf(1), abs(self.eta)):
            raise ValueError("eta must equal lam/(2k)")
        if self.energy_sign == "negative" and not self.lam < 0:
            raise ValueError("bound regime requires attractive coupling (lam < 0)")

    @classmethod
    def from_coupling(cls, lam, energy) -> "ProblemParams":
        """Build parameters from the coupling and the (signed) energy."""
        lam = mp.mpf(lam)
        energy = mp.mpf(energy)
        if energy == 0:
            raise ValueError("energy must be nonzero")
        sign = "positive" if energy > 0 else "negative"
        k = mp.sqrt(abs(energy))
        return cls(lam, sign, k, lam / (2 * k))

    @classmethod
    def from_eta(cls, eta, k=1) -> "ProblemParams":
        """Build scattering parameters directly from eta (k defaults to 1)."""
        eta = mp.mpf(eta)
        k = mp.mpf(k)
        return cls(2 * k * eta, "positive", k, eta)


@dataclass(frozen=True)
class WaveEval:
    """Joint value/derivative of the regular and singular solutions.

    ``regime`` records which evaluation path produced the numbers:
    ``series``, ``maclaurin``, or ``asymptotic``.
    """

    f: object
    g: object
    df: object
    dg: object
    regime: str

    def wronskian(self):
        """``df*g - f*dg``; constant in u (equal to +1)."""
        return self.df * self.g - self.f * self.dg


# ---------------------------------------------------------------------------
# elementary building blocks


def gamma_complex(z) -> mp.mpc:
    """Complex gamma function with an explicit pole check."""
    z = mp.mpc(z)
    if z.imag == 0 and z.real <= 0 and mp.isint(z.real):
        raise PoleError(f"gamma pole at z = {z.real}")
    return mp.gamma(z)


def hyp_M(a, b, z) -> mp.mpc:
    """Regular confluent hypergeometric function M(a, b, z) (= 1F1)."""
    b = mp.mpc(b)
    if b.imag == 0 and b.real <= 0 and mp.isint(b.real):
        raise PoleError(f"M(a,b,z) undefined at non-positive integer b = {b.real}")
    return mp.hyp1f1(a, b, z)


def hyp_U(a, b, z) -> mp.mpc:
    """Irregular confluent hypergeometric function U(a, b, z).

    The principal branch (cut along the negative real axis) is used;
    the integer-b logarithmic case is handled by mpmath's limit formula.
    """
    if z == 0:
        raise DomainError("U(a,b,z) is singular at z = 0")
    return mp.hyperu(a, b, z)


def coulomb_C(eta):
    """Amplitude ``C_eta = exp(-pi*eta/2)*sqrt(pi*eta/sinh(pi*eta))``.

    Continuous at ``eta = 0`` where it equals 1, and satisfies
    ``C_(-eta) = exp(pi*eta)*C_eta``.
    """
    eta = mp.mpf(eta)
    if eta == 0:
        return mp.mpf(1)
    x = mp.pi * eta
    return mp.exp(-x / 2) * mp.sqrt(x / mp.sinh(x))


def digamma_real(eta):
    """``Re(digamma(1 + i*eta))``; even in eta.

    This is the constant accompanying ``log(2|u|)`` in the small-u
    behavior of the singular solution's derivative.
    """
    eta = mp.mpf(eta)
    return mp.re(mp.digamma(1 + 1j * eta))


def theta_phase(eta, u):
    """Logarithmic phase ``eta*log(2u) - arg(gamma(1 + i*eta))`` for u > 0."""
    u = mp.mpf(u)
    if u <= 0:
        raise DomainError("theta_phase requires u > 0; use |u| for u < 0")
    eta = mp.mpf(eta)
    return eta * mp.log(2 * u) - mp.arg(mp.gamma(1 + 1j * eta))


# ---------------------------------------------------------------------------
# the three evaluation regimes for the continued pair (F_eta, G_eta)
#
# All three helpers evaluate the analytic continuations of the positive
# half-line basis to either sign of u.  The user-facing pair (f, g) is
# obtained by negating eta for u < 0.


def _fg_series(eta, u):
    """Hypergeometric-route values of (F, G, F', G') at any u != 0."""
    u = mp.mpf(u)
    eta = mp.mpf(eta)
    if eta == 0:
        return mp.sin(u), mp.cos(u), mp.cos(u), -mp.sin(u)
    a = 1 - 1j * eta
    Ce = coulomb_C(eta)
    ph = mp.exp(-1j * u)
    M = mp.hyp1f1(a, 2, 2j * u)
    dM = a / 2 * mp.hyp1f1(a + 1, 3, 2j * u)
    F = mp.re(Ce * u * ph * M)
    dF = mp.re(Ce * ph * ((1 - 1j * u) * M + 2j * u * dM))
    zfac = 2 * eta * mp.gamma(-1j * eta) / Ce
    U = mp.hyperu(a, 2, 2j * u)
    dU = -a * mp.hyperu(a + 1, 3, 2j * u)
    G = mp.re(zfac * u * ph * U)
    dG = mp.re(zfac * ph * ((1 - 1j * u) * U + 2j * u * dU))
    return F, G, dF, dG


def _maclaurin_radius(eta):
    # Second-order truncation error stays below 1e-6 inside this radius.
    return mp.mpf("0.05") / (1 + abs(mp.mpf(eta)))


def _fg_maclaurin(eta, u):
    """Small-|u| expansions of (F, G, F', G'), valid for either sign of u."""
    u = mp.mpf(u)
    eta = mp.mpf(eta)
    Ce = coulomb_C(eta)
    L = mp.log(abs(2 * u)) + digamma_real(eta) + 2 * mp.euler
    F = Ce * (u + eta * u ** 2)
    dF = Ce * (1 + 2 * eta * u)
    G = (2 * eta * (u + eta * u ** 2) * (L - 1)
         + 1 - (1 + 6 * eta ** 2) / 2 * u ** 2) / Ce
    dG = (2 * eta * ((1 + 2 * eta * u) * L - eta * u)
          - (1 + 6 * eta ** 2) * u) / Ce
    return F, G, dF, dG


def _asym_radius(eta):
    return max(mp.mpf(30), 10 * (1 + abs(mp.mpf(eta))) ** 2) / 2


def _fg_asym(eta, u, order: Optional[int] = None):
    """Large-|u| expansions of (F, G, F', G') and a truncation-error bound.

    The outgoing combination g + i*f equals exp(i*(u - theta)) times a
    formal series in 1/u whose coefficient recursion follows from the
    differential equation; its real and imaginary parts reproduce the
    documented 1/u and 1/u^2 correction terms.  With ``order=None`` the
    series is summed to its smallest term; otherwise exactly ``order``
    correction terms are kept.  For u < 0 the amplitudes pick up
    ``exp(-pi*eta)`` (regular) and ``exp(+pi*eta)`` (singular) factors.
    """
    u = mp.mpf(u)
    eta = mp.mpf(eta)
    a, b = 1j * eta, 1 + 1j * eta
    term = mp.mpc(1)
    S = mp.mpc(1)
    Sd = mp.mpc(0)
    k = 0
    grew = False
    while True:
        nxt = term * (a + k) * (b + k) / ((k + 1) * 2j * u)
        if order is None:
            if abs(nxt) >= abs(term):
                err = abs(term)
                break
        else:
            if k >= order:
                err = abs(nxt)
                break
            if abs(nxt) >= abs(term):
                grew = True
        k += 1
        term = nxt
        S += term
        Sd += k * term
    if grew:
        warnings.warn(
            "asymptotic terms grew before the requested order; "
            "result is outside the series' useful range",
            RuntimeWarning,
        )
    w = u - (eta * mp.log(2 * abs(u)) - mp.arg(mp.gamma(1 + 1j * eta)))
    wp = 1 - eta / u
    S1, S2 = mp.re(S), mp.im(S)
    S1d, S2d = mp.re(-Sd / u), mp.im(-Sd / u)
    sw, cw = mp.sin(w), mp.cos(w)
    pF = mp.mpf(1) if u > 0 else mp.exp(-mp.pi * eta)
    pG = mp.mpf(1) if u > 0 else mp.exp(mp.pi * eta)
    F = pF * (S1 * sw + S2 * cw)
    G = pG * (S1 * cw - S2 * sw)
    dF = pF * (S1d * sw + S1 * wp * cw + S2d * cw - S2 * wp * sw)
    dG = pG * (S1d * cw - S1 * wp * sw - S2d * sw - S2 * wp * cw)
    # err is on the scale of the unit-magnitude series, i.e. relative.
    return (F, G, dF, dG), err


# ---------------------------------------------------------------------------
# user-facing evaluators for (f_eta, g_eta) on R \ {0}


def _effective_eta(params: ProblemParams, u) -> mp.mpf:
    # On the negative half-line the basis reappears with eta negated.
    return params.eta if u > 0 else -params.eta


def coulomb_maclaurin(params: ProblemParams, u,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> WaveEval:
    """Small-|u| evaluation of (f, g, df, dg).

    Valid inside ``|u| < 0.05/(1 + |eta|)``; outside that radius a
    :class:`DomainError` is raised.  The derivative of g carries the
    ``log(2|u|)`` term explicitly, so this regime remains meaningful for
    arbitrarily small cutoffs (only the exponent of u matters, not
    extra working precision).
    """
    u = mp.mpf(u)
    if u == 0:
        raise SingularityError("u = 0 is a singular point")
    if abs(u) >= _maclaurin_radius(params.eta):
        raise DomainError(
            f"|u| = {mp.nstr(abs(u), 5)} outside the expansion radius"
        )
    with ctx.applied():
        F, G, dF, dG = _fg_maclaurin(_effective_eta(params, u), u)
        return WaveEval(F, G, dF, dG, "maclaurin")


def coulomb_asymptotic(params: ProblemParams, u, order: Optional[int] = None,
                       ctx: PrecisionContext = DEFAULT_CONTEXT) -> WaveEval:
    """Large-|u| evaluation of (f, g, df, dg).

    Parameters
    ----------
    order : int or None
        Number of 1/u correction terms; ``None`` sums to the smallest
        term.  A :class:`RuntimeWarning` is emitted if the terms grow
        before ``order`` is reached.
    """
    u = mp.mpf(u)
    if u == 0:
        raise SingularityError("u = 0 is a singular point")
    with ctx.applied():
        vals, _ = _fg_asym(_effective_eta(params, u), u, order)
        return WaveEval(*vals, "asymptotic")


def _series_stable(params: ProblemParams, u, ctx: PrecisionContext):
    """Series-route evaluation, escalating precision until stable."""
    eta = _effective_eta(params, u)
    target = mp.mpf(ctx.target_rel_err)
    current = ctx
    with current.applied():
        vals = _fg_series(eta, u)
    while True:
        probe = PrecisionContext(
            min(current.working_digits + 15, max_digits()),
            current.target_rel_err,
        )
        with probe.applied():
            check = _fg_series(eta, u)
        worst = max(
            abs(v - c) / max(abs(c), mp.mpf(1)) for v, c in zip(vals, check)
        )
        if worst <= target:
            return check
        try:
            current = current.escalated()
        except PrecisionCapError as exc:
            raise AccuracyError(
                f"series evaluation unstable at u = {mp.nstr(u, 8)}: "
                f"residual {mp.nstr(worst, 3)} above target"
            ) from exc
        with current.applied():
            vals = _fg_series(eta, u)


def coulomb_eval(params: ProblemParams, u,
                 ctx: PrecisionContext = DEFAULT_CONTEXT) -> WaveEval:
    """Evaluate (f, g, df, dg) at any u != 0, choosing the best regime.

    Dispatch: the Maclaurin expansion when its truncation error (of
    relative size ``((1+|eta|)u)^2`` up to logs) meets the accuracy
    target -- crucial for extremely small cutoffs, where only the
    exponent of u matters; the asymptotic series beyond
    ``|u| > max(15, 5*(1+|eta|)^2)`` when its optimal-truncation error
    meets the target; and the hypergeometric series route otherwise
    (with automatic precision escalation).
    """
    if params.energy_sign != "positive":
        raise DomainError("coulomb_eval is defined for the scattering regime")
    u = mp.mpf(u)
    if u == 0:
        raise SingularityError("u = 0 is a singular point")
    if abs(u) < _maclaurin_radius(params.eta):
        scaled = abs(u) * (1 + abs(params.eta))
        mac_err = scaled ** 2 * (1 + abs(mp.log(abs(u))))
        if mac_err <= mp.mpf(ctx.target_rel_err):
            return coulomb_maclaurin(params, u, ctx)
    if abs(u) > _asym_radius(params.eta):
        with ctx.applied():
            vals, err = _fg_asym(_effective_eta(params, u), u)
            if err <= mp.mpf(ctx.target_rel_err):
                return WaveEval(*vals, "asymptotic")
    with ctx.applied():
        vals = _series_stable(params, u, ctx)
        return WaveEval(*vals, "series")


# ---------------------------------------------------------------------------
# bound-regime series


def bound_series_JK(eta, u, ctx: PrecisionContext = DEFAULT_CONTEXT,
                    max_terms: int = 2000):
    """Hyperbolic-regime solutions (J, K) at u > 0.

    ``J`` is the regular entire series with coefficients
    ``(k+1)(k+2)A_{k+2} = 2*eta*A_{k+1} + A_k`` (A_1 = 1, A_2 = eta); it
    equals ``u*exp(-u)*M(1+eta, 2, 2u)``.  ``K`` combines ``J`` with the
    companion series theta_eta through

        K = [2*eta*J*(log(2u) - 1 + digamma(1+eta) + 2*euler) + theta]
            / gamma(1+eta),

    where the ``1/gamma(1+eta)`` normalization was fixed by matching the
    closed form ``2u*exp(-u)*U(1+eta, 2, 2u)`` at a reference point (the
    ratio is u-independent, with no admixture of J).

    Raises
    ------
    PoleError
        When ``1 + eta`` is a non-positive integer (these are exactly
        the regular eigenvalues, where digamma and 1/gamma blow up).
    """
    u = mp.mpf(u)
    eta = mp.mpf(eta)
    if u <= 0:
        raise DomainError("bound_series_JK requires u > 0")
    if eta <= -1 and mp.isint(eta):
        raise PoleError(f"digamma/gamma pole at 1 + eta = {1 + eta}")
    with ctx.applied():
        tol = mp.mpf(ctx.target_rel_err)
        A = [mp.mpf(0), mp.mpf(1), eta]
        aa = [mp.mpf(1), mp.mpf(-1)]
        J = A[1] * u + A[2] * u ** 2
        TH = aa[0] + aa[1] * u
        small = 0
        for k in range(1, max_terms):
            A.append((2 * eta * A[k + 1] + A[k]) / ((k + 1) * (k + 2)))
            aa.append((2 * eta * aa[k] + aa[k - 1]
                       - 2 * eta * (2 * k + 1) * A[k + 1]) / (k * (k + 1)))
            tJ = A[k + 2] * u ** (k + 2)
            tT = aa[k + 1] * u ** (k + 1)
            J += tJ
            TH += tT
            scale = max(abs(J), abs(TH), mp.mpf(1))
            if abs(tJ) < tol * scale and abs(tT) < tol * scale:
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        L = mp.log(2 * u) - 1 + mp.digamma(1 + eta) + 2 * mp.euler
        K = (2 * eta * J * L + TH) / mp.gamma(1 + eta)
        return J, K


def bound_series_J(eta, u, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Regular hyperbolic series J alone; valid for either sign of u.

    Satisfies the reflection symmetry ``J(-eta, u) = -J(eta, -u)``.
    """
    u = mp.mpf(u)
    eta = mp.mpf(eta)
    with ctx.applied():
        if eta == mp.floor(eta) and eta <= -1:
            # terminating series: the hypergeometric sum is a Laguerre
            # polynomial, which hypsum cannot evaluate at its own zeros
            n = int(-eta)
            return u * mp.exp(-u) * laguerre_poly(n - 1, 1, 2 * u) / n
        return u * mp.exp(-u) * mp.hyp1f1(1 + eta, 2, 2 * u)


# ---------------------------------------------------------------------------
# plumbing dispatch for classical special functions

_BESSEL_KINDS = ("I0", "I1", "K0", "K1", "laguerre", "elliptic_K", "elliptic_E")


def laguerre_poly(n: int, alpha: int, x):
    """Generalized Laguerre polynomial by the three-term recurrence.

    Exact at polynomial nodes, where hypergeometric summation cannot
    settle the sign of the (zero) result.
    """
    if n < 0:
        raise ValueError("laguerre order must be non-negative")
    x = mp.mpf(x)
    prev = mp.mpf(1)
    if n == 0:
        return prev
    curr = 1 + alpha - x
    for k in range(1, n):
        prev, curr = curr, ((2 * k + alpha + 1 - x) * curr
                            - (k + alpha) * prev) / (k + 1)
    return curr


def bessel_and_friends(kind: str, arg, n: Optional[int] = None):
    """Evaluate a classical special function by name.

    ``kind`` is one of ``I0, I1, K0, K1, laguerre, elliptic_K,
    elliptic_E``.  The elliptic integrals use the parameter (m)
    convention.  ``laguerre`` requires ``n`` and returns the pair
    ``(L_n(arg), L_n'(arg))``.
    """
    if kind not in _BESSEL_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    arg = mp.mpf(arg)
    if kind in ("K0", "K1") and arg <= 0:
        raise DomainError(f"{kind} requires a positive argument")
    if kind == "I0":
        return mp.besseli(0, arg)
    if kind == "I1":
        return mp.besseli(1, arg)
    if kind == "K0":
        return mp.besselk(0, arg)
    if kind == "K1":
        return mp.besselk(1, arg)
    if kind == "elliptic_K":
        if arg >= 1:
            raise DomainError("elliptic_K diverges for parameter m >= 1")
        return mp.ellipk(arg)
    if kind == "elliptic_E":
        if arg > 1:
            raise DomainError("elliptic_E requires parameter m <= 1")
        return mp.ellipe(arg)
    # laguerre
    if n is None or n < 0:
        raise ValueError("laguerre requires a non-negative order n")
    L = laguerre_poly(n, 0, arg)
    dL = -laguerre_poly(n - 1, 1, arg) if n >= 1 else mp.mpf(0)
    return L, dL
