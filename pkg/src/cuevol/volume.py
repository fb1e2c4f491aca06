"""Haar volume of chordal balls ``B(r) = {U : ||U - I||_F <= r}`` in ``U(n)``.

Since ``||U - I||_F^2 = 2n - 2 Re tr U``, the volume is the probability
``P(X >= n/2 - r^2/4)`` for ``X = Re tr(U) / 2``. Fourier inversion against the
characteristic function ``D_n`` gives

    mu(r) = (1/pi) int_0^inf [sin(n nu/2) + sin(b nu)] / nu * D_n(nu) d nu,
    b = r^2/4 - n/2,

which :func:`volume_exact` integrates numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import quadrature
from .cue_core import bessel_toeplitz_det
from .errors import ConvergenceError, DomainError, ToleranceError
from .specfun import (
    CONTRACTS, erf_diff, erfc, erfinv_complement_log, gauss_2f1, log_erf_diff,
    log_erfc,
)

__all__ = [
    "Method", "BallQuery", "VolumeEstimate", "volume_exact", "volume_asymptotic",
    "volume_n1_closed", "volume_n2_closed", "volume_inverse", "asymptotic_offset",
    "default_tolerance", "bessel_square_integral",
]

EXACT_MAX_N = 8
MIN_TOL = 1e-10
FLOOR_TOL_LARGE_N = 1e-8
MAX_UPPER = 2.0e4          # largest truncation point tried for n >= 3


class Method(str, enum.Enum):
    EXACT = "exact_quadrature"
    ASYMPTOTIC = "asymptotic"
    CLOSED_N1 = "closed_n1"
    CLOSED_N2 = "closed_n2"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class BallQuery:
    """Ball of chordal radius ``r`` about the identity of ``U(n)``."""

    n: int
    r: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be a positive integer")
        if not math.isfinite(self.r) or self.r < 0 or self.r > self.r_max * (1 + 1e-15):
            raise DomainError(f"r must lie in [0, 2 sqrt(n)] = [0, {self.r_max:.17g}]")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "r", min(float(self.r), self.r_max))

    @property
    def r_max(self):
        return 2.0 * math.sqrt(self.n)

    @property
    def shift(self):
        """``b = r^2/4 - n/2``, the threshold offset of ``X``."""
        return 0.25 * self.r * self.r - 0.5 * self.n


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    abs_error: float
    method: Method

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "abs_error", float(self.abs_error))
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"volume {self.value!r} outside [0, 1]")
        if not math.isfinite(self.abs_error) or self.abs_error < 0:
            raise DomainError("abs_error must be finite and non-negative")


def default_tolerance(n):
    return MIN_TOL if n <= 4 else FLOOR_TOL_LARGE_N


def _as_query(q, r=None):
    if isinstance(q, BallQuery):
        return q
    return BallQuery(q, r)


def _clamp(value, abs_error, tol, method):
    if value < 0.0 or value > 1.0:
        excess = -value if value < 0.0 else value - 1.0
        if excess > max(tol, abs_error):
            raise ToleranceError(
                f"quadrature result {value!r} leaves [0, 1] by more than the tolerance",
                achieved=excess)
        abs_error += excess
        value = min(max(value, 0.0), 1.0)
    return VolumeEstimate(value, abs_error, method)


# --- exact quadrature -------------------------------------------------------

def _panel(n):
    # both sine frequencies and the oscillation of D_n are at most n/2
    return math.pi / max(0.5 * n, 1.0)


def _decay_exponent(n):
    # |D_n(nu)| decays like nu^-d with d = min_p (p^2 + (n-p)^2) / 2
    return min(p * p + (n - p) ** 2 for p in range(n + 1)) / 2.0


@lru_cache(maxsize=32)
def _grid(n, upper):
    nu, w, upper = quadrature.panel_grid(upper, _panel(n))
    dn = bessel_toeplitz_det(n, 0.5 * nu)
    wd = w * dn / nu
    for arr in (nu, dn, wd):
        arr.setflags(write=False)
    return nu, wd, dn, upper


_ENVELOPE_MARGIN = 1.1


@lru_cache(maxsize=32)
def _envelope_tail(n, upper):
    """Bound on ``(1/pi) int_T^inf 2 |D_n| / nu`` from the sampled envelope on ``[T/2, T]``."""
    nu, _, dn, upper = _grid(n, upper)
    d = _decay_exponent(n)
    late = nu >= 0.5 * upper
    # the sampled amplitude settles from below for odd n, hence the margin
    amp = _ENVELOPE_MARGIN * float(np.max(np.abs(dn[late]) * nu[late] ** d))
    return 2.0 * amp * upper ** (-d) / (d * math.pi)


def _choose_upper(n, target):
    # whole panels only, so the last candidate rounds down to stay under the cap
    cap = _panel(n) * math.floor(MAX_UPPER / _panel(n))
    upper = 64.0
    while True:
        bound = _envelope_tail(n, upper)
        if bound <= target or upper >= cap:
            return upper, bound
        upper = min(2.0 * upper, cap)


def _sine_weighted_sum(n, omega_terms, upper):
    nu, wd, _, upper = _grid(n, upper)
    total = 0.0
    for omega in omega_terms:
        if omega != 0.0:
            total += float(np.dot(wd, np.sin(omega * nu)))
    return total / math.pi, upper


_N2_UPPER = 64 * math.pi


def _n2_tail(omega_terms, upper):
    total, err = 0.0, 0.0
    for omega in omega_terms:
        for k in (0, 1):
            t, e = quadrature.bessel_square_sine_tail(k, omega, upper)
            total += t
            err += e
    return total / math.pi, err / math.pi


def volume_exact(q, tol=None):
    """Volume by quadrature of the Fourier inversion integral, ``2 <= n <= 8``.

    For ``n = 2`` the tail beyond the truncation point is integrated in closed
    form from the large-argument expansion of ``J_0^2 + J_1^2``. For larger
    ``n`` the quadrature is truncated where an envelope bound on ``|D_n|``
    meets the tolerance; that bound enters ``abs_error``.

    Parameters
    ----------
    q : BallQuery
    tol : float, optional
        Target absolute error, at least ``1e-10``. Defaults to ``1e-10`` for
        ``n <= 4`` and ``1e-8`` above; for ``n >= 5`` values below ``1e-8``
        are raised to ``1e-8``.

    Returns
    -------
    VolumeEstimate
        ``abs_error`` may exceed ``tol`` if the truncation cap was reached.
    """
    q = _as_query(q)
    n = q.n
    if not 2 <= n <= EXACT_MAX_N:
        raise DomainError(f"exact quadrature supports 2 <= n <= {EXACT_MAX_N}")
    tol = default_tolerance(n) if tol is None else float(tol)
    if not tol >= MIN_TOL:
        raise DomainError(f"tol must be at least {MIN_TOL:g}")
    if n >= 5:
        tol = max(tol, FLOOR_TOL_LARGE_N)
    if q.r == 0.0:
        return VolumeEstimate(0.0, 0.0, Method.EXACT)
    omegas = (0.5 * n, q.shift)
    if n == 2:
        body, upper = _sine_weighted_sum(2, omegas, _N2_UPPER)
        tail, tail_err = _n2_tail(omegas, upper)
        value, err = body + tail, tail_err + 1e-14
    else:
        upper, bound = _choose_upper(n, 0.9 * tol)
        value, _ = _sine_weighted_sum(n, omegas, upper)
        err = bound + 1e-14
    return _clamp(value, err, tol, Method.EXACT)


# --- closed forms -----------------------------------------------------------

def volume_asymptotic(q):
    """Large-``n`` volume ``(erf(n) - erf(n - r^2/2)) / 2``.

    ``abs_error`` reflects floating-point error only; the model error of the
    Gaussian limit is not bounded here.
    """
    q = _as_query(q)
    n = q.n
    value = 0.5 * erf_diff(n - 0.5 * q.r * q.r, n)
    err = CONTRACTS["erf"].abs_tol + 2 * np.finfo(float).eps * value
    return VolumeEstimate(min(max(value, 0.0), 1.0), err, Method.ASYMPTOTIC)


def volume_n1_closed(r):
    """``U(1)``: the ball is an arc, ``mu = (2/pi) arcsin(r/2)``."""
    q = BallQuery(1, r)
    value = 2.0 / math.pi * math.asin(min(0.5 * q.r, 1.0))
    return VolumeEstimate(min(value, 1.0), 2 * np.finfo(float).eps, Method.CLOSED_N1)


def bessel_square_integral(k, b, upper=_N2_UPPER):
    """``(1/pi) int_0^inf sin(b nu)/nu * J_k(nu/2)^2 d nu`` with an error estimate.

    Gauss--Legendre panels on ``[0, T]`` plus the closed-form asymptotic tail.
    """
    if b == 0.0:
        return 0.0, 0.0
    from .specfun import bessel_j_orders

    nu, w, upper = quadrature.panel_grid(upper, math.pi / max(abs(b), 1.0))
    jk = bessel_j_orders(0.5 * nu, k)[k]
    body = float(np.dot(w, np.sin(b * nu) / nu * jk * jk))
    tail, err = quadrature.bessel_square_sine_tail(k, b, upper)
    return (body + tail) / math.pi, err / math.pi + 1e-15


def _i1_closed(b):
    # (1/pi) int sin(b nu)/nu J_1(nu/2)^2 via a Gauss hypergeometric function; odd in b
    if b == 0.0 or abs(b) >= 1.0:
        return 0.0
    ab = abs(b)
    w = ab * ab
    z = 1.0 - w
    val = ab / (2.0 * math.pi) * z * gauss_2f1(1.5, 0.5, 2.0, z, one_minus_z=w)
    return math.copysign(val, b)


def volume_n2_closed(r):
    """``U(2)`` volume split as ``I_0(a) + I_0(1) + I_1(a) + I_1(1)``, ``a = r^2/4 - 1``.

    ``I_1`` is closed-form, ``I_0(1) = 1/2`` and ``I_1(1) = 0``; ``I_0(a)`` is a
    tail-corrected quadrature.
    """
    q = BallQuery(2, r)
    a = q.shift
    if q.r == 0.0:
        return VolumeEstimate(0.0, 0.0, Method.CLOSED_N2)
    i0, err = bessel_square_integral(0, a)
    value = i0 + 0.5 + _i1_closed(a)
    return _clamp(value, err + 1e-14, 1e-9, Method.CLOSED_N2)


# --- inversion --------------------------------------------------------------

_SMALL_X, _SMALL_W = np.polynomial.legendre.leggauss(12)


def _log_volume_small(n, t):
    # log((erf(n) - erf(n - s)) / 2) at s = exp(t) with 2 n s <= 1, via u = n - x on [0, s]
    s = math.exp(t)
    u = 0.5 * s * (_SMALL_X + 1.0)
    inner = 0.5 * float(np.sum(_SMALL_W * np.exp(2.0 * n * (u - s) - u * u)))
    return math.log(inner) + t + 2.0 * n * s - n * n - 0.5 * math.log(math.pi)


def _small_offset(n, log_v):
    # Newton in t = log s, where the log volume is nearly linear; s may underflow to 0
    t = log_v + 0.5 * math.log(math.pi) + n * n
    for _ in range(50):
        s = math.exp(t)
        g = _log_volume_small(n, t) - log_v
        slope = math.exp(t + 2.0 * n * s - s * s - n * n - 0.5 * math.log(math.pi) - g - log_v)
        step = g / slope
        t -= step
        if abs(step) <= 1e-15:
            break
    return math.exp(t)


def asymptotic_offset(n, log_v):
    """Solve ``(erf(n) - erf(n - s)) / 2 = exp(log_v)`` for ``s`` in ``[0, 2n]``.

    Returns ``(s, degenerate)``; ``degenerate`` is true when the target is at
    or above the largest attainable value ``erf(n)``, in which case ``s = 2n``.
    The radius is ``sqrt(2 s)``.
    """
    if log_v > 0:
        raise DomainError("volume must not exceed 1")
    log_top = log_erf_diff(-float(n), float(n)) - math.log(2.0)
    if log_v >= log_top:
        return 2.0 * n, True
    # erfc(y) = erfc(n) + 2v with y = n - s
    log_eps = np.logaddexp(log_erfc(n), math.log(2.0) + log_v)
    if log_eps <= 0.0:
        y = erfinv_complement_log(log_eps)
    else:
        # y < 0: erfc(-y) = 2 - eps = 2(1 - v) - erfc(n)
        rest = -2.0 * math.expm1(log_v) - erfc(n)
        y = -erfinv_complement_log(math.log(rest)) if rest > 0 else -float(n)
    s = min(max(n - y, 0.0), 2.0 * n)
    if 2.0 * n * s < 1.0:
        s_small = _small_offset(n, log_v)
        if 2.0 * n * s_small <= 1.0:
            return s_small, False
    # polish in the log domain, where n - y loses digits as y -> n
    for _ in range(50):
        lo = n - s
        if lo >= n:
            break
        g = log_erf_diff(lo, float(n)) - math.log(2.0) - log_v
        dlog = -lo * lo - 0.5 * math.log(math.pi) - (g + log_v)
        s_new = s - g / math.exp(dlog)
        if s_new <= 0.0:
            s_new = 0.5 * s
        elif s_new > 2.0 * n:
            s_new = 0.5 * (s + 2.0 * n)
        if abs(s_new - s) <= 1e-15 * max(s, 1e-300):
            s = s_new
            break
        s = s_new
    return s, False


def _invert_monotone(func, target, lo, hi, ftol, cap=200):
    flo, fhi = func(lo) - target, func(hi) - target
    if flo > 0 or fhi < 0:
        raise ConvergenceError("target outside the range of the volume", bracket=(lo, hi))
    # bisection to a narrow bracket, then safeguarded secant
    it = 0
    while hi - lo > 1e-3 and it < cap:
        mid = 0.5 * (lo + hi)
        fm = func(mid) - target
        if abs(fm) <= ftol:
            return mid
        if fm < 0:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        it += 1
    while it < cap:
        x = lo - flo * (hi - lo) / (fhi - flo) if fhi != flo else 0.5 * (lo + hi)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = func(x) - target
        if abs(fx) <= ftol or hi - lo <= 1e-15 * hi:
            return x
        if fx < 0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        it += 1
    raise ConvergenceError("inverse volume iteration cap reached", bracket=(lo, hi))


def volume_inverse(n, v, method="asymptotic"):
    """Radius ``r`` with ``mu(B(r)) = v``.

    Parameters
    ----------
    n : int
    v : float
        Target volume in ``(0, 1]``.
    method : {"asymptotic", "exact", "closed_n2"}
        ``exact`` root-finds on :func:`volume_exact` (closed form at ``n = 2``)
        and accepts ``2 <= n <= 8``; ``closed_n2`` needs ``n = 2``.
    """
    method = Method(_METHOD_ALIASES.get(method, method))
    v = float(v)
    if not 0.0 < v <= 1.0:
        raise DomainError("v must lie in (0, 1]")
    r_max = 2.0 * math.sqrt(n)
    if method is Method.ASYMPTOTIC:
        s, _ = asymptotic_offset(n, math.log(v))
        return min(math.sqrt(2.0 * s), r_max)
    if method is Method.CLOSED_N2 or (method is Method.EXACT and n == 2):
        if n != 2:
            raise DomainError("closed_n2 inversion requires n = 2")
        func, ftol = (lambda r: volume_n2_closed(r).value), 1e-9
    elif method is Method.EXACT:
        if not 3 <= n <= EXACT_MAX_N:
            raise DomainError(f"exact inversion supports 2 <= n <= {EXACT_MAX_N}")
        tol = default_tolerance(n)
        func = lambda r: volume_exact(BallQuery(n, r), tol).value  # noqa: E731
        ftol = 1e-9 if n <= 4 else 1e-7
    else:
        raise DomainError(f"method {method.value} cannot be inverted")
    if v >= 1.0:
        return r_max
    return _invert_monotone(func, v, 0.0, r_max, ftol)


_METHOD_ALIASES = {
    "exact": Method.EXACT.value,
    "closed-n1": Method.CLOSED_N1.value,
    "closed-n2": Method.CLOSED_N2.value,
    "mc": Method.MONTE_CARLO.value,
}
