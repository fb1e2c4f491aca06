"""Special-function kernel with explicit accuracy contracts.

Everything here is a pure function of its arguments. Real arguments only.

Contracts (see :data:`CONTRACTS`):

=====================  ==========================================  ==============
function               domain                                      accuracy
=====================  ==========================================  ==============
bessel_j               ``|k| <= 64``, ``|x| <= 1e4``               1e-13 rel / 1e-15 abs near zeros
erf                    finite reals                                1e-15 abs
erfc                   ``0 <= x <= 27``                            1e-13 rel
erfinv                 ``|p| < 1``                                 1e-12 rel
erfinv_complement      ``0 < eps <= 1``                            1e-10 rel
gauss_2f1              ``|z| < 1``                                 1e-14 truncation
sine/cosine integral   reals (Ci: ``x > 0``)                       1e-13 abs
=====================  ==========================================  ==============
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "AccuracyContract", "CONTRACTS", "bessel_j", "bessel_j_orders",
    "erf", "erfc", "erfcx", "log_erfc", "erf_diff", "log_erf_diff",
    "erfinv", "erfinv_complement", "erfinv_complement_log",
    "gauss_2f1", "digamma", "sine_integral", "cosine_integral",
]

EULER_GAMMA = 0.57721566490153286061
_SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_SQRT_PI = 2.0 / _SQRT_PI
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class AccuracyContract:
    """Tolerance promised by a special function on a stated domain."""

    abs_tol: float
    rel_tol: float
    domain: str

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")


CONTRACTS = {
    "bessel_j": AccuracyContract(1e-15, 1e-13, "|k| <= 64, |x| <= 1e4"),
    "erf": AccuracyContract(1e-15, 1e-15, "finite reals"),
    "erfc": AccuracyContract(1e-300, 1e-13, "0 <= x <= 27"),
    "erfinv": AccuracyContract(1e-15, 1e-12, "|p| < 1"),
    "erfinv_complement": AccuracyContract(1e-15, 1e-10, "0 < eps <= 1"),
    "gauss_2f1": AccuracyContract(1e-14, 1e-14, "|z| < 1"),
    "sine_integral": AccuracyContract(1e-13, 1e-13, "all reals"),
    "cosine_integral": AccuracyContract(1e-13, 1e-13, "x > 0"),
}


# ---------------------------------------------------------------------------
# Bessel functions of the first kind, integer order

BESSEL_MAX_ORDER = 64
BESSEL_MAX_ARG = 1e4
_SERIES_MAX_X = 2.0
_HANKEL_MIN_X = 25.0
_RESCALE = 1e250


def _bessel_series(x, kmax):
    # ascending series; |x| <= 2 means no cancellation and no zeros
    out = np.zeros((kmax + 1, x.size))
    half = 0.5 * x
    q = half * half
    pos = x > 0
    with np.errstate(divide="ignore"):   # subnormal x: half underflows, term -> 0
        lhalf = np.log(np.where(pos, half, 1.0))
    for k in range(kmax + 1):
        if k == 0:
            term = np.ones_like(x)
        else:
            term = np.where(pos, np.exp(k * lhalf - math.lgamma(k + 1)), 0.0)
        total = term.copy()
        for j in range(1, 40):
            term = -term * q / (j * (j + k))
            total += term
            if not np.any(np.abs(term) > 1e-18 * np.abs(total)):
                break
        out[k] = total
    return out


def _bessel_miller(x, kmax):
    # backward recurrence normalised by J_0 + 2 sum J_2m = 1
    top = max(kmax, int(math.ceil(x.max())))
    start = 2 * ((top + int(math.sqrt(160 * top)) + 20) // 2)
    out = np.zeros((kmax + 1, x.size))
    bjp = np.zeros_like(x)
    bj = np.ones_like(x)
    norm = 2.0 * bj if start % 2 == 0 else np.zeros_like(x)
    two_over_x = 2.0 / x
    for k in range(start, 0, -1):
        bjm = k * two_over_x * bj - bjp
        bjp, bj = bj, bjm
        m = k - 1
        if m <= kmax:
            out[m] = bj
        if m > 0 and m % 2 == 0:
            norm += 2.0 * bj
        big = np.abs(bj) > _RESCALE
        if big.any():
            bj[big] /= _RESCALE
            bjp[big] /= _RESCALE
            norm[big] /= _RESCALE
            out[:, big] /= _RESCALE
    norm += bj
    return out / norm


def _hankel_pq(x, k):
    mu = 4.0 * k * k
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for j in range(1, 80):
        term = term * (mu - (2 * j - 1) ** 2) / (8.0 * j * x)
        if j % 4 == 1:
            q += term
        elif j % 4 == 2:
            p -= term
        elif j % 4 == 3:
            q -= term
        else:
            p += term
        if not np.any(np.abs(term) > 1e-18):
            break
    return p, q


def _bessel_hankel(x, kmax):
    # large-argument expansion for J_0, J_1 then forward recurrence (x >= 2 kmax)
    out = np.empty((kmax + 1, x.size))
    amp = np.sqrt(2.0 / (math.pi * x))
    c, s = np.cos(x), np.sin(x)
    r = math.sqrt(0.5)
    p0, q0 = _hankel_pq(x, 0)
    # chi_0 = x - pi/4
    cos0, sin0 = r * (c + s), r * (s - c)
    out[0] = amp * (p0 * cos0 - q0 * sin0)
    if kmax >= 1:
        p1, q1 = _hankel_pq(x, 1)
        # chi_1 = x - 3 pi/4
        cos1, sin1 = r * (s - c), -r * (c + s)
        out[1] = amp * (p1 * cos1 - q1 * sin1)
    for k in range(1, kmax):
        out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1]
    return out


def bessel_j_orders(x, kmax):
    """Return ``J_0(x), ..., J_kmax(x)`` as an array of shape ``(kmax + 1,) + x.shape``.

    Vectorised over ``x``. Orders are non-negative; use :func:`bessel_j` for the
    reflection to negative orders.
    """
    kmax = int(kmax)
    if kmax < 0 or kmax > BESSEL_MAX_ORDER:
        raise DomainError(f"order {kmax} outside [0, {BESSEL_MAX_ORDER}]")
    x = np.asarray(x, dtype=float)
    shape = x.shape
    flat = x.ravel()
    if not np.all(np.isfinite(flat)) or np.any(np.abs(flat) > BESSEL_MAX_ARG):
        raise DomainError(f"argument outside |x| <= {BESSEL_MAX_ARG:g}")
    out = _orders(np.abs(flat), kmax)
    neg = flat < 0
    if neg.any():
        out[1::2, neg] *= -1.0
    return out.reshape((kmax + 1,) + shape)


def _orders(ax, kmax):
    # dispatch on |x|; no order cap, callers validate
    out = np.empty((kmax + 1, ax.size))
    hankel_from = max(_HANKEL_MIN_X, 2.0 * kmax)
    series = ax <= _SERIES_MAX_X
    hankel = ax >= hankel_from
    miller = ~(series | hankel)
    if series.any():
        out[:, series] = _bessel_series(ax[series], kmax)
    if hankel.any():
        out[:, hankel] = _bessel_hankel(ax[hankel], kmax)
    if miller.any():
        out[:, miller] = _bessel_miller(ax[miller], kmax)
    return out


def bessel_j(k, x):
    """Bessel function of the first kind ``J_k(x)`` for integer ``k``.

    ``J_{-k}(x) = (-1)^k J_k(x)`` holds exactly: negative orders reuse the
    positive-order value and flip the sign.
    """
    if int(k) != k:
        raise DomainError("order must be an integer")
    k = int(k)
    ak = abs(k)
    if ak > BESSEL_MAX_ORDER:
        raise DomainError(f"order {k} outside |k| <= {BESSEL_MAX_ORDER}")
    x = float(x)
    value = float(bessel_j_orders(np.array([x]), ak)[ak, 0])
    if k < 0 and ak % 2 == 1:
        value = -value
    return value


# ---------------------------------------------------------------------------
# Error function family

def erf(x):
    return math.erf(x)


def erfc(x):
    """Complementary error function. Never formed as ``1 - erf``."""
    return math.erfc(x)


def _erfcx_cf(x):
    # continued fraction for exp(x^2) erfc(x), x >= 5
    depth = 20 + int(400.0 / (x * x))
    f = x
    for m in range(depth, 0, -1):
        f = x + 0.5 * m / f
    return 1.0 / (_SQRT_PI * f)


def erfcx(x):
    """Scaled complementary error function ``exp(x**2) * erfc(x)``."""
    if x >= 5.0:
        return _erfcx_cf(x)
    return math.exp(x * x) * math.erfc(x)


def log_erfc(x):
    """``log(erfc(x))`` without underflow for large ``x``."""
    if x < 20.0:
        return math.log(math.erfc(x))
    return -x * x + math.log(_erfcx_cf(x))


_GL20 = np.polynomial.legendre.leggauss(20)


def _gauss_mass(a, h):
    # integral_0^h exp(-2 a s - s^2) ds, the erfc mass on [a, a + h] scaled by exp(a^2)
    nodes, weights = _GL20
    s = 0.5 * h * (nodes + 1.0)
    return 0.5 * h * float(np.dot(weights, np.exp(-2.0 * a * s - s * s)))


def erf_diff(a, b):
    """``erf(b) - erf(a)`` for ``a <= b`` without cancellation."""
    if a > b:
        raise DomainError("erf_diff requires a <= b")
    if a == b:
        return 0.0
    if b <= 0.0:
        return erf_diff(-b, -a)
    if a < 0.0:
        return math.erf(b) + math.erf(-a)
    hi, lo = math.erfc(a), math.erfc(b)
    if lo <= 0.5 * hi:
        return hi - lo
    return _TWO_OVER_SQRT_PI * math.exp(-a * a) * _gauss_mass(a, b - a)


def log_erf_diff(a, b):
    """``log(erf(b) - erf(a))`` for ``a < b``; stays finite when erfc underflows."""
    if a >= b:
        raise DomainError("log_erf_diff requires a < b")
    if b <= 0.0:
        return log_erf_diff(-b, -a)
    if a < 0.0:
        return math.log(math.erf(b) + math.erf(-a))
    la, lb = log_erfc(a), log_erfc(b)
    if lb - la <= -math.log(2.0):
        return la + math.log1p(-math.exp(lb - la))
    return math.log(_TWO_OVER_SQRT_PI) - a * a + math.log(_gauss_mass(a, b - a))


def _erfinv_central(p):
    # Halley iterations on erf for |p| <= 0.5
    if p == 0.0:
        return 0.0
    y = 0.5 * _SQRT_PI * p * (1.0 + math.pi * p * p / 12.0 + 7.0 * math.pi ** 2 * p ** 4 / 480.0)
    for _ in range(10):
        f = math.erf(y) - p
        df = _TWO_OVER_SQRT_PI * math.exp(-y * y)
        step = f / (df + y * f)
        y -= step
        if abs(step) <= 2 * _EPS * abs(y):
            break
    return y


def erfinv(p):
    """Inverse error function on ``(-1, 1)``."""
    if not abs(p) < 1.0:
        raise DomainError("erfinv requires |p| < 1")
    a = abs(p)
    if a <= 0.5:
        return _erfinv_central(p)
    y = erfinv_complement_log(math.log(1.0 - a))
    return math.copysign(y, p)


def erfinv_complement(eps):
    """Return ``erfinv(1 - eps)`` working directly in the complement domain.

    Accepts ``eps`` far below the resolution of ``1 - eps`` (e.g. ``2**-159``).
    """
    if not (0.0 < eps <= 1.0):
        raise DomainError("erfinv_complement requires 0 < eps <= 1")
    if eps >= 0.5:
        return _erfinv_central(1.0 - eps)
    return erfinv_complement_log(math.log(eps))


def erfinv_complement_log(log_eps):
    """Return ``y >= 0`` with ``log(erfc(y)) = log_eps``, for ``log_eps <= 0``.

    Starts from the large-argument expansion
    ``y ~ sqrt((L - log L) / 2)``, ``L = log(2 / (pi eps^2))``, then runs Newton
    on ``log(erfc(y))``.
    """
    if not log_eps <= 0.0:
        raise DomainError("erfinv_complement_log requires log_eps <= 0")
    if log_eps >= math.log(0.5):
        return _erfinv_central(-math.expm1(log_eps))
    big_l = math.log(2.0 / math.pi) - 2.0 * log_eps
    y = math.sqrt(0.5 * (big_l - math.log(big_l)))
    for _ in range(60):
        g = log_erfc(y) - log_eps
        dg = -2.0 / (_SQRT_PI * erfcx(y))
        step = g / dg
        y -= step
        if abs(step) <= 2 * _EPS * y:
            return y
    raise ConvergenceError("erfinv_complement_log did not converge", bracket=(y, y))


# ---------------------------------------------------------------------------
# Gauss hypergeometric function

_2F1_MAX_TERMS = 200_000


def _is_nonpositive_int(v):
    return v <= 0 and float(v).is_integer()


def _rgamma(v):
    return 0.0 if _is_nonpositive_int(v) else 1.0 / math.gamma(v)


def digamma(x):
    """Digamma function for real ``x`` that is not a non-positive integer."""
    if _is_nonpositive_int(x):
        raise DomainError("digamma has poles at non-positive integers")
    if x < 0.5:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 16.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 * (1 / 252 - inv2 * (
        1 / 240 - inv2 * (1 / 132 - inv2 * 691 / 32760)))))
    return acc + math.log(x) - 0.5 / x - tail


def _series_2f1(a, b, c, z):
    total = 1.0
    term = 1.0
    small = 0
    for k in range(_2F1_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if term == 0.0:
            return total
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise ConvergenceError("2F1 series did not converge")


def _log_case_2f1(a, b, w):
    # c = a + b, expansion in w = 1 - z
    lw = math.log(w)
    pref = math.gamma(a + b) * _rgamma(a) * _rgamma(b)
    coef = 1.0
    psi_1, psi_a, psi_b = digamma(1.0), digamma(a), digamma(b)
    total = 0.0
    small = 0
    for k in range(_2F1_MAX_TERMS):
        term = coef * (2.0 * psi_1 - psi_a - psi_b - lw)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small == 3:
                return pref * total
        else:
            small = 0
        coef *= (a + k) * (b + k) / ((k + 1) ** 2) * w
        psi_1 += 1.0 / (k + 1)
        psi_a += 1.0 / (a + k)
        psi_b += 1.0 / (b + k)
    raise ConvergenceError("2F1 logarithmic expansion did not converge")


def gauss_2f1(a, b, c, z, *, one_minus_z=None):
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` for real ``|z| < 1``.

    The power series is summed directly for ``-0.5 <= z <= 0.5``; other ``z`` are
    mapped into that disc by the Pfaff transformation (``z < -0.5``) or the
    connection formulas about ``z = 1`` (``z > 0.5``).

    ``one_minus_z`` may carry ``1 - z`` exactly when ``z`` is too close to 1 to
    be represented; ``z`` is then ignored.
    """
    if one_minus_z is not None:
        if not 0.0 < one_minus_z < 2.0:
            raise DomainError("gauss_2f1 requires 0 < 1 - z < 2")
        z = 1.0 - one_minus_z
        if one_minus_z < 0.5 and c - a - b == 0.0 and not _is_nonpositive_int(c):
            return _log_case_2f1(a, b, one_minus_z)
    if not abs(z) < 1.0:
        raise DomainError("gauss_2f1 requires |z| < 1")
    if _is_nonpositive_int(c):
        raise DomainError("gauss_2f1 has a pole: c is a non-positive integer")
    if z == 0.0:
        return 1.0
    if _is_nonpositive_int(a) or _is_nonpositive_int(b) or -0.5 <= z <= 0.5:
        return _series_2f1(a, b, c, z)
    if z < -0.5:
        return (1.0 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1.0))
    m = c - a - b
    if m == 0.0:
        return _log_case_2f1(a, b, 1.0 - z)
    if not float(m).is_integer():
        w = 1.0 - z
        t1 = math.gamma(c) * math.gamma(m) * _rgamma(c - a) * _rgamma(c - b)
        t2 = math.gamma(c) * math.gamma(-m) * _rgamma(a) * _rgamma(b)
        out = 0.0
        if t1 != 0.0:
            out += t1 * _series_2f1(a, b, 1.0 - m, w)
        if t2 != 0.0:
            out += t2 * w ** m * _series_2f1(c - a, c - b, 1.0 + m, w)
        return out
    # integer c - a - b != 0: plain series, slow but convergent
    return _series_2f1(a, b, c, z)


# ---------------------------------------------------------------------------
# Sine and cosine integrals

def _cisi(x):
    # x > 0; returns (Ci, Si)
    if x <= 2.0:
        si = 0.0
        ci = 0.0
        t = x
        x2 = x * x
        k = 0
        while True:
            si_term = t / (2 * k + 1)
            si += si_term
            t *= -x2 / ((2 * k + 2) * (2 * k + 3))
            k += 1
            if abs(si_term) < 1e-18:
                break
        t = 1.0
        k = 1
        while True:
            t *= -x2 / ((2 * k - 1) * (2 * k))
            ci_term = t / (2 * k)
            ci += ci_term
            k += 1
            if abs(ci_term) < 1e-18:
                break
        return EULER_GAMMA + math.log(x) + ci, si
    # Lentz evaluation of the continued fraction for E1(i x)
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, 10_000):
        a = -((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ConvergenceError("cisi continued fraction did not converge")
    h *= complex(math.cos(x), -math.sin(x))
    return -h.real, 0.5 * math.pi + h.imag


def sine_integral(x):
    """``Si(x) = integral_0^x sin(t)/t dt``."""
    if x == 0.0:
        return 0.0
    return math.copysign(_cisi(abs(x))[1], x)


def cosine_integral(x):
    """``Ci(x) = gamma + log x + integral_0^x (cos t - 1)/t dt`` for ``x > 0``."""
    if not x > 0.0:
        raise DomainError("cosine_integral requires x > 0")
    return _cisi(x)[0]
