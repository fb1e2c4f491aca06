"""Sphere-covering and sphere-packing bounds for codes in ``U(n)``.

Everything is built on the large-``n`` ball volume
``mu(r) = (erf(n) - erf(n - r^2/2)) / 2``. Differences of ``erf`` near 1 are
formed from ``erfc`` and inversions run in the complement/log domain, so the
formulas stay meaningful at ``n = 16`` and rates as high as 10 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import log_erf_diff
from .volume import asymptotic_offset, volume_inverse

__all__ = [
    "BoundReport", "DistanceBounds", "cardinality_bounds", "log2_cardinality_bounds",
    "rate_bounds", "rate_scaling", "min_distance_bounds", "min_distance_ratio_limit",
    "scaling_distance_bounds", "diversity_sum_bound", "bound_report",
    "table_one", "table_two", "TABLE_ONE_CARDINALITIES", "TABLE_ONE_DIMS",
    "TABLE_TWO_RATES", "TABLE_TWO_DIMS",
]

_LN2 = math.log(2.0)

TABLE_ONE_CARDINALITIES = (24, 48, 64, 80, 100, 120, 128, 1000)
TABLE_ONE_DIMS = (2, 4, 8)
TABLE_TWO_RATES = (0.1, 0.5, 1, 5, 10)
TABLE_TWO_DIMS = (2, 4, 8, 16)
EXACT_DIVERSITY_MAX_N = 8


def _check_radius(n, r):
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    r = float(r)
    if r == 0.0:
        raise DomainError("r = 0 gives an unbounded cardinality bound")
    if not 0.0 < r <= 2.0 * math.sqrt(n) * (1 + 1e-15):
        raise DomainError("r must lie in (0, 2 sqrt(n)]")
    return int(n), min(r, 2.0 * math.sqrt(n))


def log2_cardinality_bounds(n, r):
    """``log2`` of the covering (lower) and packing (upper) cardinality bounds."""
    n, r = _check_radius(n, r)
    lo = (_LN2 - log_erf_diff(n - 0.5 * r * r, n)) / _LN2
    hi = (_LN2 - log_erf_diff(n - 0.125 * r * r, n)) / _LN2
    return lo, hi


def cardinality_bounds(n, r):
    """``(2 / (erf n - erf(n - r^2/2)), 2 / (erf n - erf(n - r^2/8)))``.

    Overflows to ``inf`` only when the bound itself exceeds the float range;
    use :func:`log2_cardinality_bounds` there.
    """
    lo, hi = log2_cardinality_bounds(n, r)
    return _pow2(lo), _pow2(hi)


def _pow2(x):
    return 2.0 ** x if x < 1024 else math.inf


def rate_bounds(n, r):
    """Code-rate bounds ``(1/n) log2`` of :func:`cardinality_bounds`."""
    lo, hi = log2_cardinality_bounds(n, r)
    return lo / n, hi / n


def rate_scaling(lam, b):
    """Limit of ``R / n`` at fixed ``lam = r^2 / n``: ``(lam - b)^2 / (b^2 ln 2)`` on ``[0, b]``.

    ``b = 2`` gives the lower bound and ``b = 8`` the upper one.
    """
    if lam < 0:
        raise DomainError("lambda must be non-negative")
    if b <= 0:
        raise DomainError("b must be positive")
    if lam > b:
        return 0.0
    return (lam - b) ** 2 / (b * b * _LN2)


def scaling_distance_bounds(n, R):
    """Minimum-distance bounds obtained by inverting :func:`rate_scaling` at ``R / n``.

    Returns ``(r_lower, r_upper)`` from ``b = 2`` and ``b = 8``; at ``R = 0``
    they are ``sqrt(2n)`` and ``sqrt(8n)``.
    """
    if R < 0:
        raise DomainError("R must be non-negative")
    root = math.sqrt(_LN2 * R / n)
    out = []
    for b in (2.0, 8.0):
        lam = max(b * (1.0 - root), 0.0)
        out.append(math.sqrt(n * lam))
    return tuple(out)


@dataclass(frozen=True)
class DistanceBounds:
    r_lower: float
    r_upper_r1: float
    r_upper_r2: float
    degenerate: bool = False

    def __iter__(self):
        return iter((self.r_lower, self.r_upper_r1, self.r_upper_r2))


def min_distance_bounds(n, R):
    """Minimum-distance bounds for rate ``R``: ``(r_lower, r1, r2)``.

    ``r_lower = sqrt(2n - 2y)``, ``r1 = 2 r_lower`` and
    ``r2 = (2/sqrt(n)) sqrt(n^2 - y^2)`` with ``y = erfinv(erf(n) - 2^(1 - nR))``.
    The offset ``n - y`` is solved for directly, never by subtraction.

    Returns
    -------
    DistanceBounds
        ``degenerate`` is set when ``2^(-nR)`` is not below ``erf(n)``; the
        radii are then the full-ball values.
    """
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if R <= 0:
        raise DomainError("R must be positive")
    s, degenerate = asymptotic_offset(int(n), -n * R * _LN2)
    r_max = 2.0 * math.sqrt(n)
    if degenerate:
        return DistanceBounds(r_max, 2.0 * r_max, r_max, True)
    r_lower = math.sqrt(2.0 * s)
    r2 = 2.0 / math.sqrt(n) * math.sqrt(s * (2.0 * n - s))   # n^2 - y^2 = s (2n - s)
    return DistanceBounds(r_lower, 2.0 * r_lower, r2)


def min_distance_ratio_limit(n, R):
    """``r1 / r2``; tends to ``sqrt(2)`` as ``n`` grows at fixed ``R``."""
    b = min_distance_bounds(n, R)
    if b.r_upper_r2 == 0.0:
        return 1.0  # both radii vanish together and r1 / r2 -> 1
    return b.r_upper_r1 / b.r_upper_r2


def _diversity_from_offset(n, s):
    # sqrt(r^2/n - r^4/(4 n^2)) with r^2 = 2 s; peaks at 1 for s = n
    if s >= n:
        return 1.0
    return min(math.sqrt(s * (2.0 * n - s)) / n, 1.0)


def diversity_sum_bound(n, cardinality, method="asymptotic"):
    """Upper bound on the diversity sum of a code with ``cardinality`` codewords.

    Parameters
    ----------
    n : int
    cardinality : float
        At least 1; need not be an integer.
    method : {"asymptotic", "exact"}
        ``exact`` inverts the quadrature volume (``n <= 8``; closed form at
        ``n = 2``).

    Notes
    -----
    For ``cardinality <= 2`` the radius reaches the median ``sqrt(2n)``
    where the bound peaks at 1; it is held there so the bound stays
    nonincreasing in the cardinality.
    """
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    n = int(n)
    c = float(cardinality)
    if not c >= 1.0:
        raise DomainError("cardinality must be at least 1")
    if method == "asymptotic":
        s, degenerate = asymptotic_offset(n, -math.log(c))
        return 1.0 if degenerate else _diversity_from_offset(n, s)
    if method == "exact":
        if not 2 <= n <= EXACT_DIVERSITY_MAX_N:
            raise DomainError(f"exact diversity bound supports 2 <= n <= {EXACT_DIVERSITY_MAX_N}")
        if c <= 2.0:
            return 1.0
        r0 = volume_inverse(n, 1.0 / c, "exact")
        return _diversity_from_offset(n, 0.5 * r0 * r0)
    raise DomainError(f"unknown method {method!r}")


@dataclass(frozen=True)
class BoundReport:
    """Bounds for one query; fields that do not apply are ``None``."""

    n: int
    r: float = None
    R: float = None
    cardinality: float = None
    gv_lower: float = None
    hamming_upper: float = None
    rate_lower: float = None
    rate_upper: float = None
    r_lower: float = None
    r_upper_r1: float = None
    r_upper_r2: float = None
    diversity_upper: float = None
    degenerate: bool = False

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def bound_report(n, r=None, R=None, cardinality=None):
    """Bundle the bounds for a distance ``r``, a rate ``R`` or a ``cardinality``."""
    given = [x is not None for x in (r, R, cardinality)]
    if sum(given) != 1:
        raise DomainError("give exactly one of r, R, cardinality")
    if r is not None:
        gv, ham = cardinality_bounds(n, r)
        lo, hi = rate_bounds(n, r)
        return BoundReport(n, r=float(r), gv_lower=gv, hamming_upper=ham,
                           rate_lower=lo, rate_upper=hi)
    if R is not None:
        d = min_distance_bounds(n, R)
        return BoundReport(n, R=float(R), r_lower=d.r_lower, r_upper_r1=d.r_upper_r1,
                           r_upper_r2=d.r_upper_r2, degenerate=d.degenerate)
    c = float(cardinality)
    return BoundReport(n, cardinality=c, diversity_upper=diversity_sum_bound(n, c),
                       degenerate=c <= 1.0)


def table_two(rates=TABLE_TWO_RATES, dims=TABLE_TWO_DIMS):
    """Rows ``(R, n, r1, r2)`` of the minimum-distance comparison table."""
    rows = []
    for R in rates:
        for n in dims:
            d = min_distance_bounds(n, R)
            rows.append((R, n, d.r_upper_r1, d.r_upper_r2))
    return rows


def table_one(cardinalities=TABLE_ONE_CARDINALITIES, dims=TABLE_ONE_DIMS):
    """Rows ``(n, C, exact, asymptotic, relative_error, accuracy)`` for the diversity bound.

    ``accuracy`` is ``"order_of_magnitude"`` for ``n >= 8``, where the exact
    volume is not resolved finely enough to pin the relative error.
    """
    rows = []
    for n in dims:
        flag = "order_of_magnitude" if n >= 8 else "contract"
        for c in cardinalities:
            exact = diversity_sum_bound(n, c, "exact")
            approx = diversity_sum_bound(n, c, "asymptotic")
            rows.append((n, c, exact, approx, abs(exact - approx) / exact, flag))
    return rows
