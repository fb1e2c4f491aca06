"""Exact rational arithmetic for partitions, characters and the power series of ``D_n``.

The coefficient of ``nu^(2k)`` in ``D_n(nu) = 0F1(n; -nu^2/16 I_n)`` is
``(-1)^k S(k, n) / (16^k k!)`` with ``S(k, n) = sum_kappa C_kappa(I_n) / (n)_kappa``
over partitions ``kappa`` of ``k`` with at most ``n`` parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetError, DomainError, VanishingCoefficientError

__all__ = [
    "Partition", "RationalSeries", "partitions_of", "chi_one", "schur_identity",
    "pochhammer_multi", "zonal_identity", "series_term", "d_n_series",
    "gaussian_coefficient",
]

MAX_PARTITION_WEIGHT = 40
MAX_SERIES_ORDER = 24
MAX_SERIES_DIM = 16


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise DomainError("partition parts must be non-negative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError("partition parts must be weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def weight(self):
        return sum(self)

    def padded(self, n):
        if len(self) > n:
            raise DomainError(f"partition {tuple(self)} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self):
        return f"Partition({tuple(self)})"


@lru_cache(maxsize=None)
def _partitions(k, max_parts, largest):
    if k == 0:
        return ((),)
    if max_parts == 0:
        return ()
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, max_parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(k, max_parts):
    """All partitions of ``k`` with at most ``max_parts`` parts, in reverse lexicographic order.

    ``(3, 2) -> [(3,), (2, 1)]``.
    """
    if k < 0 or k > MAX_PARTITION_WEIGHT:
        raise DomainError(f"k must lie in [0, {MAX_PARTITION_WEIGHT}]")
    if max_parts < 1:
        raise DomainError("max_parts must be positive")
    return [Partition(p) for p in _partitions(int(k), int(min(max_parts, k) if k else 1), int(k))]


def _vandermonde_shift(parts):
    n = len(parts)
    prod = 1
    for i in range(n):
        for j in range(i + 1, n):
            prod *= parts[i] - parts[j] - i + j
    return prod


def chi_one(kappa, k, n):
    """Dimension of the symmetric-group irrep labelled by ``kappa`` (an integer)."""
    kappa = Partition(kappa)
    if kappa.weight != k:
        raise DomainError(f"partition {tuple(kappa)} does not have weight {k}")
    parts = kappa.padded(n)
    denom = 1
    for j, p in enumerate(parts, start=1):
        denom *= math.factorial(p + n - j)
    return Fraction(math.factorial(k) * _vandermonde_shift(parts), denom)


def schur_identity(kappa, n):
    """Schur polynomial ``s_kappa`` at the ``n x n`` identity."""
    kappa = Partition(kappa)
    parts = kappa.padded(n)
    denom = 1
    for j in range(1, n + 1):
        denom *= math.factorial(j - 1)
    return Fraction(_vandermonde_shift(parts), denom)


def pochhammer_multi(a, kappa, n):
    """Generalised Pochhammer symbol ``(a)_kappa = prod_j (a - j + 1)_{kappa_j}``.

    Raises :class:`VanishingCoefficientError` when a factor is zero.
    """
    a = Fraction(a)
    parts = Partition(kappa).padded(n)
    out = Fraction(1)
    for j, p in enumerate(parts, start=1):
        base = a - j + 1
        for i in range(p):
            factor = base + i
            if factor == 0:
                raise VanishingCoefficientError(
                    f"({a})_kappa vanishes at row {j} for kappa = {tuple(parts)}")
            out *= factor
    return out


def zonal_identity(kappa, n):
    """Zonal value ``C_kappa(I_n) = chi_kappa(1) chi_kappa(I_n)``."""
    kappa = Partition(kappa)
    return chi_one(kappa, kappa.weight, n) * schur_identity(kappa, n)


@lru_cache(maxsize=None)
def _series_term(k, n):
    total = Fraction(0)
    for kappa in partitions_of(k, n):
        total += zonal_identity(kappa, n) / pochhammer_multi(n, kappa, n)
    return total


def series_term(k, n):
    """``S(k, n) = sum_kappa C_kappa(I_n) / (n)_kappa``; equals 1 whenever ``k <= n``."""
    if k < 0 or n < 1:
        raise DomainError("need k >= 0 and n >= 1")
    if k > MAX_SERIES_ORDER or n > MAX_SERIES_DIM:
        raise BudgetError(
            f"series_term supports k <= {MAX_SERIES_ORDER}, n <= {MAX_SERIES_DIM}")
    return _series_term(int(k), int(n))


def gaussian_coefficient(k):
    """Coefficient of ``nu^(2k)`` in ``exp(-nu^2 / 16)``."""
    return Fraction((-1) ** k, 16 ** k * math.factorial(k))


@dataclass(frozen=True)
class RationalSeries:
    """``D_n(nu) = sum_k coeffs[k] nu^(2k) + O(nu^(2K+2))``."""

    n: int
    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __call__(self, nu):
        x = nu * nu
        return sum(float(c) * x ** k for k, c in enumerate(self.coeffs))

    def as_strings(self):
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def d_n_series(n, order):
    """Exact power-series coefficients of ``D_n(nu)`` in ``nu^2`` up to ``nu^(2 order)``."""
    if order < 0 or order > MAX_SERIES_ORDER:
        raise BudgetError(f"order must lie in [0, {MAX_SERIES_ORDER}]")
    coeffs = tuple(gaussian_coefficient(k) * series_term(k, n) for k in range(order + 1))
    return RationalSeries(int(n), coeffs)
