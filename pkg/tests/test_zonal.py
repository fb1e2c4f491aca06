import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cuevol import zonal as zn
from cuevol.errors import BudgetError, DomainError, VanishingCoefficientError


def test_partition_validation():
    assert zn.Partition((3, 1, 0)) == (3, 1)
    assert zn.Partition(()).weight == 0
    with pytest.raises(DomainError):
        zn.Partition((1, 2))
    with pytest.raises(DomainError):
        zn.Partition((2, -1))


def test_partitions_order():
    assert zn.partitions_of(3, 2) == [(3,), (2, 1)]
    assert zn.partitions_of(4, 4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert zn.partitions_of(0, 3) == [()]


@given(st.integers(0, 15), st.integers(1, 15))
def test_partitions_valid(k, m):
    parts = zn.partitions_of(k, m)
    assert len(set(parts)) == len(parts)
    assert all(p.weight == k and len(p) <= m for p in parts)
    assert parts == sorted(parts, reverse=True)


def test_partition_counts():
    # p(10) = 42, p(20) = 627
    assert len(zn.partitions_of(10, 10)) == 42
    assert len(zn.partitions_of(20, 20)) == 627


def test_chi_one_examples():
    assert zn.chi_one((2, 1), 3, 3) == 2
    assert zn.chi_one((3, 2), 5, 2) == 5
    with pytest.raises(DomainError):
        zn.chi_one((2, 1), 4, 3)


def test_schur_identity_dimension():
    # dimension of the GL(3) irrep (2, 1)
    assert zn.schur_identity((2, 1), 3) == 8
    assert zn.schur_identity((1,), 5) == 5


def test_schur_too_many_parts():
    with pytest.raises(DomainError):
        zn.schur_identity((1, 1, 1), 2)


def test_pochhammer():
    assert zn.pochhammer_multi(Fraction(1, 2), (2,), 1) == Fraction(3, 4)
    assert zn.pochhammer_multi(3, (2, 1), 2) == 3 * 4 * 2
    with pytest.raises(VanishingCoefficientError):
        zn.pochhammer_multi(1, (1, 1), 2)


@pytest.mark.parametrize("k,n", [(k, n) for k in range(0, 11) for n in range(1, 9)])
def test_trace_and_orthogonality(k, n):
    parts = zn.partitions_of(k, n)
    assert sum(zn.zonal_identity(p, n) for p in parts) == n ** k
    if n >= k:
        assert sum(zn.chi_one(p, k, n) ** 2 for p in parts) == math.factorial(k)


def test_series_known():
    assert zn.series_term(3, 2) == Fraction(5, 6)
    assert zn.series_term(4, 2) == Fraction(7, 12)
    assert zn.series_term(2, 2) == 1


def test_series_coefficients():
    assert zn.d_n_series(2, 4).coeffs == (1, Fraction(-1, 16), Fraction(1, 512),
                                          Fraction(-5, 147456), Fraction(7, 18874368))
    assert zn.d_n_series(3, 4).coeffs[3:] == (Fraction(-1, 24576), Fraction(23, 37748736))
    assert zn.d_n_series(4, 4).coeffs[4] == Fraction(1, 1572864)


def test_series_strings_and_eval():
    s = zn.d_n_series(2, 4)
    assert s.as_strings()[-2:] == ["-5/147456", "7/18874368"]
    assert s.order == 4
    assert s(0.0) == 1.0


@given(st.integers(1, 10))
def test_mock_gaussian(n):
    coeffs = zn.d_n_series(n, n).coeffs
    assert all(c == Fraction(-1, 16) ** k / math.factorial(k) for k, c in enumerate(coeffs))


def test_budget():
    with pytest.raises(BudgetError):
        zn.d_n_series(2, 25)
    with pytest.raises(BudgetError):
        zn.series_term(2, 17)
    with pytest.raises(DomainError):
        zn.partitions_of(41, 3)
