import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cuevol import volume as vl
from cuevol.errors import ConvergenceError, DomainError
from cuevol.volume import BallQuery, Method

import oracle_values as ov

# frozen regression bounds for the Gaussian-limit volume, measured once against quadrature
ASYMPTOTIC_GAP = {3: 1e-2, 4: 1e-3}


def exact(n, r, tol=None):
    return vl.volume_exact(BallQuery(n, r), tol)


class TestQuery:
    def test_bounds(self):
        with pytest.raises(DomainError):
            BallQuery(2, -0.1)
        with pytest.raises(DomainError):
            BallQuery(2, 2 * math.sqrt(2) + 1e-9)
        with pytest.raises(DomainError):
            BallQuery(0, 1.0)
        assert BallQuery(3, 2 * math.sqrt(3)).r == 2 * math.sqrt(3)
        assert BallQuery(4, 2.0).shift == -1.0

    def test_estimate_invariants(self):
        with pytest.raises(DomainError):
            vl.VolumeEstimate(1.5, 0.0, Method.EXACT)
        with pytest.raises(DomainError):
            vl.VolumeEstimate(0.5, math.inf, Method.EXACT)


class TestExact:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
    def test_boundaries_and_median(self, n):
        full = exact(n, 2 * math.sqrt(n))
        tol = vl.default_tolerance(n)
        assert exact(n, 0.0).value == 0.0
        assert abs(full.value - 1.0) <= tol
        assert abs(exact(n, math.sqrt(2 * n)).value - 0.5) <= tol
        assert full.abs_error <= tol

    @pytest.mark.parametrize("r", ["0.5", "1", "1.7", "2.4", "2.8"])
    def test_n2_against_angle_integral(self, r):
        assert abs(exact(2, float(r)).value - getattr(ov, f"VOL2_{r.replace('.', 'P')}")) <= 1e-10

    @pytest.mark.parametrize("n,r", [(3, "1"), (3, "2"), (3, "3"), (4, "2"), (4, "3")])
    def test_against_mpmath_quadrature(self, n, r):
        est = exact(n, float(r))
        assert abs(est.value - getattr(ov, f"VOL{n}_{r}")) <= 1e-10
        assert est.abs_error <= 1e-10

    def test_small_radius_is_tiny(self):
        # near r = 0 the two sine terms nearly cancel
        assert exact(3, 1e-3).value <= 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_monotone(self, n):
        r = np.linspace(0, 2 * math.sqrt(n), 25)[1:-1]
        v = [exact(n, x).value for x in r]
        tol = vl.default_tolerance(n)
        # near r = 0 the volume (~ r^(n^2)) is below tolerance and steps are unresolvable
        assert all(b - a > -tol for a, b in zip(v, v[1:]))
        assert all(b - a > tol for a, b in zip(v, v[1:]) if b > 10 * tol)

    def test_large_n_floor(self):
        est = exact(6, 2.0, tol=1e-10)
        assert est.abs_error <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            exact(1, 1.0)
        with pytest.raises(DomainError):
            exact(9, 1.0)
        with pytest.raises(DomainError):
            exact(3, 1.0, tol=1e-12)


class TestClosedForms:
    def test_n1(self):
        assert vl.volume_n1_closed(2.0).value == 1.0
        assert vl.volume_n1_closed(math.sqrt(2)).value == pytest.approx(0.5, abs=1e-15)
        assert vl.volume_n1_closed(0.0).value == 0.0

    def test_n2_examples(self):
        assert vl.volume_n2_closed(2.0).value == pytest.approx(0.5, abs=1e-12)
        assert vl.volume_n2_closed(2 * math.sqrt(2)).value == pytest.approx(1.0, abs=1e-9)
        assert abs(vl.volume_n2_closed(1.0).value - exact(2, 1.0, 1e-9).value) <= 2e-9

    def test_i0_at_one(self):
        val, err = vl.bessel_square_integral(0, 1.0)
        assert val == pytest.approx(0.5, abs=1e-12) and err < 1e-12

    def test_i1_closed_vs_quadrature(self):
        for b in (-0.8, -0.3, 1e-9, 0.6, 0.95):
            quad, _ = vl.bessel_square_integral(1, b)
            assert vl._i1_closed(b) == pytest.approx(quad, abs=1e-12)

    @given(st.floats(0.01, 2 * math.sqrt(2) - 0.01))
    def test_n2_cross_method(self, r):
        assert abs(vl.volume_n2_closed(r).value - exact(2, r).value) <= 3e-9


class TestAsymptotic:
    def test_examples(self):
        assert vl.volume_asymptotic(BallQuery(5, 0.0)).value == 0.0
        assert vl.volume_asymptotic(BallQuery(3, 2.0)).value == pytest.approx(0.0786385583, abs=1e-10)
        assert vl.volume_asymptotic(BallQuery(5, 2 * math.sqrt(5))).value == pytest.approx(
            math.erf(5), abs=1e-15)

    @given(st.integers(1, 40), st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, n, a, b):
        lo, hi = sorted((a, b))
        rm = 2 * math.sqrt(n)
        v_lo = vl.volume_asymptotic(BallQuery(n, lo * rm)).value
        v_hi = vl.volume_asymptotic(BallQuery(n, hi * rm)).value
        assert v_lo <= v_hi

    @pytest.mark.parametrize("n", [3, 4])
    def test_accuracy_regression(self, n):
        grid = [2 * math.sqrt(n) * i / 21 for i in range(1, 21)]
        gap = max(abs(exact(n, r).value - vl.volume_asymptotic(BallQuery(n, r)).value) for r in grid)
        assert gap <= ASYMPTOTIC_GAP[n]


class TestInverse:
    def test_full_ball(self):
        for n in (1, 4, 16):
            assert vl.volume_inverse(n, 1.0, "asymptotic") == 2 * math.sqrt(n)

    def test_median_exact(self):
        assert vl.volume_inverse(2, 0.5, "exact") == pytest.approx(2.0, abs=1e-6)
        assert vl.volume_inverse(2, 0.5, "closed-n2") == pytest.approx(2.0, abs=1e-6)

    @pytest.mark.parametrize("v", [1e-40, 1e-6, 0.3])
    def test_asymptotic_roundtrip(self, v):
        r = vl.volume_inverse(8, v, "asymptotic")
        assert abs(vl.volume_asymptotic(BallQuery(8, r)).value - v) <= 1e-11

    @given(st.integers(1, 30), st.floats(-300, 0))
    def test_offset_roundtrip(self, n, log_v):
        s, degenerate = vl.asymptotic_offset(n, log_v)
        if not degenerate and s > 0:
            with mp.workdps(60):
                if s > 1e-20:
                    got = mp.log((mp.erfc(n - mp.mpf(s)) - mp.erfc(n)) / 2)
                else:
                    # erfc difference would cancel; integrate the thin slab directly
                    mass = mp.quad(lambda u: mp.exp(-(n - u) ** 2), [0, mp.mpf(s)])
                    got = mp.log(mass / mp.sqrt(mp.pi))
            assert float(got) == pytest.approx(log_v, abs=1e-10)

    def test_offset_below_resolution_of_n(self):
        # n - s rounds to n here; reference from mpmath via erfc differences
        s, degenerate = vl.asymptotic_offset(4, -76 * math.log(2))
        assert not degenerate
        assert s == pytest.approx(2.084524367811673e-16, rel=1e-12)
        assert vl.asymptotic_offset(64, -5000.0) == (0.0, False)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("v", [0.01, 0.25, 0.7, 0.99])
    def test_exact_roundtrip(self, n, v):
        r = vl.volume_inverse(n, v, "exact")
        assert abs(exact(n, r).value - v) <= 1e-6

    def test_errors(self):
        with pytest.raises(DomainError):
            vl.volume_inverse(2, 0.0)
        with pytest.raises(DomainError):
            vl.volume_inverse(2, 1.1)
        with pytest.raises(DomainError):
            vl.volume_inverse(3, 0.5, "closed-n2")
        with pytest.raises(ValueError):
            vl.volume_inverse(3, 0.5, "nonsense")

    def test_convergence_error_carries_bracket(self):
        with pytest.raises(ConvergenceError) as info:
            vl._invert_monotone(lambda r: r, 5.0, 0.0, 1.0, 1e-9)
        assert info.value.bracket == (0.0, 1.0)
