"""Toeplitz--Bessel determinant ``D_n(nu)`` and its large-``n`` limit.

``D_n(nu) = E[exp(i nu X)]`` with ``X = Re tr(U) / 2`` for Haar-distributed
``U`` in ``U(n)``. It equals ``det(J_{j-k}(nu / 2))`` and tends to
``exp(-nu^2 / 16)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnsupportedError
from .specfun import bessel_j_orders

__all__ = [
    "MAX_N", "SymbolCoefficients", "DeterminantEval", "deformation_symbol",
    "toeplitz_matrices", "d_n", "d_n_grid", "d_n_eval", "d_n_asymptotic",
    "bessel_toeplitz_det", "szego_log_determinant", "andreief_oracle",
]

MAX_N = 64
MAX_NU = 1e4


@dataclass(frozen=True)
class DeterminantEval:
    n: int
    nu: float
    value: float


@dataclass(frozen=True)
class SymbolCoefficients:
    """Fourier coefficients ``(log f)_j`` of a log-symbol with finite band."""

    coeffs: dict = field(default_factory=dict)

    @property
    def band(self):
        nonzero = [abs(j) for j, c in self.coeffs.items() if c != 0]
        return max(nonzero, default=0)

    def __getitem__(self, j):
        return self.coeffs.get(j, 0.0)


def deformation_symbol(nu):
    """Log-symbol of ``f(theta) = exp(i nu cos(theta) / 2)``: ``(log f)_{+-1} = i nu / 4``."""
    c = 0.25j * nu
    return SymbolCoefficients({1: c, -1: c})


def _check_n(n):
    if int(n) != n or not 1 <= n <= MAX_N:
        raise DomainError(f"matrix order must be an integer in [1, {MAX_N}]")
    return int(n)


def toeplitz_matrices(n, x):
    """Stack of Toeplitz matrices ``(J_{j-k}(x))`` of shape ``x.shape + (n, n)``."""
    n = _check_n(n)
    x = np.asarray(x, dtype=float)
    orders = bessel_j_orders(x.ravel(), n - 1)   # (n, m)
    lut = np.empty((2 * n - 1, orders.shape[1]))
    for k in range(n):
        lut[n - 1 + k] = orders[k]
        lut[n - 1 - k] = -orders[k] if k % 2 else orders[k]
    diff = np.subtract.outer(np.arange(n), np.arange(n))
    mats = np.moveaxis(lut[diff + n - 1], -1, 0)  # (m, n, n)
    return mats.reshape(x.shape + (n, n))


def bessel_toeplitz_det(n, x):
    """``det(J_{j-k}(x))_{j,k=1..n}``, vectorised over ``x``."""
    mats = toeplitz_matrices(n, x)
    return np.linalg.det(mats)


def d_n_grid(n, nu):
    """Vectorised ``D_n`` over an array of ``nu``."""
    nu = np.asarray(nu, dtype=float)
    if np.any(np.abs(nu) > MAX_NU):
        raise DomainError(f"|nu| must not exceed {MAX_NU:g}")
    # even in nu; evaluate at |nu| so the symmetry is exact
    return bessel_toeplitz_det(n, 0.5 * np.abs(nu))


def d_n(n, nu):
    """Toeplitz determinant ``D_n(nu) = det(J_{j-k}(nu / 2))``."""
    return float(d_n_grid(n, np.array([float(nu)]))[0])


def d_n_eval(n, nu):
    return DeterminantEval(int(n), float(nu), d_n(n, nu))


def d_n_asymptotic(nu):
    """Large-``n`` limit ``exp(-nu^2 / 16)``."""
    return math.exp(-nu * nu / 16.0)


def szego_log_determinant(symbol, n):
    """Strong-limit prediction ``n (log f)_0 + sum_{j>=1} j (log f)_j (log f)_{-j}``."""
    total = n * complex(symbol[0])
    for j in range(1, symbol.band + 1):
        total += j * complex(symbol[j]) * complex(symbol[-j])
    return total


_ANDREIEF_NODES = 400


def andreief_oracle(n, nu):
    """Brute-force angular integral for ``D_n(nu)``, ``n`` in ``{1, 2}``.

    Integrates the CUE eigenangle density, weighted by
    ``prod_j exp(i nu cos(theta_j) / 2)``, on a tensor Gauss--Legendre grid.
    Independent of the Bessel/Toeplitz route.
    """
    if n not in (1, 2):
        raise UnsupportedError("andreief_oracle supports n = 1 and n = 2 only")
    if abs(nu) > 50:
        raise DomainError("andreief_oracle requires |nu| <= 50")
    t, w = np.polynomial.legendre.leggauss(_ANDREIEF_NODES)
    theta = math.pi * t
    w = math.pi * w
    phase = np.exp(0.5j * nu * np.cos(theta))
    if n == 1:
        return float((np.dot(w, phase) / (2 * math.pi)).real)
    vdm = np.abs(np.exp(1j * theta)[:, None] - np.exp(1j * theta)[None, :]) ** 2
    integrand = vdm * np.outer(phase, phase)
    total = w @ integrand @ w
    return float((total / (2 * (2 * math.pi) ** 2)).real)
