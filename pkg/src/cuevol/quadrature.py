"""Panel Gauss--Legendre grids and closed-form oscillatory tails.

The tails handle integrals ``int_T^inf sin(w nu) / nu * J_k(nu/2)^2 d nu`` whose
integrand decays only like ``1 / nu^2``. They use the large-argument expansion
of ``J_k^2`` and reduce every term to ``int_T^inf exp(i W nu) nu^-s d nu``,
which follows from ``Si`` and ``Ci`` by integrating by parts.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .specfun import cosine_integral, sine_integral

GL_NODES = 16
TAIL_TERMS = 12


@lru_cache(maxsize=8)
def _leggauss(k):
    return np.polynomial.legendre.leggauss(k)


def panel_grid(upper, panel, nodes=GL_NODES):
    """Nodes and weights of composite Gauss--Legendre on ``[0, upper]``.

    ``upper`` is rounded up to a whole number of panels of width ``panel``.
    Returns ``(nu, w, upper)``.
    """
    count = max(1, int(math.ceil(upper / panel - 1e-12)))
    t, w = _leggauss(nodes)
    left = panel * np.arange(count)
    nu = (left[:, None] + 0.5 * panel * (t[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * panel * w, count)
    return nu, weights, count * panel


def tail_moments(omega, upper, smax):
    """``E[s] = int_upper^inf exp(i omega nu) nu^-s d nu`` for ``s = 0..smax``.

    Entries ``E[0]`` and (for ``omega == 0``) ``E[1]`` diverge and are NaN.
    """
    out = np.full(smax + 1, np.nan, dtype=complex)
    if omega == 0.0:
        for s in range(2, smax + 1):
            out[s] = upper ** (1 - s) / (s - 1)
        return out
    x = abs(omega) * upper
    e1 = complex(-cosine_integral(x), 0.5 * math.pi - sine_integral(x))
    if omega < 0:
        e1 = e1.conjugate()
    out[1] = e1
    phase = complex(math.cos(omega * upper), math.sin(omega * upper))
    for s in range(2, smax + 1):
        out[s] = upper ** (1 - s) * phase / (s - 1) + 1j * omega / (s - 1) * out[s - 1]
    return out


def _hankel_coeffs(k, terms):
    # P, Q of the Hankel expansion as polynomials in w = 1/x
    mu = 4.0 * k * k
    a = [1.0]
    for j in range(1, terms + 1):
        a.append(a[-1] * (mu - (2 * j - 1) ** 2) / (8.0 * j))
    p = np.zeros(terms + 1)
    q = np.zeros(terms + 1)
    for j, aj in enumerate(a):
        sign = -1.0 if (j // 2) % 2 else 1.0
        (p if j % 2 == 0 else q)[j] = sign * aj
    return p, q


@lru_cache(maxsize=None)
def bessel_square_expansion(k, terms=TAIL_TERMS):
    """Coefficients of ``J_k(nu/2)^2`` for large ``nu``.

    ``J_k(nu/2)^2 ~ 2/(pi nu) * sum_m nu^-m [alpha_m + (-1)^k (beta_m sin nu + gamma_m cos nu)]``.
    """
    p, q = _hankel_coeffs(k, terms)
    cut = terms + 1
    pp = np.convolve(p, p)[:cut]
    qq = np.convolve(q, q)[:cut]
    pq = np.convolve(p, q)[:cut]
    scale = 2.0 ** np.arange(cut)                 # w = 1/x = 2/nu
    return (pp + qq) * scale, (pp - qq) * scale, 2.0 * pq * scale


def bessel_square_sine_tail(k, omega, upper, terms=TAIL_TERMS):
    """``int_upper^inf sin(omega nu) / nu * J_k(nu/2)^2 d nu`` and a truncation estimate."""
    if omega == 0.0:
        return 0.0, 0.0
    alpha, beta, gamma = bessel_square_expansion(k, terms)
    sign = -1.0 if k % 2 else 1.0
    smax = terms + 2
    e_w = tail_moments(omega, upper, smax)
    e_minus = tail_moments(omega - 1.0, upper, smax)
    e_plus = tail_moments(omega + 1.0, upper, smax)
    total = 0.0
    for m in range(terms + 1):
        s = m + 2
        total += alpha[m] * e_w[s].imag
        total += sign * 0.5 * beta[m] * (e_minus[s].real - e_plus[s].real)
        total += sign * 0.5 * gamma[m] * (e_plus[s].imag + e_minus[s].imag)
    total *= 2.0 / math.pi
    last = abs(alpha[-1]) + abs(beta[-1]) + abs(gamma[-1])
    err = 2.0 / math.pi * last * upper ** (-terms - 1) / (terms + 1)
    return total, err
