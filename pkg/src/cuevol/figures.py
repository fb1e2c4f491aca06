"""Curve data for the three comparison plots, as ``(x, series, value, method)`` rows.

Only data is produced; rendering is left to external tools.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import rate_bounds, rate_scaling
from .cue_core import d_n_asymptotic, d_n_grid
from .errors import DomainError
from .volume import BallQuery, volume_asymptotic, volume_exact

__all__ = ["MAX_POINTS", "characteristic_curves", "volume_curves", "rate_curves", "figure_rows"]

MAX_POINTS = 10_000


def _check_points(points):
    points = int(points)
    if not 2 <= points <= MAX_POINTS:
        raise DomainError(f"grid size must lie in [2, {MAX_POINTS}]")
    return points


def characteristic_curves(dims=(2, 3, 4), nu_max=10.0, points=101):
    """``D_n(nu)`` for each ``n`` and the Gaussian limit on ``[0, nu_max]``."""
    nu = np.linspace(0.0, float(nu_max), _check_points(points))
    rows = []
    for n in dims:
        rows += [(x, f"D_{n}", v, "toeplitz_det") for x, v in zip(nu, d_n_grid(n, nu))]
    rows += [(x, "gaussian_limit", d_n_asymptotic(x), "asymptotic") for x in nu]
    return rows


def volume_curves(dims=(2, 3, 4), points=41):
    """Exact and asymptotic volumes on ``r`` in ``[0, 2 sqrt(n)]``."""
    points = _check_points(points)
    rows = []
    for n in dims:
        for r in np.linspace(0.0, 2.0 * math.sqrt(n), points):
            q = BallQuery(n, r)
            rows.append((r, f"exact_n{n}", volume_exact(q).value, "exact_quadrature"))
            rows.append((r, f"asymptotic_n{n}", volume_asymptotic(q).value, "asymptotic"))
    return rows


def rate_curves(dims=(4, 16), points=60):
    """Normalised rate bounds ``R / n`` and their scaling-law limits against ``r``."""
    points = _check_points(points)
    rows = []
    for n in dims:
        r_max = 2.0 * math.sqrt(n)
        for r in np.linspace(r_max / points, r_max, points):
            lo, hi = rate_bounds(n, r)
            lam = r * r / n
            rows.append((r, f"rate_lower_n{n}", lo / n, "asymptotic"))
            rows.append((r, f"rate_upper_n{n}", hi / n, "asymptotic"))
            rows.append((r, f"scaling_lower_n{n}", rate_scaling(lam, 2), "scaling_law"))
            rows.append((r, f"scaling_upper_n{n}", rate_scaling(lam, 8), "scaling_law"))
    return rows


def figure_rows(which, points=None):
    builders = {1: characteristic_curves, 2: volume_curves, 3: rate_curves}
    if which not in builders:
        raise DomainError("figure must be 1, 2 or 3")
    kwargs = {} if points is None else {"points": points}
    return [(float(x), s, float(v), m) for x, s, v, m in builders[which](**kwargs)]
