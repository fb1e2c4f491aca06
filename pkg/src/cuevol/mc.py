"""Monte Carlo over Haar-random unitaries.

Samples are generated in fixed blocks of ``BLOCK`` matrices. Block ``b`` draws
from its own Philox stream keyed by ``(seed, b)``, so results do not depend on
how many worker threads process the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "BLOCK", "UnitaryMatrix", "McEstimate", "MomentEstimate", "stream",
    "sample_haar", "sample_haar_batch", "chordal_distance", "chordal_distance_direct",
    "sample_traces", "mc_volume", "mc_volume_grid", "linear_statistic_moments",
    "empirical_characteristic_function", "fresh_seed",
]

BLOCK = 65536
MAX_N = 64
MAX_ORDER = 8
JACKKNIFE_GROUPS = 200
UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class UnitaryMatrix:
    n: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.shape != (self.n, self.n):
            raise DomainError("entries must be n x n")
        defect = np.linalg.norm(a.conj().T @ a - np.eye(self.n))
        if defect > UNITARY_TOL * max(1, self.n):
            raise DomainError(f"matrix is not unitary (defect {defect:.3g})")
        object.__setattr__(self, "entries", a)


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    std_err: float
    n_samples: int
    seed: int


@dataclass(frozen=True)
class MomentEstimate:
    """Order 1 is the mean; higher orders are central moments."""

    order: int
    value: float
    std_err: float


def _check_seed(seed):
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise DomainError("seed must be a 64-bit unsigned integer")
    return seed


def fresh_seed():
    """A random 64-bit seed drawn from OS entropy."""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def stream(seed, block=0):
    """Counter-based generator for one block of a seeded run."""
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.Philox(ss))


def _check_n(n):
    if int(n) != n or not 1 <= n <= MAX_N:
        raise DomainError(f"n must be an integer in [1, {MAX_N}]")
    return int(n)


def sample_haar_batch(n, count, rng):
    """``count`` Haar unitaries as an array of shape ``(count, n, n)``.

    QR of complex Ginibre matrices, with the columns of ``Q`` rotated by the
    phases of ``diag(R)``. Without that correction the law is not Haar.
    """
    n = _check_n(n)
    z = rng.standard_normal((count, n, n, 2)) @ np.array([1.0, 1.0j]) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.abs(d)
    return q * phase[:, None, :]


def sample_haar(n, rng):
    """One Haar-distributed ``UnitaryMatrix`` drawn from generator ``rng``."""
    return UnitaryMatrix(_check_n(n), sample_haar_batch(n, 1, rng)[0])


def _entries(u):
    return u.entries if isinstance(u, UnitaryMatrix) else np.asarray(u)


def chordal_distance(u):
    """``||U - I||_F`` from the trace identity ``2n - 2 Re tr U``; works on stacks."""
    a = _entries(u)
    n = a.shape[-1]
    sq = 2.0 * n - 2.0 * np.trace(a, axis1=-2, axis2=-1).real
    out = np.sqrt(np.clip(sq, 0.0, 4.0 * n))
    return float(out) if out.ndim == 0 else out


def chordal_distance_direct(u):
    a = _entries(u)
    n = a.shape[-1]
    out = np.linalg.norm(a - np.eye(n), axis=(-2, -1))
    return float(out) if np.ndim(out) == 0 else out


def _block_traces(n, seed, block, count):
    u = sample_haar_batch(n, count, stream(seed, block))
    return np.trace(u, axis1=-2, axis2=-1).real


def sample_traces(n, n_samples, seed, workers=1):
    """``Re tr U`` for ``n_samples`` Haar draws; identical for any ``workers``."""
    n = _check_n(n)
    n_samples = int(n_samples)
    if n_samples < 1:
        raise DomainError("n_samples must be positive")
    seed = _check_seed(seed)
    sizes = [min(BLOCK, n_samples - start) for start in range(0, n_samples, BLOCK)]
    jobs = [(n, seed, b, c) for b, c in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            parts = list(pool.map(lambda j: _block_traces(*j), jobs))
    else:
        parts = [_block_traces(*j) for j in jobs]
    return np.concatenate(parts)


def _estimate(hits, total, seed):
    p = hits / total
    return McEstimate(p, math.sqrt(p * (1.0 - p) / total), total, seed)


def mc_volume_grid(n, radii, n_samples, seed, workers=1):
    """One sample set, scored against several radii."""
    n = _check_n(n)
    radii = [float(r) for r in radii]
    r_max = 2.0 * math.sqrt(n)
    if any(not 0.0 <= r <= r_max * (1 + 1e-15) for r in radii):
        raise DomainError("radius outside [0, 2 sqrt(n)]")
    tr = sample_traces(n, n_samples, seed, workers)
    dist = np.sqrt(np.clip(2.0 * n - 2.0 * tr, 0.0, 4.0 * n))
    return [_estimate(int(np.count_nonzero(dist <= min(r, r_max))), len(tr), int(seed))
            for r in radii]


def mc_volume(n, r, n_samples, seed, workers=1):
    """Fraction of ``n_samples`` Haar unitaries within chordal distance ``r`` of ``I``."""
    return mc_volume_grid(n, [r], n_samples, seed, workers)[0]


def linear_statistic_moments(n, n_samples, seed, max_order=4, workers=1):
    """Empirical moments of ``X = Re tr(U) / 2`` with grouped-jackknife errors.

    Returns
    -------
    list of MomentEstimate
        Orders ``1..max_order``: the mean, then central moments.
    """
    max_order = int(max_order)
    if not 1 <= max_order <= MAX_ORDER:
        raise DomainError(f"max_order must lie in [1, {MAX_ORDER}]")
    x = 0.5 * sample_traces(n, n_samples, seed, workers).astype(np.longdouble)
    total = len(x)
    groups = min(JACKKNIFE_GROUPS, total)
    mean = x.sum() / total
    c = x - mean
    # per-group power sums of the centred data, j = 0..max_order
    bounds = np.linspace(0, total, groups + 1).astype(int)
    powers = np.stack([c ** j for j in range(max_order + 1)])
    sums = np.add.reduceat(powers, bounds[:-1], axis=1)       # (K+1, G)
    full = sums.sum(axis=1)

    def central(t):
        # t: power sums about the global mean; recentre on the subset mean
        delta = t[1] / t[0]
        out = [mean + delta]
        for k in range(2, max_order + 1):
            acc = sum(math.comb(k, j) * t[j] * (-delta) ** (k - j) for j in range(k + 1))
            out.append(acc / t[0])
        return np.array(out)

    point = central(full)
    if groups < 2:
        errs = np.full(max_order, np.nan)
    else:
        loo = np.array([central(full - sums[:, g]) for g in range(groups)])
        spread = loo - loo.mean(axis=0)
        errs = np.sqrt((groups - 1) / groups * (spread ** 2).sum(axis=0))
    return [MomentEstimate(k + 1, float(point[k]), float(errs[k])) for k in range(max_order)]


def empirical_characteristic_function(n, nu, n_samples, seed, workers=1):
    """Sample mean of ``exp(i nu X)``; its real part estimates ``D_n(nu)``."""
    x = 0.5 * sample_traces(n, n_samples, seed, workers)
    if nu == 0:
        return complex(1.0, 0.0)
    return complex(np.mean(np.exp(1j * float(nu) * x)))
