"""Volumes of chordal-distance balls in the unitary group and derived code bounds."""

from .bounds import (
    cardinality_bounds, diversity_sum_bound, min_distance_bounds, rate_bounds, rate_scaling,
)
from .cue_core import d_n, d_n_asymptotic
from .errors import (
    BudgetError, ConvergenceError, CuevolError, DomainError, ToleranceError,
    UnsupportedError, VanishingCoefficientError,
)
from .mc import mc_volume, sample_haar
from .volume import (
    BallQuery, Method, VolumeEstimate, volume_asymptotic, volume_exact, volume_inverse,
    volume_n1_closed, volume_n2_closed,
)
from .zonal import Partition, d_n_series

__version__ = "0.1.0"
