"""Partition measures from the cycle index of GL(n,q) and U(n,q).

Exact arithmetic throughout: weights are rationals, infinite products are
rational enclosures, and every finite-group statement can be checked by
exhaustive census at small n and q.
"""

from .exactnum import IntervalEnclosure, euler_prefactor, signed_prefactor
from .measure import MeasureParams, measure_value, normalized_weight, path_sum
from .partition import Partition, StandardTableau
from .sampler import SamplerConfig, sample_partition, sample_stream
from .theorems import GroupSpec

__version__ = "0.1.0"

__all__ = [
    "IntervalEnclosure", "euler_prefactor", "signed_prefactor",
    "MeasureParams", "measure_value", "normalized_weight", "path_sum",
    "Partition", "StandardTableau",
    "SamplerConfig", "sample_partition", "sample_stream",
    "GroupSpec",
]
