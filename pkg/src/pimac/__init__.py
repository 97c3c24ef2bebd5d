"""Capacity bounds for a 2-user Gaussian MAC sharing its medium with a P2P link.

The package computes and classifies rate regions for the three-transmitter,
two-receiver Gaussian network in which a two-user multiple access channel
and a point-to-point link interfere: exact capacity regions in the strong
and very-strong interference regimes, inner/outer bounds elsewhere, and a
sum-capacity bracket from a genie-aided upper bound and a
treat-interference-as-noise lower bound.
"""

from .backend import backend_name
from .bounds import (
    InternalConsistencyError,
    RedundancyClaim,
    Regime,
    RegimeReport,
    capacity_region,
    classify,
    inner_bound,
    outer_bound,
    regime_margins,
    verify_redundancy_claims,
)
from .model import ChannelParams, cap, effective_snr
from .regions import (
    DEDUP_TOL,
    FEAS_TOL,
    RateConstraint,
    RatePolytope,
    UnboundedRegionError,
    VertexSet,
    contains,
    eliminate_redundant,
    intersect,
    mac_region,
    max_weighted_sum,
    region_equal,
    vertices,
)
from .sumcap import (
    GeniePoint,
    SearchConfig,
    SumCapBracket,
    genie_objective,
    genie_upper_bound,
    noisy_interference_condition,
    snr_sweep,
    sumcap_bracket,
    tin_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "DEDUP_TOL",
    "FEAS_TOL",
    "GeniePoint",
    "InternalConsistencyError",
    "RateConstraint",
    "RatePolytope",
    "RedundancyClaim",
    "Regime",
    "RegimeReport",
    "SearchConfig",
    "SumCapBracket",
    "UnboundedRegionError",
    "VertexSet",
    "backend_name",
    "cap",
    "capacity_region",
    "classify",
    "contains",
    "effective_snr",
    "eliminate_redundant",
    "genie_objective",
    "genie_upper_bound",
    "inner_bound",
    "intersect",
    "mac_region",
    "max_weighted_sum",
    "noisy_interference_condition",
    "outer_bound",
    "regime_margins",
    "region_equal",
    "snr_sweep",
    "sumcap_bracket",
    "tin_lower_bound",
    "verify_redundancy_claims",
    "vertices",
]
