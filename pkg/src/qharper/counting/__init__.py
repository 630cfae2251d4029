"""Pair-source statistics, counting Monte Carlo, and g2 estimators."""

from .models import (
    COHERENT,
    THERMAL,
    CauchySchwarzResult,
    CountRecord,
    DetectionChannel,
    G2Estimate,
    G2Triple,
    SourceModel,
    analytic_g2,
    auto_click_probabilities,
    click_probabilities,
)
from .simulate import (
    BLOCK_WINDOWS,
    DEFAULT_AGGREGATE_THRESHOLD,
    IDLER,
    SIGNAL,
    active_backend,
    available_backends,
    cauchy_schwarz,
    estimate_g2,
    hbt_auto_g2,
    simulate_counts,
    site_count_record,
    site_g2_scan,
    site_seed,
)

__all__ = [
    "COHERENT",
    "THERMAL",
    "CauchySchwarzResult",
    "CountRecord",
    "DetectionChannel",
    "G2Estimate",
    "G2Triple",
    "SourceModel",
    "analytic_g2",
    "auto_click_probabilities",
    "click_probabilities",
    "BLOCK_WINDOWS",
    "DEFAULT_AGGREGATE_THRESHOLD",
    "IDLER",
    "SIGNAL",
    "active_backend",
    "available_backends",
    "cauchy_schwarz",
    "estimate_g2",
    "hbt_auto_g2",
    "simulate_counts",
    "site_count_record",
    "site_g2_scan",
    "site_seed",
]
