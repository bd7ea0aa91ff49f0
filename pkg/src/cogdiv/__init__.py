"""Monte Carlo simulator and analytic toolkit for multiuser-diversity
spectrum allocation in underlay cognitive networks."""

from .analytics import (
    CdfKind,
    ThresholdTable,
    build_threshold_table,
    cdf_exact,
    cdf_lower,
    cdf_upper,
    expected_log_max,
    harmonic_moments,
    order_stat_cdf,
    solve_threshold,
)
from .centralized import (
    Assignment,
    event_d,
    favorites,
    optimal_assignment_exhaustive,
    optimal_assignment_matching,
)
from .channel import FadingRealization, SinrTable, compute_sinr, draw_realization
from .config import ConfigError, NetworkConfig
from .distributed import (
    AllocationOutcome,
    CandidateSets,
    allocate_distributed,
    build_candidate_sets,
    candidacy_probability,
    claim_channel,
    resolve_contention,
)
from .harness import (
    ScalingReport,
    TrialAggregate,
    ValidationReport,
    run_trials,
    scaling_sweep,
    threshold_sweep,
    validate,
)

__all__ = [
    "AllocationOutcome",
    "Assignment",
    "CandidateSets",
    "CdfKind",
    "ConfigError",
    "FadingRealization",
    "NetworkConfig",
    "ScalingReport",
    "SinrTable",
    "ThresholdTable",
    "TrialAggregate",
    "ValidationReport",
    "allocate_distributed",
    "build_candidate_sets",
    "build_threshold_table",
    "candidacy_probability",
    "cdf_exact",
    "cdf_lower",
    "cdf_upper",
    "claim_channel",
    "compute_sinr",
    "draw_realization",
    "event_d",
    "expected_log_max",
    "favorites",
    "harmonic_moments",
    "optimal_assignment_exhaustive",
    "optimal_assignment_matching",
    "order_stat_cdf",
    "resolve_contention",
    "run_trials",
    "scaling_sweep",
    "solve_threshold",
    "threshold_sweep",
    "validate",
]

__version__ = "0.1.0"
