"""Secure on-off transmission design for wiretap fading channels with
channel estimation errors: closed-form outage/throughput analysis,
threshold and rate optimization, and a Monte-Carlo validation oracle."""

from .channel import (
    ChannelDraw,
    EstimationStats,
    Scenario,
    SystemConfig,
    actual_snr,
    estimation_error_variance,
    sample_block,
    sample_blocks,
    snr_stats,
)
from .design import (
    ADAPTIVE,
    NONADAPTIVE,
    AdaptivePolicy,
    BindingConstraints,
    DesignSolution,
    FeasibilityReport,
    OutageConstraints,
    adaptive_performance,
    feasibility,
    optimal_mu_b,
    optimize_pilot_power,
    rate_region_bound,
    solve_adaptive,
    solve_nonadaptive,
    solve_s1,
    solve_s2,
    solve_s3,
)
from .mcsim import (
    ConditionalLawReport,
    McEstimate,
    estimate_performance,
    validate_conditional_law_s2,
)
from .numerics import ToleranceSpec
from .outage import (
    PerformanceReport,
    RatePair,
    Thresholds,
    eta_slope_at_zero_mu_e,
    p_co_adaptive,
    p_co_fixed,
    p_so_s1,
    p_so_s2,
    p_so_s3,
    p_tx_fixed,
    throughput_fixed,
)
from .specfun import lambert_w0, marcum_q1

__version__ = "0.1.0"
