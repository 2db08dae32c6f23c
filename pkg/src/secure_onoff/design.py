"""Throughput-maximizing designs under secrecy and reliability constraints.

Fixed-rate designs pick the on-off thresholds per scenario; the joint designs
additionally choose the encoding rates, either one constant pair
("nonadaptive") or a per-block rate driven by Bob's estimate ("adaptive").
Feasibility is a result, not an error: infeasible constraint sets come back as
structured solutions carrying the numeric binding bound.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from . import numerics
from .channel import EstimationStats, Scenario, SystemConfig, snr_stats
from .outage import (
    PerformanceReport,
    RatePair,
    Thresholds,
    p_co_fixed,
    p_so_s1,
    p_so_s2,
    throughput_fixed,
)
from .specfun import lambert_w0

__all__ = [
    "OutageConstraints",
    "BindingConstraints",
    "FeasibilityReport",
    "DesignSolution",
    "AdaptivePolicy",
    "NONADAPTIVE",
    "ADAPTIVE",
    "feasibility",
    "optimal_mu_b",
    "rate_region_bound",
    "solve_s1",
    "solve_s2",
    "solve_s3",
    "solve_nonadaptive",
    "solve_adaptive",
    "adaptive_performance",
    "optimize_pilot_power",
]

NONADAPTIVE = "nonadaptive"
ADAPTIVE = "adaptive"
DesignMode = Union[Scenario, str]

_LN2 = math.log(2.0)

# Root tolerance for pinning p_so at the secrecy bound; the solver
# exactness checks ask for |p_so - eps| <= 1e-9, so solve well past that.
_ROOT_TOL = numerics.ToleranceSpec(abs_tol=1e-13, rel_tol=1e-13, max_iter=200)

# Adaptive-policy defaults: node count of the estimate grid and its span in
# units of mean_gb_hat beyond mu_b (exp(-18.4) ~ 1e-8 residual tail mass).
_ADAPTIVE_NODES = 512
_ADAPTIVE_SPAN = math.log(1e8)

# Rate-search tolerance for the scalar maximizations inside the joint designs.
_RATE_TOL = numerics.ToleranceSpec(abs_tol=1e-10, rel_tol=1e-10, max_iter=500)


@dataclass(frozen=True)
class OutageConstraints:
    """Secrecy bound eps on p_so and reliability bound delta on p_co."""

    eps: float
    delta: float

    def __post_init__(self):
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError(f"eps must lie in [0, 1], got {self.eps}")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")


@dataclass(frozen=True)
class BindingConstraints:
    """Which bounds the solution sits on: secrecy (p_so = eps via the Eve
    threshold or the rate offset) and reliability (p_co = delta via mu_b)."""

    secrecy: bool
    reliability: bool


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    eps_min: float  # infimum of achievable secrecy constraints (0 = unconstrained)
    reason: str


@dataclass(frozen=True)
class DesignSolution:
    feasible: bool
    reason: str
    thresholds: Optional[Thresholds] = None
    rates: Optional[RatePair] = None
    report: Optional[PerformanceReport] = None
    binding: Optional[BindingConstraints] = None


@dataclass(frozen=True)
class AdaptivePolicy:
    """Per-block rate rule: transmit when gb_hat > mu_b, then use codeword
    rate rb interpolated on the node grid and confidential rate rb - k."""

    mu_b: float
    k: float
    nodes: np.ndarray
    rb: np.ndarray
    eta: float

    def rate_at(self, gb_hat):
        """Codeword/confidential rate pair at one or many estimate values."""
        r_b = np.interp(gb_hat, self.nodes, self.rb)
        return r_b, r_b - self.k


def optimal_mu_b(stats: EstimationStats, r_b: float, delta: float) -> float:
    """Bob-side threshold that maximizes throughput subject to p_co <= delta.

    The unconstrained optimum is the decodability floor 2^r_b - 1; when the
    reliability bound binds, the threshold is lifted to the value at which
    p_co equals delta exactly.
    """
    x = 2.0 ** r_b - 1.0
    if stats.beta_b == 0.0 or delta >= 1.0:
        return x
    cap = math.log2(1.0 + (1.0 - stats.beta_b) * delta / (stats.beta_b * (1.0 - delta)))
    if r_b <= cap:
        return x
    ratio = delta * (1.0 + stats.beta_b * (x - 1.0)) / (stats.beta_b * x)
    return x * (1.0 - stats.mean_gb_tilde * math.log(ratio))


def _unconditional_p_so(stats: EstimationStats, rates: RatePair, sc: Scenario) -> float:
    """p_so with the Eve threshold removed (mu_e = inf)."""
    if sc is Scenario.S1:
        return p_so_s1(stats, rates, math.inf)
    return math.exp(-rates.eve_snr_ceiling / stats.mean_ge)


def rate_region_bound(stats: EstimationStats, mu_b: float, delta: float) -> float:
    """Largest Bob-SNR floor 2^r_b - 1 compatible with a pinned mu_b and the
    reliability bound: the positive solution x of

        mu_b = x * (1 - mean_gb_tilde * ln(delta*(beta_b*x + 1 - beta_b)/(beta_b*x))).
    """
    if not mu_b > 0:
        raise ValueError(f"mu_b must be positive, got {mu_b}")
    if stats.beta_b == 0.0:
        return mu_b
    bb, gbt = stats.beta_b, stats.mean_gb_tilde

    def h(x: float) -> float:
        return x * (1.0 - gbt * math.log(delta * (bb * x + 1.0 - bb) / (bb * x))) - mu_b

    lo, hi = numerics.grow_bracket(h, 1e-12, step=max(mu_b, 1.0), cap=1e9 * max(mu_b, 1.0))
    return numerics.find_root_monotone(h, lo, hi, _ROOT_TOL)


def feasibility(
    mode: DesignMode,
    stats: EstimationStats,
    con: OutageConstraints,
    rates: Optional[RatePair] = None,
    mu_b: Optional[float] = None,
) -> FeasibilityReport:
    """Whether (eps, delta) is achievable for the given scenario or scheme.

    Any delta in (0, 1] is achievable everywhere (mu_b can grow without
    bound), so only the secrecy side can bind:

    * S1: always feasible, including eps = 0 (the fed-back estimate bounds
      Eve's SNR, so capping it enforces perfect secrecy).
    * S2: eps must exceed the zero-estimate exceedance exp(-t/(p_e*beta_e)).
    * S3: eps must be at least the uncontrollable constant exp(-t/p_e).
    * Joint designs: any eps in (0, 1] (rate redundancy is unbounded); with a
      pinned mu_b, eps must exceed exp(-min(mu_b, rate-region bound)/p_e).
    """
    if mode in (NONADAPTIVE, ADAPTIVE):
        if mu_b is None or mode == ADAPTIVE:
            if con.eps > 0.0:
                return FeasibilityReport(True, 0.0, "any positive secrecy bound is achievable")
            return FeasibilityReport(
                False, 0.0, "eps = 0 needs unbounded rate redundancy; require eps > 0"
            )
        cap = min(mu_b, rate_region_bound(stats, mu_b, con.delta))
        eps_min = math.exp(-cap / stats.mean_ge)
        if con.eps > eps_min:
            return FeasibilityReport(True, eps_min, "feasible for the pinned Bob threshold")
        return FeasibilityReport(
            False,
            eps_min,
            f"eps={con.eps} does not exceed the floor {eps_min:.6g} set by mu_b={mu_b}",
        )

    if rates is None:
        raise ValueError("fixed-rate feasibility needs the rate pair")
    t = rates.eve_snr_ceiling

    if mode is Scenario.S1:
        return FeasibilityReport(True, 0.0, "feasible for any eps in [0, 1]")

    if mode is Scenario.S2:
        if stats.beta_e == 0.0:
            return FeasibilityReport(True, 0.0, "perfect Eve estimate: any eps achievable")
        eps_min = math.exp(-t / stats.mean_ge_tilde)
        if con.eps > eps_min:
            return FeasibilityReport(True, eps_min, "feasible")
        return FeasibilityReport(
            False,
            eps_min,
            f"eps={con.eps} does not exceed the zero-estimate exceedance {eps_min:.6g}",
        )

    if mode is Scenario.S3:
        eps_min = math.exp(-t / stats.mean_ge)
        if con.eps >= eps_min:
            return FeasibilityReport(True, eps_min, "feasible")
        return FeasibilityReport(
            False,
            eps_min,
            f"eps={con.eps} is below the uncontrollable secrecy outage {eps_min:.6g}",
        )

    raise ValueError(f"unknown design mode {mode!r}")


def _solve_mu_e(
    p_so_of_mu_e: Callable[[float], float], lo: float, eps: float, scale: float
) -> float:
    """Root of p_so(mu_e) = eps, growing the upper bracket by doubling.
    p_so is increasing in mu_e and exceeds eps somewhere by construction."""
    f = lambda mu: p_so_of_mu_e(mu) - eps
    lo_, hi = numerics.grow_bracket(f, lo, step=max(scale, 1.0), cap=1e3 * max(lo, scale, 1.0))
    return numerics.find_root_monotone(f, lo_, hi, _ROOT_TOL)


def _fixed_rate_solution(
    stats: EstimationStats,
    sc: Scenario,
    rates: RatePair,
    con: OutageConstraints,
    mu_e: float,
    theta: float,
    so_binding: bool,
) -> DesignSolution:
    mu_b = optimal_mu_b(stats, rates.r_b, con.delta)
    th = Thresholds(mu_b=mu_b, mu_e=mu_e)
    report = throughput_fixed(stats, sc, th, rates, theta)
    co_binding = mu_b > rates.bob_snr_floor * (1.0 + 1e-12)
    return DesignSolution(
        feasible=True,
        reason="optimal thresholds found",
        thresholds=th,
        rates=rates,
        report=report,
        binding=BindingConstraints(secrecy=so_binding, reliability=co_binding),
    )


def solve_s1(cfg: SystemConfig, rates: RatePair, con: OutageConstraints) -> DesignSolution:
    """Fixed-rate design with Eve feedback and an imperfectly-informed Eve."""
    stats = snr_stats(cfg)
    t = rates.eve_snr_ceiling
    if t == 0.0 and con.eps < 1.0:
        return DesignSolution(False, "zero rate redundancy cannot bound secrecy outage below 1")
    uncond = _unconditional_p_so(stats, rates, Scenario.S1)
    if uncond <= con.eps:
        mu_e, so_binding = math.inf, False
    elif con.eps == 0.0:
        mu_e, so_binding = t, True  # largest threshold with zero secrecy outage
    else:
        mu_e = _solve_mu_e(
            lambda mu: p_so_s1(stats, rates, mu), t, con.eps, stats.mean_ge_hat
        )
        so_binding = True
    return _fixed_rate_solution(stats, Scenario.S1, rates, con, mu_e, cfg.theta, so_binding)


def solve_s2(cfg: SystemConfig, rates: RatePair, con: OutageConstraints) -> DesignSolution:
    """Fixed-rate design with Eve feedback but a perfectly-informed Eve."""
    stats = snr_stats(cfg)
    feas = feasibility(Scenario.S2, stats, con, rates=rates)
    if not feas.feasible:
        return DesignSolution(False, feas.reason)
    t = rates.eve_snr_ceiling
    if t == 0.0 and con.eps < 1.0:
        return DesignSolution(False, "zero rate redundancy cannot bound secrecy outage below 1")
    if math.exp(-t / stats.mean_ge) <= con.eps:
        # The feedback carries no design value here; same solution as S3.
        mu_e, so_binding = math.inf, False
    elif stats.beta_e == 0.0 and con.eps == 0.0:
        mu_e, so_binding = t, True
    else:
        mu_e = _solve_mu_e(
            lambda mu: p_so_s2(stats, rates, mu),
            1e-9 * stats.mean_ge_hat,
            con.eps,
            stats.mean_ge_hat,
        )
        so_binding = True
    return _fixed_rate_solution(stats, Scenario.S2, rates, con, mu_e, cfg.theta, so_binding)


def solve_s3(cfg: SystemConfig, rates: RatePair, con: OutageConstraints) -> DesignSolution:
    """Fixed-rate design without Eve feedback: only mu_b is controllable and
    the secrecy outage is a constant the constraint either admits or not."""
    stats = snr_stats(cfg)
    feas = feasibility(Scenario.S3, stats, con, rates=rates)
    if not feas.feasible:
        return DesignSolution(False, feas.reason)
    return _fixed_rate_solution(stats, Scenario.S3, rates, con, math.inf, cfg.theta, False)


def _nonadaptive_objective(stats: EstimationStats, k: float, delta: float) -> Callable[[float], float]:
    def value(r_b: float) -> float:
        if r_b <= k:
            return 0.0
        mu_b = optimal_mu_b(stats, r_b, delta)
        p_tx = math.exp(-mu_b / stats.mean_gb_hat)
        return (r_b - k) * p_tx * (1.0 - p_co_fixed(stats, r_b, mu_b))

    return value


def _rate_search_ceiling(stats: EstimationStats, k: float, delta: float) -> float:
    """Upper end of the codeword-rate search interval for the joint designs."""
    w_term = k + lambert_w0(2.0 ** (-k) * stats.mean_gb_hat) / _LN2
    if stats.beta_b > 0.0 and delta < 1.0:
        branch = math.log2(1.0 + (1.0 - stats.beta_b) * delta / (stats.beta_b * (1.0 - delta)))
        if math.isfinite(branch):
            return max(branch, w_term)
    # Degenerate bound: beyond this floor p_tx < e^-60, which cannot hold the max.
    return max(w_term, math.log2(1.0 + 60.0 * stats.mean_gb_hat))


def solve_nonadaptive(cfg: SystemConfig, con: OutageConstraints) -> DesignSolution:
    """Joint design with one constant rate pair.

    The confidential rate is r_b - k with k = log2(1 + p_e*ln(1/eps)), which
    pins p_so at eps exactly; r_b is then a 1-D throughput maximization over
    a provably bounding interval, with mu_b following the fixed-rate rule.
    """
    stats = snr_stats(cfg)
    feas = feasibility(NONADAPTIVE, stats, con)
    if not feas.feasible:
        return DesignSolution(False, feas.reason)

    k = math.log2(1.0 + stats.mean_ge * math.log(1.0 / con.eps))
    hi = _rate_search_ceiling(stats, k, con.delta)
    if not hi > k:
        return DesignSolution(False, f"empty rate search interval ({k}, {hi}]")

    r_b, _ = numerics.maximize_scalar(
        _nonadaptive_objective(stats, k, con.delta), k, hi, _RATE_TOL
    )
    if r_b <= k:
        return DesignSolution(False, "no positive confidential rate in the search interval")

    rates = RatePair(r_b=r_b, r_s=r_b - k)
    mu_b = optimal_mu_b(stats, r_b, con.delta)
    th = Thresholds(mu_b=mu_b, mu_e=math.inf)
    report = throughput_fixed(stats, Scenario.S3, th, rates, cfg.theta)
    co_binding = mu_b > rates.bob_snr_floor * (1.0 + 1e-12)
    return DesignSolution(
        feasible=True,
        reason="optimal rate pair and threshold found",
        thresholds=th,
        rates=rates,
        report=report,
        binding=BindingConstraints(secrecy=True, reliability=co_binding),
    )


def _adaptive_rate_at_node(
    stats: EstimationStats, g: float, k: float, lift: float
) -> float:
    """Optimal codeword rate for one estimate value g (scalar reference).

    lift = 1 + mean_gb_tilde*ln(1/delta); the rate is confined to
    (k, log2(1 + g/lift)], where the upper end holds the per-block connection
    outage at exactly delta.
    """
    u = math.log2(1.0 + g / lift)
    if stats.beta_b == 0.0:
        return u  # no estimation error: rate rides the estimated capacity
    gbt = stats.mean_gb_tilde

    def value(r: float) -> float:
        if r <= k:
            return 0.0
        return (r - k) * (-math.expm1((1.0 - g / (2.0 ** r - 1.0)) / gbt))

    r_b, _ = numerics.maximize_scalar(value, k, u, _RATE_TOL)
    return r_b


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def _adaptive_rates(
    stats: EstimationStats, nodes: np.ndarray, k: float, lift: float, n_seeds: int = 64
) -> np.ndarray:
    """Optimal codeword rate at every estimate node, all nodes at once.

    Same coarse-scan-plus-golden-refinement contract as the scalar search
    (the returned value never falls below the best coarse seed), vectorized
    across the node grid.  Within each bracket the exponent of the outage
    factor is <= 0, so the objective stays finite.
    """
    u = np.log2(1.0 + nodes / lift)
    if stats.beta_b == 0.0:
        return u
    gbt = stats.mean_gb_tilde
    g = nodes[:, None]

    def value(r: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            reliable = -np.expm1((1.0 - g / (np.exp2(r) - 1.0)) / gbt)
        return np.where(r > k, (r - k) * reliable, 0.0)

    seeds = k + (u - k)[:, None] * np.linspace(0.0, 1.0, n_seeds)[None, :]
    vals = value(seeds)
    best = np.argmax(vals, axis=1)
    rows = np.arange(len(nodes))
    best_r = seeds[rows, best]
    best_v = vals[rows, best]

    a = seeds[rows, np.maximum(best - 1, 0)][:, None]
    b = seeds[rows, np.minimum(best + 1, n_seeds - 1)][:, None]
    for _ in range(64):
        h = b - a
        c = a + _INVPHI2 * h
        d = a + _INVPHI * h
        keep_low = value(c) >= value(d)
        a, b = np.where(keep_low, a, c), np.where(keep_low, d, b)
    mid = ((a + b) / 2.0)[:, 0]
    mid_v = value(mid[:, None])[:, 0]
    return np.where(mid_v >= best_v, mid, best_r)


def _gauss_legendre_panels(nodes: np.ndarray, order: int = 8):
    """Gauss-Legendre abscissas/weights on every consecutive node panel."""
    gx, gw = np.polynomial.legendre.leggauss(order)
    a = nodes[:-1, None]
    b = nodes[1:, None]
    half = (b - a) / 2.0
    pts = (a + b) / 2.0 + half * gx[None, :]
    wts = half * gw[None, :]
    return pts.ravel(), wts.ravel()


def solve_adaptive(
    cfg: SystemConfig,
    con: OutageConstraints,
    n_nodes: int = _ADAPTIVE_NODES,
    span: float = _ADAPTIVE_SPAN,
) -> AdaptivePolicy:
    """Joint design with rates re-chosen per block from Bob's estimate.

    k and the secrecy outage work as in the non-adaptive scheme (p_so = eps);
    the per-block reliability bound fixes mu_b in closed form, and the
    codeword rate at each estimate-grid node maximizes the conditional
    throughput.  The predicted throughput integrates the node policy against
    the exponential estimate density, truncating ~1e-8 tail mass.
    """
    if not 0.0 < con.eps <= 1.0:
        raise ValueError("adaptive design needs eps in (0, 1]")
    stats = snr_stats(cfg)
    lift = 1.0 + stats.mean_gb_tilde * math.log(1.0 / con.delta)
    k = math.log2(1.0 + stats.mean_ge * math.log(1.0 / con.eps))
    mu_b = lift * stats.mean_ge * math.log(1.0 / con.eps)

    gbh = stats.mean_gb_hat
    offsets = np.geomspace(gbh * 1e-8, gbh * span, n_nodes)
    nodes = mu_b + offsets
    rb = _adaptive_rates(stats, nodes, k, lift)

    pts, wts = _gauss_legendre_panels(nodes)
    rb_pts = np.interp(pts, nodes, rb)
    if stats.beta_b == 0.0:
        reliable = 1.0
    else:
        reliable = -np.expm1((1.0 - pts / (np.exp2(rb_pts) - 1.0)) / stats.mean_gb_tilde)
    density = np.exp(-pts / gbh) / gbh
    eta = float(np.sum(wts * (rb_pts - k) * reliable * density)) / (1.0 + cfg.theta)

    return AdaptivePolicy(mu_b=mu_b, k=k, nodes=nodes, rb=rb, eta=eta)


def adaptive_performance(
    policy: AdaptivePolicy, stats: EstimationStats, theta: float = 0.0
) -> PerformanceReport:
    """Closed-form performance of an adaptive policy: transmission
    probability, estimate-averaged connection outage, the constant secrecy
    outage exp(-(2^k - 1)/p_e), and the predicted throughput."""
    p_tx = math.exp(-policy.mu_b / stats.mean_gb_hat) if policy.mu_b > 0 else 1.0
    pts, wts = _gauss_legendre_panels(policy.nodes)
    rb_pts = np.interp(pts, policy.nodes, policy.rb)
    if stats.beta_b == 0.0:
        co = np.zeros_like(pts)
    else:
        co = np.exp((1.0 - pts / (np.exp2(rb_pts) - 1.0)) / stats.mean_gb_tilde)
    density = np.exp(-pts / stats.mean_gb_hat) / stats.mean_gb_hat
    p_co = float(np.sum(wts * co * density)) / p_tx if p_tx > 0 else float("nan")
    p_so = math.exp(-(2.0 ** policy.k - 1.0) / stats.mean_ge)
    return PerformanceReport(p_tx=p_tx, p_co=p_co, p_so=p_so, eta=policy.eta)


def _eta_of(mode: DesignMode, cfg: SystemConfig, rates: Optional[RatePair], con: OutageConstraints) -> float:
    """Throughput of the mode's solution; infeasible points count as zero."""
    if mode is Scenario.S1:
        sol = solve_s1(cfg, rates, con)
    elif mode is Scenario.S2:
        sol = solve_s2(cfg, rates, con)
    elif mode is Scenario.S3:
        sol = solve_s3(cfg, rates, con)
    elif mode == NONADAPTIVE:
        sol = solve_nonadaptive(cfg, con)
    elif mode == ADAPTIVE:
        return solve_adaptive(cfg, con).eta
    else:
        raise ValueError(f"unknown design mode {mode!r}")
    return sol.report.eta if sol.feasible else 0.0


def optimize_pilot_power(
    mode: DesignMode,
    cfg: SystemConfig,
    con: OutageConstraints,
    rates: Optional[RatePair] = None,
    alpha_range: tuple[float, float] = (1e-2, 1e3),
    n_seeds: int = 64,
) -> tuple[float, float]:
    """Pilot power maximizing the designed throughput.

    Re-solves the selected design at each candidate alpha (the estimation
    error variances follow alpha) over a log grid, then refines around the
    best seed.  No unimodality is assumed.  Returns (alpha_star, eta_star);
    eta_star = 0 means no alpha in the range admits the constraints.
    """
    lo, hi = alpha_range
    if not 0.0 < lo < hi:
        raise ValueError(f"alpha_range must be positive and increasing, got {alpha_range}")

    def eta_of_log(u: float) -> float:
        return _eta_of(mode, replace(cfg, alpha=math.exp(u)), rates, con)

    u_star, eta_star = numerics.maximize_scalar(
        eta_of_log, math.log(lo), math.log(hi), n_seeds=n_seeds
    )
    return math.exp(u_star), eta_star
