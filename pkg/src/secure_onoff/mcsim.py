"""Independent Monte-Carlo oracle.

Simulates block fading, the on-off decisions and the outage events directly
from their definitions (no closed form enters), producing empirical
probabilities and throughput with standard errors.  Blocks are processed in
fixed-size batches, each fed by a counter-based Philox stream keyed on
(seed, batch start index), so serial runs and any map-reduce schedule over
the batches are bit-identical.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .channel import Scenario, SystemConfig, sample_blocks, snr_stats
from .design import AdaptivePolicy
from .outage import RatePair, Thresholds

__all__ = ["McEstimate", "ConditionalLawReport", "estimate_performance", "validate_conditional_law_s2"]

BATCH_BLOCKS = 1 << 16

FixedPolicy = tuple[Thresholds, RatePair]


@dataclass(frozen=True)
class McEstimate:
    n_blocks: int
    n_tx: int
    p_tx: float
    p_co: float
    p_so: float
    eta: float
    se_p_tx: float
    se_p_co: float
    se_p_so: float
    se_eta: float
    degenerate: bool  # no transmitted blocks: conditional estimates undefined


@dataclass(frozen=True)
class ConditionalLawReport:
    """Per-bin comparison of the empirical exceedance of Eve's true SNR,
    conditioned on her estimate, against the noncentral chi-square law."""

    bin_edges: np.ndarray
    bin_centers: np.ndarray  # per-bin mean of the conditioning estimate
    n_per_bin: np.ndarray
    empirical: np.ndarray
    predicted: np.ndarray
    se: np.ndarray
    z: np.ndarray
    max_abs_z: float
    empty_bins: list


def _batch_rng(seed: int, start: int) -> np.random.Generator:
    key = np.array([seed, start], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _binned_exceedance_prediction(
    edges: np.ndarray, t: float, geh: float, s: float, p_e: float
) -> np.ndarray:
    """Conditional mean of the Marcum exceedance within each estimate bin.

    Bounded bins use Gauss-Legendre quadrature against the exponential
    estimate weight; the unbounded tail bin follows from the exact marginal
    identity  E[Q1] = Pr(true SNR > t) = exp(-t/p_e)  by complementing the
    bounded contributions.
    """
    from .specfun import marcum_q1

    n_bins = len(edges) - 1
    b = math.sqrt(2.0 * t / s)
    gx, gw = np.polynomial.legendre.leggauss(24)
    predicted = np.empty(n_bins)
    masses = np.empty(n_bins)
    weighted = np.empty(n_bins)
    for j in range(n_bins - 1):
        lo, hi = edges[j], edges[j + 1]
        pts = (lo + hi) / 2.0 + (hi - lo) / 2.0 * gx
        wts = (hi - lo) / 2.0 * gw
        dens = np.exp(-pts / geh) / geh
        q = np.array([marcum_q1(math.sqrt(2.0 * g / s), b) for g in pts])
        masses[j] = math.exp(-lo / geh) - math.exp(-hi / geh)
        weighted[j] = float(np.sum(wts * dens * q))
        predicted[j] = weighted[j] / masses[j]
    masses[-1] = math.exp(-edges[-2] / geh)
    weighted[-1] = math.exp(-t / p_e) - float(np.sum(weighted[:-1]))
    predicted[-1] = min(max(weighted[-1] / masses[-1], 0.0), 1.0)
    return predicted


def _binomial_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / n) if n > 0 else float("nan")


def estimate_performance(
    cfg: SystemConfig,
    sc: Scenario,
    policy: Union[FixedPolicy, AdaptivePolicy],
    n_blocks: int,
    seed: int,
) -> McEstimate:
    """Empirical p_tx, p_co, p_so and throughput for a transmission policy.

    Per block: transmit iff Bob's estimate clears mu_b and (with Eve feedback)
    Eve's estimate stays below mu_e; a transmitted block is in connection
    outage when Bob's usable SNR cannot carry the codeword rate, and in
    secrecy outage when Eve's usable SNR pushes her capacity past the rate
    redundancy.  Throughput counts the confidential bits of the transmitted,
    non-outage blocks over all blocks, discounted by 1/(1+theta).
    """
    if n_blocks < 10_000:
        raise ValueError(f"need n_blocks >= 10000 for meaningful estimates, got {n_blocks}")

    adaptive = isinstance(policy, AdaptivePolicy)
    if adaptive:
        mu_b, mu_e = policy.mu_b, math.inf
        eve_floor = 2.0 ** policy.k - 1.0
    else:
        th, rates = policy
        mu_b, mu_e = th.mu_b, th.mu_e
        bob_floor = rates.bob_snr_floor
        eve_floor = rates.eve_snr_ceiling
        r_s = rates.r_s

    stats = snr_stats(cfg)
    use_eve_gate = sc is not Scenario.S3 and not math.isinf(mu_e)

    n_tx = 0
    n_co = 0
    n_so = 0
    bits_sum = 0.0
    bits_sq_sum = 0.0

    for start in range(0, n_blocks, BATCH_BLOCKS):
        m = min(BATCH_BLOCKS, n_blocks - start)
        batch = sample_blocks(stats, sc, _batch_rng(seed, start), m)

        tx = batch.gb_hat > mu_b
        if use_eve_gate:
            tx &= batch.ge_hat < mu_e

        gb_tx = batch.gb[tx]
        ge_tx = batch.ge[tx]
        if adaptive:
            rb_tx, rs_tx = policy.rate_at(batch.gb_hat[tx])
            co = gb_tx < np.exp2(rb_tx) - 1.0
            bits = np.where(co, 0.0, rs_tx)
        else:
            co = gb_tx < bob_floor
            bits = np.where(co, 0.0, r_s)
        so = ge_tx > eve_floor

        n_tx += int(tx.sum())
        n_co += int(co.sum())
        n_so += int(so.sum())
        bits_sum += float(bits.sum())
        bits_sq_sum += float((bits * bits).sum())

    scale = 1.0 / (1.0 + cfg.theta)
    p_tx = n_tx / n_blocks
    eta_raw = bits_sum / n_blocks
    var_bits = max(bits_sq_sum / n_blocks - eta_raw * eta_raw, 0.0)
    degenerate = n_tx == 0
    return McEstimate(
        n_blocks=n_blocks,
        n_tx=n_tx,
        p_tx=p_tx,
        p_co=n_co / n_tx if not degenerate else float("nan"),
        p_so=n_so / n_tx if not degenerate else float("nan"),
        eta=eta_raw * scale,
        se_p_tx=_binomial_se(p_tx, n_blocks),
        se_p_co=_binomial_se(n_co / n_tx, n_tx) if not degenerate else float("nan"),
        se_p_so=_binomial_se(n_so / n_tx, n_tx) if not degenerate else float("nan"),
        se_eta=math.sqrt(var_bits / n_blocks) * scale,
        degenerate=degenerate,
    )


def validate_conditional_law_s2(
    cfg: SystemConfig,
    rates: RatePair,
    n_samples: int,
    n_bins: int,
    seed: int,
) -> ConditionalLawReport:
    """Statistical check of the conditional exceedance law in the
    perfect-Eve-CSI scenario.

    Draws are binned by Eve's estimated SNR into equal-probability bins; in
    each bin the empirical frequency of the true SNR exceeding the redundancy
    floor is compared to the Marcum-Q exceedance averaged over the bin with
    the exponential estimate weight (a point prediction at the bin center
    would carry curvature bias well above the Monte-Carlo noise in the
    unbounded tail bin).  z-scores use the predicted (null) binomial
    standard error.
    """
    if n_samples < 1_000_000:
        raise ValueError(f"need n_samples >= 1e6 for stable bin statistics, got {n_samples}")
    if n_bins < 2:
        raise ValueError("need at least 2 bins")

    stats = snr_stats(cfg)
    if stats.beta_e == 0.0:
        raise ValueError("conditional law is a degenerate step when beta_e = 0")
    t = rates.eve_snr_ceiling
    geh = stats.mean_ge_hat
    s = stats.mean_ge_tilde

    # Equal-probability edges of the exponential estimate distribution.
    qs = np.arange(1, n_bins) / n_bins
    inner_edges = -geh * np.log1p(-qs)
    edges = np.concatenate(([0.0], inner_edges, [np.inf]))

    counts = np.zeros(n_bins, dtype=np.int64)
    exceed = np.zeros(n_bins, dtype=np.int64)
    gh_sum = np.zeros(n_bins)

    for start in range(0, n_samples, BATCH_BLOCKS):
        m = min(BATCH_BLOCKS, n_samples - start)
        batch = sample_blocks(stats, Scenario.S2, _batch_rng(seed, start), m)
        idx = np.clip(np.searchsorted(edges, batch.ge_hat, side="right") - 1, 0, n_bins - 1)
        counts += np.bincount(idx, minlength=n_bins)
        exceed += np.bincount(idx, weights=(batch.ge > t).astype(np.int64), minlength=n_bins).astype(np.int64)
        gh_sum += np.bincount(idx, weights=batch.ge_hat, minlength=n_bins)

    empty = [int(i) for i in np.flatnonzero(counts == 0)]
    with np.errstate(invalid="ignore", divide="ignore"):
        centers = gh_sum / counts
        empirical = exceed / counts

    predicted = _binned_exceedance_prediction(edges, t, geh, s, stats.mean_ge)
    with np.errstate(invalid="ignore", divide="ignore"):
        se = np.sqrt(predicted * (1.0 - predicted) / counts)
        z = (empirical - predicted) / se
    finite = np.isfinite(z)
    max_abs_z = float(np.max(np.abs(z[finite]))) if finite.any() else float("nan")
    return ConditionalLawReport(
        bin_edges=edges,
        bin_centers=centers,
        n_per_bin=counts,
        empirical=empirical,
        predicted=predicted,
        se=se,
        z=z,
        max_abs_z=max_abs_z,
        empty_bins=empty,
    )
