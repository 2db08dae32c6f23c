"""Physical setup and estimation statistics.

A transmitter serves an intended receiver (Bob) in the presence of an
eavesdropper (Eve) over independent Rayleigh block-fading channels.  Both
receivers estimate their channels from pilots with an MMSE estimator; the
estimate and the estimation error are independent zero-mean complex Gaussians,
so every squared-magnitude SNR component is exponential.  The error variance
after pilot transmission is

    beta = 1 / (1 + alpha * P * T_t),

with alpha the pilot-to-data power ratio, P the average SNR and T_t the pilot
length.  Detection with an imperfect estimate degrades the usable SNR to
g_hat / (g_tilde + 1).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

__all__ = [
    "Scenario",
    "SystemConfig",
    "EstimationStats",
    "ChannelDraw",
    "BlockBatch",
    "estimation_error_variance",
    "snr_stats",
    "actual_snr",
    "sample_block",
    "sample_blocks",
]


class Scenario(Enum):
    """Transmitter knowledge about the eavesdropper's channel.

    S1: Eve feeds back her estimated SNR and detects with the imperfect estimate.
    S2: Eve feeds back her estimated SNR but knows her channel perfectly.
    S3: no feedback from Eve; she knows her channel perfectly (worst case).
    """

    S1 = "s1"
    S2 = "s2"
    S3 = "s3"


@dataclass(frozen=True)
class SystemConfig:
    """Physical setup, all SNRs in linear scale."""

    p_b: float              # average SNR at Bob
    p_e: float              # average SNR at Eve
    alpha: float            # normalized pilot power (math.inf = perfect estimation)
    t_t: int = 1            # pilot length
    theta: float = 0.0      # pilot/feedback overhead ratio; throughput scales by 1/(1+theta)

    def __post_init__(self):
        if not (self.p_b > 0 and math.isfinite(self.p_b)):
            raise ValueError(f"p_b must be positive and finite, got {self.p_b}")
        if not (self.p_e > 0 and math.isfinite(self.p_e)):
            raise ValueError(f"p_e must be positive and finite, got {self.p_e}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (isinstance(self.t_t, int) and self.t_t >= 1):
            raise ValueError(f"t_t must be an integer >= 1, got {self.t_t}")
        if not (self.theta >= 0 and math.isfinite(self.theta)):
            raise ValueError(f"theta must be >= 0, got {self.theta}")


@dataclass(frozen=True)
class EstimationStats:
    """Estimation-error variances and the exponential SNR-component means.

    mean_gb_hat + mean_gb_tilde = p_b holds exactly (orthogonality), and
    mean_ge is Eve's full average SNR (worst-case detection).
    """

    beta_b: float
    beta_e: float
    mean_gb_hat: float
    mean_gb_tilde: float
    mean_ge_hat: float
    mean_ge_tilde: float
    mean_ge: float

    def __post_init__(self):
        for name in ("beta_b", "beta_e"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("mean_gb_hat", "mean_gb_tilde", "mean_ge_hat", "mean_ge_tilde", "mean_ge"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def p_b(self) -> float:
        return self.mean_gb_hat + self.mean_gb_tilde

    @property
    def p_e(self) -> float:
        return self.mean_ge


@dataclass(frozen=True)
class ChannelDraw:
    """One block's SNR components.  Eve's estimate/error components are None
    where the scenario does not define them."""

    gb_hat: float
    gb_tilde: float
    gb: float
    ge_hat: Optional[float]
    ge_tilde: Optional[float]
    ge: float


@dataclass(frozen=True)
class BlockBatch:
    """Vectorized draws for n independent blocks (same field meaning as
    ChannelDraw; ge_hat/ge_tilde are None where undefined)."""

    gb_hat: np.ndarray
    gb_tilde: np.ndarray
    gb: np.ndarray
    ge_hat: Optional[np.ndarray]
    ge_tilde: Optional[np.ndarray]
    ge: np.ndarray


def estimation_error_variance(p: float, alpha: float, t_t: int = 1) -> float:
    """MMSE channel-estimation error variance 1/(1 + alpha*P*T_t)."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if t_t < 1:
        raise ValueError(f"t_t must be >= 1, got {t_t}")
    if math.isinf(alpha):
        return 0.0
    return 1.0 / (1.0 + alpha * p * t_t)


def _orthogonal_split(p: float, beta: float) -> tuple[float, float]:
    """(p*(1-beta), p*beta) with the sum exactly p.

    The larger half stays >= p/2, so the final complement subtraction is
    exact (Sterbenz) and the two floats add back to p without rounding.
    """
    if beta <= 0.5:
        hat = p - p * beta
        return hat, p - hat
    tilde = p - p * (1.0 - beta)
    return p - tilde, tilde


def snr_stats(cfg: SystemConfig) -> EstimationStats:
    """Derive the error variances and exponential means from a configuration."""
    beta_b = estimation_error_variance(cfg.p_b, cfg.alpha, cfg.t_t)
    beta_e = estimation_error_variance(cfg.p_e, cfg.alpha, cfg.t_t)
    mean_gb_hat, mean_gb_tilde = _orthogonal_split(cfg.p_b, beta_b)
    mean_ge_hat, mean_ge_tilde = _orthogonal_split(cfg.p_e, beta_e)
    return EstimationStats(
        beta_b=beta_b,
        beta_e=beta_e,
        mean_gb_hat=mean_gb_hat,
        mean_gb_tilde=mean_gb_tilde,
        mean_ge_hat=mean_ge_hat,
        mean_ge_tilde=mean_ge_tilde,
        mean_ge=cfg.p_e,
    )


def actual_snr(g_hat: float, g_tilde: float) -> float:
    """Usable detection SNR g_hat/(g_tilde + 1); never exceeds g_hat."""
    if not (g_hat >= 0 and g_tilde >= 0 and math.isfinite(g_hat) and math.isfinite(g_tilde)):
        raise ValueError(f"SNR components must be finite and >= 0, got {g_hat}, {g_tilde}")
    return g_hat / (g_tilde + 1.0)


def sample_blocks(stats: EstimationStats, sc: Scenario, rng: np.random.Generator, n: int) -> BlockBatch:
    """Draw n independent fading blocks from a caller-owned random stream.

    Bob's components are exponential with the stats means in every scenario.
    In S1 Eve mirrors Bob (imperfect detection).  In S2 Eve's channel is
    realized as estimate + error with complex Gaussian parts of variances
    1-beta_e and beta_e, so that marginally ge ~ Exponential(p_e) while,
    conditioned on ge_hat, the exceedance law is noncentral chi-square.
    In S3 only Eve's full-CSI SNR exists.
    """
    gb_hat = rng.exponential(stats.mean_gb_hat, n)
    gb_tilde = rng.exponential(stats.mean_gb_tilde, n) if stats.beta_b > 0 else np.zeros(n)
    gb = gb_hat / (gb_tilde + 1.0)

    if sc is Scenario.S1:
        ge_hat = rng.exponential(stats.mean_ge_hat, n)
        ge_tilde = rng.exponential(stats.mean_ge_tilde, n) if stats.beta_e > 0 else np.zeros(n)
        ge = ge_hat / (ge_tilde + 1.0)
        return BlockBatch(gb_hat, gb_tilde, gb, ge_hat, ge_tilde, ge)

    if sc is Scenario.S2:
        z = rng.standard_normal((4, n))
        s_hat = math.sqrt((1.0 - stats.beta_e) / 2.0)
        s_til = math.sqrt(stats.beta_e / 2.0)
        re_hat, im_hat = s_hat * z[0], s_hat * z[1]
        re, im = re_hat + s_til * z[2], im_hat + s_til * z[3]
        ge_hat = stats.mean_ge * (re_hat**2 + im_hat**2)
        ge = stats.mean_ge * (re**2 + im**2)
        return BlockBatch(gb_hat, gb_tilde, gb, ge_hat, None, ge)

    if sc is Scenario.S3:
        ge = rng.exponential(stats.mean_ge, n)
        return BlockBatch(gb_hat, gb_tilde, gb, None, None, ge)

    raise ValueError(f"unknown scenario {sc!r}")


def sample_block(cfg: SystemConfig, sc: Scenario, rng: np.random.Generator) -> ChannelDraw:
    """Draw a single fading block (deterministic given the stream state)."""
    batch = sample_blocks(snr_stats(cfg), sc, rng, 1)
    pick = lambda arr: float(arr[0]) if arr is not None else None
    return ChannelDraw(
        gb_hat=float(batch.gb_hat[0]),
        gb_tilde=float(batch.gb_tilde[0]),
        gb=float(batch.gb[0]),
        ge_hat=pick(batch.ge_hat),
        ge_tilde=pick(batch.ge_tilde),
        ge=float(batch.ge[0]),
    )
