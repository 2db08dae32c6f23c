"""Closed-form transmission probability, connection/secrecy outage and
throughput for the on-off schemes.

Conventions used throughout:

* Transmission happens when Bob's estimated SNR exceeds mu_b and, where Eve
  feedback exists, Eve's estimated SNR is below mu_e.  mu_e = math.inf is the
  explicit "no Eve threshold" sentinel and every formula special-cases it
  analytically.
* Both outage probabilities are conditioned on transmission.
* Connection outage: Bob's capacity log2(1 + gb) falls below the codeword
  rate R_b.  Secrecy outage: Eve's capacity exceeds the rate redundancy
  R_b - R_s.
* Throughput is (1/(1+theta)) * p_tx * (1 - p_co) * R_s.
"""

import math
from dataclasses import dataclass

from . import numerics
from .channel import EstimationStats, Scenario
from .specfun import marcum_q1

__all__ = [
    "RatePair",
    "Thresholds",
    "PerformanceReport",
    "p_tx_fixed",
    "p_co_fixed",
    "p_so_s1",
    "p_so_s2",
    "p_so_s3",
    "p_co_adaptive",
    "throughput_fixed",
    "eta_slope_at_zero_mu_e",
]

# Quadrature tolerance for the S2 secrecy-outage integral: the root solves
# sitting on top of it need ~1e-12 absolute accuracy in the probability.
_QUAD_TOL = numerics.ToleranceSpec(abs_tol=1e-13, rel_tol=1e-11, max_iter=200)

# Relative slack when checking threshold preconditions, so that values derived
# from the closed-form optimality branches pass despite rounding.
_PRE_SLACK = 1e-12


@dataclass(frozen=True)
class RatePair:
    """Wiretap-code rates: codeword rate r_b and confidential rate r_s.

    r_b == r_s is admitted for the corner where the secrecy constraint is
    vacuous and no rate redundancy is needed.
    """

    r_b: float
    r_s: float

    def __post_init__(self):
        if not (self.r_b >= self.r_s > 0):
            raise ValueError(f"need r_b >= r_s > 0, got r_b={self.r_b}, r_s={self.r_s}")

    @property
    def bob_snr_floor(self) -> float:
        """Minimum SNR at which Bob can decode: 2^r_b - 1."""
        return 2.0 ** self.r_b - 1.0

    @property
    def eve_snr_ceiling(self) -> float:
        """SNR at which Eve's capacity reaches the redundancy: 2^(r_b-r_s) - 1."""
        return 2.0 ** (self.r_b - self.r_s) - 1.0


@dataclass(frozen=True)
class Thresholds:
    """On-off thresholds on the estimated SNRs; mu_e = inf disables Eve's."""

    mu_b: float
    mu_e: float

    def __post_init__(self):
        if not self.mu_b >= 0:
            raise ValueError(f"mu_b must be >= 0, got {self.mu_b}")
        if not self.mu_e > 0:
            raise ValueError(f"mu_e must be > 0 (math.inf allowed), got {self.mu_e}")


@dataclass(frozen=True)
class PerformanceReport:
    p_tx: float
    p_co: float
    p_so: float
    eta: float


def p_tx_fixed(stats: EstimationStats, th: Thresholds, sc: Scenario) -> float:
    """Probability that a block is transmitted."""
    base = math.exp(-th.mu_b / stats.mean_gb_hat) if th.mu_b > 0 else 1.0
    if sc is Scenario.S3 or math.isinf(th.mu_e):
        return base
    return base * (-math.expm1(-th.mu_e / stats.mean_ge_hat))


def p_co_fixed(stats: EstimationStats, r_b: float, mu_b: float) -> float:
    """Connection outage given transmission, for a fixed codeword rate.

    Requires mu_b >= 2^r_b - 1 (below the decodability floor the scheme would
    knowingly transmit undecodable blocks).
    """
    x = 2.0 ** r_b - 1.0
    if mu_b < x * (1.0 - _PRE_SLACK):
        raise ValueError(f"mu_b={mu_b} is below the decodability floor 2^r_b-1={x}")
    if stats.beta_b == 0.0:
        return 0.0
    coef = stats.beta_b * x / (1.0 + stats.beta_b * (x - 1.0))
    return coef * math.exp((1.0 - mu_b / x) / stats.mean_gb_tilde)


def p_so_s1(stats: EstimationStats, rates: RatePair, mu_e: float) -> float:
    """Secrecy outage given transmission when Eve detects with her estimate.

    Zero for mu_e at or below 2^(r_b-r_s)-1 (the fed-back estimate upper-bounds
    Eve's usable SNR, so capping it enforces perfect secrecy); above that the
    two-term exponential-mixture expression applies, converging for
    mu_e -> inf to the unconditional exceedance probability.
    """
    t = rates.eve_snr_ceiling
    if t == 0.0:
        return 1.0  # no rate redundancy: Eve's positive SNR always exceeds it
    c1 = (1.0 - stats.beta_e) / (1.0 + stats.beta_e * (t - 1.0))
    if math.isinf(mu_e):
        return c1 * math.exp(-t / stats.mean_ge_hat)
    if mu_e <= t:
        return 0.0
    geh = stats.mean_ge_hat
    den = -math.expm1(-mu_e / geh)
    if stats.beta_e == 0.0:
        return (math.exp(-t / geh) - math.exp(-mu_e / geh)) / den
    # Shared exponent of the boundary terms, grouped to stay finite as beta_e -> 0.
    expo = ((1.0 - mu_e / t) / stats.beta_e - mu_e / (1.0 - stats.beta_e)) / stats.mean_ge
    c2 = stats.beta_e * t / (1.0 + stats.beta_e * (t - 1.0))
    num = c1 * math.exp(-t / geh) - math.exp(-mu_e / geh) + c2 * math.exp(expo)
    return min(max(num / den, 0.0), 1.0)


def p_so_s2(stats: EstimationStats, rates: RatePair, mu_e: float) -> float:
    """Secrecy outage given transmission when Eve knows her channel but Alice
    only sees the fed-back estimate.

    Conditioned on the estimate, Eve's true SNR follows a noncentral
    chi-square law, so the outage is the Marcum-Q exceedance averaged over
    estimates below mu_e.  mu_e = inf reduces to the unconditional
    exponential exceedance; mu_e -> 0 converges to Q1(0, b) = the zero-estimate
    limit.
    """
    t = rates.eve_snr_ceiling
    if math.isinf(mu_e):
        return math.exp(-t / stats.mean_ge)
    if t == 0.0:
        return 1.0
    geh = stats.mean_ge_hat
    if stats.beta_e == 0.0:
        # Perfect estimate: the conditional exceedance is a step at t.
        if mu_e <= t:
            return 0.0
        den = -math.expm1(-mu_e / geh)
        return (math.exp(-t / geh) - math.exp(-mu_e / geh)) / den

    s = stats.mean_ge_tilde
    b = math.sqrt(2.0 * t / s)

    def integrand(g: float) -> float:
        return math.exp(-g / geh) * marcum_q1(math.sqrt(2.0 * g / s), b)

    den = geh * (-math.expm1(-mu_e / geh))
    if mu_e < 1e-6 * geh:
        # Near-degenerate interval: Simpson on the smooth integrand keeps the
        # 0/0-adjacent ratio accurate down to the mu_e -> 0 limit.
        num = mu_e / 6.0 * (integrand(0.0) + 4.0 * integrand(mu_e / 2.0) + integrand(mu_e))
    elif mu_e > t:
        # Split where the Marcum factor transitions; helps the subdivision.
        num = numerics.integrate(integrand, 0.0, t, _QUAD_TOL) + numerics.integrate(
            integrand, t, mu_e, _QUAD_TOL
        )
    else:
        num = numerics.integrate(integrand, 0.0, mu_e, _QUAD_TOL)
    return min(num / den, 1.0)


def p_so_s3(stats: EstimationStats, rates: RatePair) -> float:
    """Secrecy outage without Eve feedback: the unconditional exceedance
    exp(-(2^(r_b-r_s)-1)/p_e), independent of any threshold."""
    return math.exp(-rates.eve_snr_ceiling / stats.mean_ge)


def p_co_adaptive(stats: EstimationStats, r_b: float, gb_hat: float) -> float:
    """Connection outage conditioned on Bob's estimate, for a per-block rate.

    Requires r_b <= log2(1 + gb_hat): the rate may not exceed the capacity the
    estimate suggests.
    """
    x = 2.0 ** r_b - 1.0
    if gb_hat < x * (1.0 - _PRE_SLACK):
        raise ValueError(f"r_b={r_b} exceeds the estimated capacity at gb_hat={gb_hat}")
    if stats.beta_b == 0.0:
        return 0.0
    return math.exp(-(gb_hat / x - 1.0) / stats.mean_gb_tilde)


def throughput_fixed(
    stats: EstimationStats,
    sc: Scenario,
    th: Thresholds,
    rates: RatePair,
    theta: float = 0.0,
) -> PerformanceReport:
    """Assemble p_tx, p_co, p_so and the overhead-discounted throughput."""
    p_tx = p_tx_fixed(stats, th, sc)
    p_co = p_co_fixed(stats, rates.r_b, th.mu_b)
    if sc is Scenario.S1:
        p_so = p_so_s1(stats, rates, th.mu_e)
    elif sc is Scenario.S2:
        p_so = p_so_s2(stats, rates, th.mu_e)
    else:
        p_so = p_so_s3(stats, rates)
    eta = p_tx * (1.0 - p_co) * rates.r_s / (1.0 + theta)
    return PerformanceReport(p_tx=p_tx, p_co=p_co, p_so=p_so, eta=eta)


def eta_slope_at_zero_mu_e(stats: EstimationStats, rates: RatePair, mu_b: float) -> float:
    """Initial slope of throughput in mu_e (Eve-feedback scenarios).

    eta(mu_e) = A*(1 - exp(-B*mu_e)) with A = exp(-mu_b/mean_gb_hat)*(1-p_co)*r_s
    and B = 1/mean_ge_hat, so the Taylor slope at zero is A*B.
    """
    p_co = p_co_fixed(stats, rates.r_b, mu_b)
    a = math.exp(-mu_b / stats.mean_gb_hat) * (1.0 - p_co) * rates.r_s
    return a / stats.mean_ge_hat
