import math

import numpy as np
import pytest
from scipy import stats as sps

from secure_onoff import (
    RatePair,
    Scenario,
    SystemConfig,
    actual_snr,
    estimation_error_variance,
    sample_block,
    sample_blocks,
    snr_stats,
)


class TestErrorVariance:
    def test_direct_substitution(self):
        assert estimation_error_variance(10.0, 5.0, 1) == pytest.approx(1.0 / 51.0, rel=1e-15)

    def test_vanishes_with_pilot_power(self):
        assert estimation_error_variance(1.0, 1e12, 1) == pytest.approx(1e-12, rel=1e-6)
        assert estimation_error_variance(1.0, math.inf, 1) == 0.0

    def test_half(self):
        assert estimation_error_variance(1.0, 1.0, 1) == 0.5

    def test_longer_pilots(self):
        assert estimation_error_variance(10.0, 5.0, 2) == pytest.approx(1.0 / 101.0, rel=1e-15)

    @pytest.mark.parametrize("p,alpha,tt", [(0.0, 1.0, 1), (1.0, 0.0, 1), (1.0, 1.0, 0)])
    def test_domain(self, p, alpha, tt):
        with pytest.raises(ValueError):
            estimation_error_variance(p, alpha, tt)


class TestSnrStats:
    def test_reference_point(self, ref_cfg):
        st = snr_stats(ref_cfg)
        assert st.beta_b == pytest.approx(1.0 / 51.0, rel=1e-15)
        assert st.beta_e == pytest.approx(1.0 / 6.0, rel=1e-15)
        assert st.mean_gb_hat == pytest.approx(500.0 / 51.0, rel=1e-14)
        assert st.mean_ge_hat == pytest.approx(5.0 / 6.0, rel=1e-14)
        assert st.mean_ge == 1.0

    def test_orthogonality_exact(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            cfg = SystemConfig(
                p_b=float(rng.uniform(0.1, 200.0)),
                p_e=float(rng.uniform(0.1, 50.0)),
                alpha=float(rng.uniform(0.01, 100.0)),
            )
            st = snr_stats(cfg)
            assert st.mean_gb_hat + st.mean_gb_tilde == cfg.p_b
            assert st.mean_ge_hat + st.mean_ge_tilde == cfg.p_e

    def test_perfect_estimation_limit(self):
        st = snr_stats(SystemConfig(p_b=10.0, p_e=1.0, alpha=math.inf))
        assert st.beta_b == 0.0 and st.beta_e == 0.0
        assert st.mean_gb_hat == 10.0 and st.mean_ge_hat == 1.0

    def test_hand_evaluated_point(self):
        p_b = 10.0 ** 1.5
        st = snr_stats(SystemConfig(p_b=p_b, p_e=1.0, alpha=0.87))
        assert st.beta_b == pytest.approx(1.0 / (1.0 + 0.87 * p_b), rel=1e-15)


class TestActualSnr:
    def test_zero_error(self):
        assert actual_snr(5.0, 0.0) == 5.0

    def test_division(self):
        assert actual_snr(5.0, 4.0) == 1.0

    def test_zero_estimate(self):
        for e in (0.0, 0.5, 100.0):
            assert actual_snr(0.0, e) == 0.0

    def test_never_exceeds_estimate(self):
        rng = np.random.default_rng(1)
        g = rng.exponential(5.0, 1000)
        e = rng.exponential(2.0, 1000)
        assert np.all(g / (e + 1.0) <= g)

    def test_domain(self):
        with pytest.raises(ValueError):
            actual_snr(-1.0, 0.0)


class TestSampling:
    def test_deterministic_given_seed(self, ref_cfg):
        d1 = sample_block(ref_cfg, Scenario.S2, np.random.default_rng(99))
        d2 = sample_block(ref_cfg, Scenario.S2, np.random.default_rng(99))
        assert d1 == d2

    def test_component_means(self, ref_cfg, ref_stats):
        n = 1_000_000
        batch = sample_blocks(ref_stats, Scenario.S1, np.random.default_rng(12), n)
        for arr, mean in [
            (batch.gb_hat, ref_stats.mean_gb_hat),
            (batch.gb_tilde, ref_stats.mean_gb_tilde),
            (batch.ge_hat, ref_stats.mean_ge_hat),
            (batch.ge_tilde, ref_stats.mean_ge_tilde),
        ]:
            se = mean / math.sqrt(n)  # exponential: std = mean
            assert abs(float(np.mean(arr)) - mean) <= 3.0 * se

    def test_s2_estimate_mean(self, ref_stats):
        n = 1_000_000
        batch = sample_blocks(ref_stats, Scenario.S2, np.random.default_rng(13), n)
        se = ref_stats.mean_ge_hat / math.sqrt(n)
        assert abs(float(np.mean(batch.ge_hat)) - ref_stats.mean_ge_hat) <= 3.0 * se

    def test_s2_marginal_is_exponential(self, ref_stats):
        # Unconditionally, Eve's true SNR keeps the full-average exponential law.
        n = 1_000_000
        batch = sample_blocks(ref_stats, Scenario.S2, np.random.default_rng(21), n)
        ks = sps.kstest(batch.ge, sps.expon(scale=ref_stats.mean_ge).cdf)
        assert ks.statistic < 0.002

    def test_s2_conditional_exceedance_matches_marcum(self, ref_cfg, ref_stats):
        # Pr(ge > 2^(rb-rs) - 1 | ge_hat in a band) against the noncentral
        # chi-square exceedance averaged over the band with the exponential
        # estimate weight (pointwise prediction would carry curvature bias).
        rates = RatePair(2.0, 1.0)
        t = rates.eve_snr_ceiling
        s = ref_stats.mean_ge_tilde
        geh = ref_stats.mean_ge_hat
        n = 1_000_000
        batch = sample_blocks(ref_stats, Scenario.S2, np.random.default_rng(35), n)
        for g_lo, g_hi in [(0.2, 0.3), (0.8, 1.0), (1.5, 2.0)]:
            sel = (batch.ge_hat >= g_lo) & (batch.ge_hat < g_hi)
            m = int(sel.sum())
            assert m > 1000
            p_hat = float(np.mean(batch.ge[sel] > t))
            grid = np.linspace(g_lo, g_hi, 2001)
            weight = np.exp(-grid / geh)
            exceed = sps.ncx2.sf(2.0 * t / s, 2, 2.0 * grid / s)
            pred = float(np.trapezoid(exceed * weight, grid) / np.trapezoid(weight, grid))
            se = math.sqrt(pred * (1.0 - pred) / m)
            assert abs(p_hat - pred) <= 3.0 * se

    def test_s3_has_no_estimate(self, ref_cfg):
        d = sample_block(ref_cfg, Scenario.S3, np.random.default_rng(0))
        assert d.ge_hat is None and d.ge_tilde is None and d.ge >= 0.0

    def test_actual_snr_consistency(self, ref_cfg):
        d = sample_block(ref_cfg, Scenario.S1, np.random.default_rng(3))
        assert d.gb == pytest.approx(d.gb_hat / (d.gb_tilde + 1.0), rel=1e-15)
        assert d.ge == pytest.approx(d.ge_hat / (d.ge_tilde + 1.0), rel=1e-15)


class TestSystemConfigValidation:
    @pytest.mark.parametrize(
        "kw",
        [
            {"p_b": 0.0, "p_e": 1.0, "alpha": 1.0},
            {"p_b": 1.0, "p_e": -1.0, "alpha": 1.0},
            {"p_b": 1.0, "p_e": 1.0, "alpha": 0.0},
            {"p_b": 1.0, "p_e": 1.0, "alpha": 1.0, "t_t": 0},
            {"p_b": 1.0, "p_e": 1.0, "alpha": 1.0, "theta": -0.1},
        ],
    )
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            SystemConfig(**kw)

    def test_alpha_inf_allowed(self):
        SystemConfig(p_b=1.0, p_e=1.0, alpha=math.inf)
