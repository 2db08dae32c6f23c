import math

import numpy as np
import pytest

from secure_onoff import (
    NONADAPTIVE,
    OutageConstraints,
    RatePair,
    Scenario,
    SystemConfig,
    adaptive_performance,
    estimate_performance,
    feasibility,
    optimal_mu_b,
    optimize_pilot_power,
    p_co_fixed,
    p_so_s1,
    p_so_s2,
    rate_region_bound,
    snr_stats,
    solve_adaptive,
    solve_nonadaptive,
    solve_s1,
    solve_s2,
    solve_s3,
)


class TestOptimalMuB:
    def test_floor_branch(self, ref_stats):
        # log2(1 + 50*0.1/0.9) ~ 2.713 >= r_b = 2: the floor is optimal.
        assert optimal_mu_b(ref_stats, 2.0, 0.1) == 3.0

    def test_lifted_branch_pins_delta(self, ref_stats):
        mu_b = optimal_mu_b(ref_stats, 4.0, 0.02)
        assert mu_b > 15.0
        assert p_co_fixed(ref_stats, 4.0, mu_b) == pytest.approx(0.02, abs=1e-12)

    def test_loose_delta_gives_floor(self, ref_stats):
        assert optimal_mu_b(ref_stats, 5.0, 1.0) == 2.0 ** 5.0 - 1.0

    def test_perfect_estimation_gives_floor(self):
        st = snr_stats(SystemConfig(p_b=10.0, p_e=1.0, alpha=math.inf))
        assert optimal_mu_b(st, 6.0, 0.001) == 2.0 ** 6.0 - 1.0

    def test_branch_boundary_is_continuous(self, ref_stats):
        # At the branch-switch rate the two expressions agree.
        bb = ref_stats.beta_b
        delta = 0.1
        r_star = math.log2(1.0 + (1.0 - bb) * delta / (bb * (1.0 - delta)))
        below = optimal_mu_b(ref_stats, r_star - 1e-9, delta)
        above = optimal_mu_b(ref_stats, r_star + 1e-9, delta)
        assert above == pytest.approx(below, rel=1e-6)


class TestFeasibility:
    def test_s1_perfect_secrecy_feasible(self, ref_stats, ref_rates):
        rep = feasibility(Scenario.S1, ref_stats, OutageConstraints(0.0, 0.1), rates=ref_rates)
        assert rep.feasible and rep.eps_min == 0.0

    def test_s2_floor(self, ref_stats, ref_rates):
        floor = math.exp(-1.0 / ref_stats.mean_ge_tilde)
        rep = feasibility(Scenario.S2, ref_stats, OutageConstraints(floor / 2.0, 0.1), rates=ref_rates)
        assert not rep.feasible
        assert rep.eps_min == pytest.approx(floor, rel=1e-12)

    def test_s3_uncontrollable_floor(self, ref_stats, ref_rates):
        rep = feasibility(Scenario.S3, ref_stats, OutageConstraints(0.2, 0.1), rates=ref_rates)
        assert not rep.feasible
        assert rep.eps_min == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_joint_any_positive_eps(self, ref_stats):
        assert feasibility(NONADAPTIVE, ref_stats, OutageConstraints(1e-6, 0.1)).feasible
        assert not feasibility(NONADAPTIVE, ref_stats, OutageConstraints(0.0, 0.1)).feasible

    def test_pinned_threshold_frontier(self, ref_stats):
        # eps floor for a fixed Bob threshold: decreasing in delta, and equal
        # to exp(-mu_b/p_e) once the rate-region bound exceeds mu_b.
        mu_b = 9.0
        deltas = np.geomspace(1e-3, 0.999, 60)
        floors = []
        for d in deltas:
            rep = feasibility(NONADAPTIVE, ref_stats, OutageConstraints(0.5, float(d)), mu_b=mu_b)
            floors.append(rep.eps_min)
        assert all(b <= a + 1e-12 for a, b in zip(floors, floors[1:]))
        assert floors[-1] == pytest.approx(math.exp(-mu_b / ref_stats.mean_ge), rel=1e-9)
        # dense-grid oracle for the bound itself: h(x) root recovered by scan
        for d in (0.05, 0.3, 0.9):
            f4 = rate_region_bound(ref_stats, mu_b, d)
            gbt, bb = ref_stats.mean_gb_tilde, ref_stats.beta_b
            h = lambda x: x * (1.0 - gbt * math.log(d * (bb * x + 1.0 - bb) / (bb * x))) - mu_b
            assert h(f4) == pytest.approx(0.0, abs=1e-8)
            assert h(f4 * 0.99) < 0.0 < h(f4 * 1.01)


class TestSolveS1:
    def test_reference_solution_pins_eps(self, ref_cfg, ref_rates, ref_con, ref_stats):
        sol = solve_s1(ref_cfg, ref_rates, ref_con)
        assert sol.feasible
        assert sol.thresholds.mu_b == 3.0
        assert abs(p_so_s1(ref_stats, ref_rates, sol.thresholds.mu_e) - ref_con.eps) <= 1e-9
        assert sol.binding.secrecy and not sol.binding.reliability

    def test_loose_eps_drops_eve_threshold(self, ref_cfg, ref_rates, ref_stats):
        uncond = p_so_s1(ref_stats, ref_rates, math.inf)
        sol = solve_s1(ref_cfg, ref_rates, OutageConstraints(uncond + 0.01, 0.1))
        assert math.isinf(sol.thresholds.mu_e)
        assert sol.report.p_so == pytest.approx(uncond, rel=1e-12)

    def test_perfect_secrecy(self, ref_cfg, ref_rates):
        sol = solve_s1(ref_cfg, ref_rates, OutageConstraints(0.0, 0.1))
        assert sol.feasible
        assert sol.thresholds.mu_e == ref_rates.eve_snr_ceiling
        assert sol.report.p_so == 0.0
        assert sol.report.eta > 0.0

    def test_against_mc(self, ref_cfg, ref_rates, ref_con):
        sol = solve_s1(ref_cfg, ref_rates, ref_con)
        mc = estimate_performance(
            ref_cfg, Scenario.S1, (sol.thresholds, sol.rates), 1_000_000, seed=11
        )
        assert abs(mc.p_so - ref_con.eps) <= 3.0 * mc.se_p_so
        assert abs(mc.eta - sol.report.eta) <= 3.0 * mc.se_eta


class TestSolveS2:
    def test_reference_solution_pins_eps(self, ref_cfg, ref_rates, ref_con, ref_stats):
        sol = solve_s2(ref_cfg, ref_rates, ref_con)
        assert sol.feasible
        assert sol.thresholds.mu_b == 3.0
        assert abs(p_so_s2(ref_stats, ref_rates, sol.thresholds.mu_e) - ref_con.eps) <= 1e-9

    def test_loose_eps_matches_no_feedback_design(self, ref_cfg, ref_rates):
        con = OutageConstraints(0.4, 0.1)  # 0.4 >= e^-1
        s2 = solve_s2(ref_cfg, ref_rates, con)
        s3 = solve_s3(ref_cfg, ref_rates, con)
        assert math.isinf(s2.thresholds.mu_e)
        assert s2.report.eta == s3.report.eta
        assert s2.thresholds.mu_b == s3.thresholds.mu_b

    def test_tight_eps_small_threshold(self, ref_cfg, ref_rates, ref_stats):
        floor = math.exp(-1.0 / ref_stats.mean_ge_tilde)  # ~0.00248
        con = OutageConstraints(floor * 1.2, 0.1)
        sol = solve_s2(ref_cfg, ref_rates, con)
        assert sol.feasible
        assert sol.thresholds.mu_e < 0.05
        assert abs(p_so_s2(ref_stats, ref_rates, sol.thresholds.mu_e) - con.eps) <= 1e-9

    def test_infeasible_below_floor(self, ref_cfg, ref_rates, ref_stats):
        floor = math.exp(-1.0 / ref_stats.mean_ge_tilde)
        sol = solve_s2(ref_cfg, ref_rates, OutageConstraints(floor * 0.5, 0.1))
        assert not sol.feasible
        assert f"{floor:.6g}"[:6] in sol.reason

    def test_against_mc(self, ref_cfg, ref_rates, ref_con):
        sol = solve_s2(ref_cfg, ref_rates, ref_con)
        mc = estimate_performance(
            ref_cfg, Scenario.S2, (sol.thresholds, sol.rates), 1_000_000, seed=12
        )
        assert abs(mc.p_so - ref_con.eps) <= 3.0 * mc.se_p_so


class TestSolveS3:
    def test_step_throughput_in_eps(self, ref_cfg, ref_rates):
        # Within the feasible band the solution ignores eps entirely.
        etas = set()
        for eps in (0.37, 0.5, 0.8, 1.0):
            sol = solve_s3(ref_cfg, ref_rates, OutageConstraints(eps, 0.1))
            assert sol.feasible
            etas.add(sol.report.eta)
        assert len(etas) == 1

    def test_loose_delta_floor_threshold(self, ref_cfg, ref_rates):
        sol = solve_s3(ref_cfg, ref_rates, OutageConstraints(0.4, 1.0))
        assert sol.thresholds.mu_b == ref_rates.bob_snr_floor

    def test_against_mc(self, ref_cfg, ref_rates):
        sol = solve_s3(ref_cfg, ref_rates, OutageConstraints(0.4, 0.1))
        mc = estimate_performance(
            ref_cfg, Scenario.S3, (sol.thresholds, sol.rates), 1_000_000, seed=13
        )
        assert abs(mc.eta - sol.report.eta) <= 3.0 * mc.se_eta


class TestSolveNonadaptive:
    def test_secrecy_pinned_exactly(self, ref_cfg):
        for eps in (0.01, 0.05, 0.2, 0.7):
            sol = solve_nonadaptive(ref_cfg, OutageConstraints(eps, 0.1))
            assert sol.feasible
            assert abs(sol.report.p_so - eps) <= 1e-10

    def test_beats_exhaustive_grid(self, ref_cfg, ref_stats):
        from secure_onoff.design import _nonadaptive_objective, _rate_search_ceiling

        con = OutageConstraints(0.1, 0.1)
        sol = solve_nonadaptive(ref_cfg, con)
        k = math.log2(1.0 + ref_stats.mean_ge * math.log(1.0 / con.eps))
        hi = _rate_search_ceiling(ref_stats, k, con.delta)
        obj = _nonadaptive_objective(ref_stats, k, con.delta)
        grid_best = max(obj(float(r)) for r in np.linspace(k, hi, 10_000))
        assert sol.report.eta >= grid_best - 1e-7

    def test_dominates_feasible_fixed_pairs(self, ref_cfg):
        con = OutageConstraints(0.4, 0.1)
        eta_na = solve_nonadaptive(ref_cfg, con).report.eta
        for pair in (RatePair(2.0, 1.0), RatePair(3.0, 1.0), RatePair(2.5, 1.5), RatePair(4.0, 2.0)):
            fixed = solve_s3(ref_cfg, pair, con)
            assert fixed.feasible
            assert eta_na >= fixed.report.eta - 1e-9

    def test_eps_sweep_nondecreasing(self, ref_cfg):
        etas = [
            solve_nonadaptive(ref_cfg, OutageConstraints(float(e), 0.1)).report.eta
            for e in np.geomspace(0.01, 1.0, 25)
        ]
        assert all(b >= a - 1e-9 for a, b in zip(etas, etas[1:]))

    def test_eps_zero_infeasible(self, ref_cfg):
        assert not solve_nonadaptive(ref_cfg, OutageConstraints(0.0, 0.1)).feasible

    def test_against_mc(self, ref_cfg):
        sol = solve_nonadaptive(ref_cfg, OutageConstraints(0.1, 0.1))
        mc = estimate_performance(
            ref_cfg, Scenario.S3, (sol.thresholds, sol.rates), 1_000_000, seed=14
        )
        for got, ref, se in [
            (mc.p_tx, sol.report.p_tx, mc.se_p_tx),
            (mc.p_co, sol.report.p_co, mc.se_p_co),
            (mc.p_so, sol.report.p_so, mc.se_p_so),
            (mc.eta, sol.report.eta, mc.se_eta),
        ]:
            assert abs(got - ref) <= 3.0 * se


class TestSolveAdaptive:
    def test_closed_form_threshold(self):
        # p_b*beta_b = 1 at alpha = 0.9, p_b = 10; delta = eps = 1/e gives
        # mu_b = (1 + 1) * 1 * 1 = 2.
        cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=0.9)
        pol = solve_adaptive(cfg, OutageConstraints(math.exp(-1.0), math.exp(-1.0)))
        assert pol.mu_b == pytest.approx(2.0, rel=1e-12)

    def test_capacity_matching_limit(self):
        cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=1.1e8)  # beta_b ~ 9.1e-10
        pol = solve_adaptive(cfg, OutageConstraints(0.1, 0.1))
        cap = np.log2(1.0 + pol.nodes)
        assert float(np.max(np.abs(pol.rb - cap))) <= 1e-6

    def test_rate_bounds_hold_on_grid(self, ref_cfg, ref_stats):
        con = OutageConstraints(0.1, 0.1)
        pol = solve_adaptive(ref_cfg, con)
        lift = 1.0 + ref_stats.mean_gb_tilde * math.log(1.0 / con.delta)
        upper = np.log2(1.0 + pol.nodes / lift)
        assert np.all(pol.rb > pol.k)
        assert np.all(pol.rb <= upper + 1e-9)
        assert np.all(pol.rb - pol.k > 0.0)

    def test_dominates_nonadaptive(self, ref_cfg):
        for eps in (0.02, 0.1, 0.5):
            con = OutageConstraints(eps, 0.1)
            assert solve_adaptive(ref_cfg, con).eta >= solve_nonadaptive(
                ref_cfg, con
            ).report.eta - 1e-9

    def test_against_mc(self, ref_cfg, ref_stats):
        pol = solve_adaptive(ref_cfg, OutageConstraints(0.1, 0.1))
        perf = adaptive_performance(pol, ref_stats)
        mc = estimate_performance(ref_cfg, Scenario.S3, pol, 1_000_000, seed=15)
        assert abs(mc.eta - perf.eta) <= 3.0 * mc.se_eta
        assert abs(mc.p_so - perf.p_so) <= 3.0 * mc.se_p_so
        assert abs(mc.p_co - perf.p_co) <= 3.0 * mc.se_p_co


class TestStationarity:
    def test_floor_is_stationary_point(self, ref_stats, ref_rates):
        # One-sided second-order difference of eta in mu_b at the floor.
        x = ref_rates.bob_snr_floor

        def eta(mu_b):
            return math.exp(-mu_b / ref_stats.mean_gb_hat) * (
                1.0 - p_co_fixed(ref_stats, ref_rates.r_b, mu_b)
            )

        h = 1e-5 * x
        slope = (-3.0 * eta(x) + 4.0 * eta(x + h) - eta(x + 2.0 * h)) / (2.0 * h)
        scale = eta(x) / x
        assert abs(slope) <= 1e-6 * scale


class TestOptimizePilot:
    def test_s2_monotone_pushes_to_top(self, ref_rates):
        cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=1.0)
        con = OutageConstraints(0.05, 0.1)
        alpha, eta = optimize_pilot_power(
            Scenario.S2, cfg, con, rates=ref_rates, alpha_range=(0.1, 50.0), n_seeds=24
        )
        assert alpha == pytest.approx(50.0, rel=1e-3)
        assert eta > 0.0

    def test_s1_interior_peak(self, ref_rates):
        cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=1.0)
        con = OutageConstraints(0.05, 0.1)
        alpha, eta = optimize_pilot_power(Scenario.S1, cfg, con, rates=ref_rates)
        assert 1.78 <= alpha <= 2.78  # reported optimum 2.28 +- 0.5
        assert eta > 0.5

    def test_all_infeasible_reports_zero(self, ref_rates):
        cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=1.0)
        con = OutageConstraints(0.001, 0.1)  # below the S3 floor everywhere
        alpha, eta = optimize_pilot_power(
            Scenario.S3, cfg, con, rates=ref_rates, alpha_range=(0.1, 10.0), n_seeds=16
        )
        assert eta == 0.0


class TestConstraintSatisfaction:
    def test_every_feasible_solution_meets_both_bounds(self):
        # Random configurations: whatever comes back feasible must satisfy
        # p_so <= eps and p_co <= delta in closed form.
        rng = np.random.default_rng(777)
        rates = RatePair(2.0, 1.0)
        for _ in range(40):
            cfg = SystemConfig(
                p_b=float(rng.uniform(2.0, 100.0)),
                p_e=float(rng.uniform(0.2, 5.0)),
                alpha=float(rng.uniform(0.05, 50.0)),
            )
            con = OutageConstraints(
                eps=float(rng.uniform(0.001, 1.0)), delta=float(rng.uniform(0.01, 1.0))
            )
            sols = [
                solve_s1(cfg, rates, con),
                solve_s2(cfg, rates, con),
                solve_s3(cfg, rates, con),
                solve_nonadaptive(cfg, con),
            ]
            for sol in sols:
                if sol.feasible:
                    assert sol.report.p_so <= con.eps + 1e-9
                    assert sol.report.p_co <= con.delta + 1e-9
            pol = solve_adaptive(cfg, con)
            perf = adaptive_performance(pol, snr_stats(cfg))
            assert perf.p_so <= con.eps + 1e-9
            assert perf.p_co <= con.delta + 1e-9


class TestScenarioOrdering:
    def test_eta_ordering_on_reference_grid(self, ref_rates):
        for alpha in (1.0, 5.0):
            cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=alpha)
            for eps in (0.05, 0.1, 0.37, 0.6):
                con = OutageConstraints(eps, 0.1)
                e1 = solve_s1(cfg, ref_rates, con).report.eta
                s2 = solve_s2(cfg, ref_rates, con)
                e2 = s2.report.eta if s2.feasible else 0.0
                s3 = solve_s3(cfg, ref_rates, con)
                e3 = s3.report.eta if s3.feasible else 0.0
                assert e1 >= e2 - 1e-9 >= e3 - 2e-9
