"""Command-line front end.

Subcommands:

* ``design``         solve one design problem and emit the solution record
* ``sweep``          sweep one parameter axis and emit a CSV series
* ``figure``         emit the CSV data behind one of the eight study figures
* ``mc-validate``    compare every closed form against the Monte-Carlo oracle
* ``optimize-pilot`` search the pilot power maximizing designed throughput

All SNR flags are in dB and converted to linear scale here; the core library
works in linear units only.  CSV output is comma-separated with a header row,
'.' decimal separator and >= 15 significant digits; an infinite Eve threshold
is serialized as the literal string "inf".

Exit codes: 0 success/feasible, 1 usage or parse error, 2 infeasible design,
3 degenerate Monte-Carlo run (no transmissions), 4 validation mismatch.
"""

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .channel import Scenario, SystemConfig, snr_stats
from .design import (
    ADAPTIVE,
    NONADAPTIVE,
    DesignSolution,
    OutageConstraints,
    adaptive_performance,
    rate_region_bound,
    solve_adaptive,
    solve_nonadaptive,
    solve_s1,
    solve_s2,
    solve_s3,
    optimize_pilot_power,
)
from .mcsim import estimate_performance
from .numerics import BracketError, find_root_monotone
from .outage import RatePair

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_DEGENERATE = 3
EXIT_MISMATCH = 4

_SCENARIOS = {"s1": Scenario.S1, "s2": Scenario.S2, "s3": Scenario.S3}
_SCHEMES = (NONADAPTIVE, ADAPTIVE)

# Keys a flat JSON config file may carry (mirror of the parameter flags).
_CONFIG_KEYS = {
    "scenario", "scheme", "pb_db", "pe_db", "alpha", "tt", "theta",
    "rb", "rs", "eps", "delta", "seed", "n_blocks",
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.15g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return v


def _write_csv(header: Sequence[str], rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _emit_record(record: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps({k: _jsonable(v) for k, v in record.items()}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        _write_csv(list(record.keys()), [list(record.values())], buf)
        text = buf.getvalue()
    sys.stdout.write(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_table(header, rows, out: Optional[str]) -> None:
    _write_csv(header, rows, sys.stdout)
    if out:
        with open(out, "w") as fh:
            _write_csv(header, rows, fh)


def _add_param_flags(p: argparse.ArgumentParser, rates: bool = True, alpha: bool = True) -> None:
    p.add_argument("--config", help="flat JSON file with parameter keys; flags override it")
    p.add_argument("--scenario", choices=sorted(_SCENARIOS), help="fixed-rate scenario")
    p.add_argument("--scheme", choices=_SCHEMES, help="joint rate and threshold design")
    p.add_argument("--pb-db", dest="pb_db", type=float, help="average SNR at Bob [dB]")
    p.add_argument("--pe-db", dest="pe_db", type=float, help="average SNR at Eve [dB]")
    if alpha:
        p.add_argument("--alpha", type=float, help="normalized pilot power ('inf' allowed)")
    p.add_argument("--tt", type=int, help="pilot length (default 1)")
    p.add_argument("--theta", type=float, help="pilot/feedback overhead ratio (default 0)")
    if rates:
        p.add_argument("--rb", type=float, help="codeword rate (scenario modes)")
        p.add_argument("--rs", type=float, help="confidential rate (scenario modes)")
    p.add_argument("--eps", type=float, help="secrecy outage bound")
    p.add_argument("--delta", type=float, help="connection outage bound")


def _load_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file {path}: {exc}")
    if not isinstance(raw, dict):
        parser.error(f"config file {path} must hold a flat JSON object")
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        parser.error(f"unknown config keys in {path}: {', '.join(unknown)}")
    return raw


def _merged(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    """File values under explicit flags, with parse-time defaults left None."""
    merged = {}
    if getattr(args, "config", None):
        merged.update(_load_config_file(args.config, parser))
    for key in _CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    return merged


class _Problem:
    """Resolved design inputs shared by the commands."""

    def __init__(self, mode, cfg: SystemConfig, rates: Optional[RatePair], con: OutageConstraints):
        self.mode = mode
        self.cfg = cfg
        self.rates = rates
        self.con = con

    @property
    def mode_name(self) -> str:
        return self.mode.value if isinstance(self.mode, Scenario) else self.mode


def _require(merged: dict, keys, parser) -> None:
    missing = [k for k in keys if merged.get(k) is None]
    if missing:
        parser.error(f"missing required parameters: {', '.join(missing)}")


def _resolve_problem(args, parser, need_alpha: bool = True) -> _Problem:
    merged = _merged(args, parser)
    scenario = merged.get("scenario")
    scheme = merged.get("scheme")
    if (scenario is None) == (scheme is None):
        parser.error("exactly one of --scenario or --scheme is required")
    _require(merged, ["pb_db", "pe_db", "eps", "delta"], parser)
    if need_alpha:
        _require(merged, ["alpha"], parser)
    if scenario is not None:
        if scenario not in _SCENARIOS:
            parser.error(f"unknown scenario {scenario!r}")
        _require(merged, ["rb", "rs"], parser)
        mode = _SCENARIOS[scenario]
        try:
            rates = RatePair(r_b=float(merged["rb"]), r_s=float(merged["rs"]))
        except ValueError as exc:
            parser.error(str(exc))
    else:
        if scheme not in _SCHEMES:
            parser.error(f"unknown scheme {scheme!r}")
        if merged.get("rb") is not None or merged.get("rs") is not None:
            parser.error("--rb/--rs are not accepted with --scheme (rates are designed)")
        mode, rates = scheme, None
    try:
        cfg = SystemConfig(
            p_b=10.0 ** (float(merged["pb_db"]) / 10.0),
            p_e=10.0 ** (float(merged["pe_db"]) / 10.0),
            alpha=float(merged["alpha"]) if need_alpha else 1.0,
            t_t=int(merged.get("tt", 1)),
            theta=float(merged.get("theta", 0.0)),
        )
        con = OutageConstraints(eps=float(merged["eps"]), delta=float(merged["delta"]))
    except ValueError as exc:
        parser.error(str(exc))
    return _Problem(mode, cfg, rates, con)


def _solve(prob: _Problem):
    """Returns (DesignSolution or None, AdaptivePolicy or None)."""
    if prob.mode is Scenario.S1:
        return solve_s1(prob.cfg, prob.rates, prob.con), None
    if prob.mode is Scenario.S2:
        return solve_s2(prob.cfg, prob.rates, prob.con), None
    if prob.mode is Scenario.S3:
        return solve_s3(prob.cfg, prob.rates, prob.con), None
    if prob.mode == NONADAPTIVE:
        return solve_nonadaptive(prob.cfg, prob.con), None
    policy = solve_adaptive(prob.cfg, prob.con)
    return None, policy


def _solution_record(prob: _Problem, sol: Optional[DesignSolution], policy) -> dict:
    cfg = prob.cfg
    rec = {
        "mode": prob.mode_name,
        "pb_db": 10.0 * math.log10(cfg.p_b),
        "pe_db": 10.0 * math.log10(cfg.p_e),
        "alpha": cfg.alpha,
        "tt": cfg.t_t,
        "theta": cfg.theta,
        "eps": prob.con.eps,
        "delta": prob.con.delta,
    }
    if policy is not None:
        perf = adaptive_performance(policy, snr_stats(cfg), cfg.theta)
        rec.update(
            feasible=True,
            reason="adaptive policy computed",
            mu_b=policy.mu_b,
            mu_e=math.inf,
            rb=None,
            rs=None,
            rate_offset_k=policy.k,
            p_tx=perf.p_tx,
            p_co=perf.p_co,
            p_so=perf.p_so,
            eta=perf.eta,
            binding_secrecy=True,
            binding_reliability=True,
        )
        return rec
    rec["feasible"] = sol.feasible
    rec["reason"] = sol.reason
    if sol.feasible:
        rec.update(
            mu_b=sol.thresholds.mu_b,
            mu_e=sol.thresholds.mu_e,
            rb=sol.rates.r_b,
            rs=sol.rates.r_s,
            p_tx=sol.report.p_tx,
            p_co=sol.report.p_co,
            p_so=sol.report.p_so,
            eta=sol.report.eta,
            binding_secrecy=sol.binding.secrecy,
            binding_reliability=sol.binding.reliability,
        )
    else:
        rec.update(
            mu_b=None, mu_e=None, rb=None, rs=None,
            p_tx=None, p_co=None, p_so=None, eta=None,
            binding_secrecy=None, binding_reliability=None,
        )
    return rec


# ---------------------------------------------------------------------------
# design
# ---------------------------------------------------------------------------

def _cmd_design(args, parser) -> int:
    prob = _resolve_problem(args, parser)
    sol, policy = _solve(prob)
    rec = _solution_record(prob, sol, policy)
    _emit_record(rec, args.format, args.out)
    if policy is None and not sol.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_AXES = ("alpha", "eps", "delta", "pb_db", "pe_db", "rb", "rs", "theta")


def _sweep_values(args, parser) -> np.ndarray:
    spec = args.log if args.log is not None else args.linear
    lo, hi, n = spec
    n = int(n)
    if n < 2 or not lo < hi:
        parser.error("sweep needs lo < hi and at least 2 points")
    if args.log is not None:
        if lo <= 0:
            parser.error("log sweep needs positive bounds")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _apply_axis(prob: _Problem, axis: str, value: float) -> _Problem:
    from dataclasses import replace as _replace

    cfg, rates, con = prob.cfg, prob.rates, prob.con
    if axis == "alpha":
        cfg = _replace(cfg, alpha=float(value))
    elif axis == "pb_db":
        cfg = _replace(cfg, p_b=10.0 ** (value / 10.0))
    elif axis == "pe_db":
        cfg = _replace(cfg, p_e=10.0 ** (value / 10.0))
    elif axis == "theta":
        cfg = _replace(cfg, theta=float(value))
    elif axis == "eps":
        con = OutageConstraints(eps=float(value), delta=con.delta)
    elif axis == "delta":
        con = OutageConstraints(eps=con.eps, delta=float(value))
    elif axis == "rb":
        rates = RatePair(r_b=float(value), r_s=rates.r_s)
    elif axis == "rs":
        rates = RatePair(r_b=rates.r_b, r_s=float(value))
    else:
        raise ValueError(f"unknown sweep axis {axis}")
    return _Problem(prob.mode, cfg, rates, con)


def _cmd_sweep(args, parser) -> int:
    axis = args.axis.replace("-", "_")
    if axis not in _SWEEP_AXES:
        parser.error(f"unknown sweep axis {args.axis!r}")
    prob = _resolve_problem(args, parser, need_alpha=(axis != "alpha"))
    values = _sweep_values(args, parser)
    header = [axis, "mu_b", "mu_e", "p_tx", "p_co", "p_so", "eta", "feasible"]
    rows = []
    for v in values:
        try:
            point = _apply_axis(prob, axis, float(v))
        except ValueError:
            rows.append([float(v), None, None, None, None, None, 0.0, False])
            continue
        sol, policy = _solve(point)
        if policy is not None:
            perf = adaptive_performance(policy, snr_stats(point.cfg), point.cfg.theta)
            rows.append([float(v), policy.mu_b, math.inf, perf.p_tx, perf.p_co, perf.p_so, perf.eta, True])
        elif sol.feasible:
            r = sol.report
            rows.append([float(v), sol.thresholds.mu_b, sol.thresholds.mu_e, r.p_tx, r.p_co, r.p_so, r.eta, True])
        else:
            rows.append([float(v), None, None, None, None, None, 0.0, False])
    _emit_table(header, rows, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

_FIG_BASE = {"pb_db": 10.0, "pe_db": 0.0, "delta": 0.1, "eps": 0.05, "rb": 2.0, "rs": 1.0}


def _fig_cfg(alpha: float, pb_db: float = 10.0, pe_db: float = 0.0, theta: float = 0.0) -> SystemConfig:
    return SystemConfig(p_b=10.0 ** (pb_db / 10.0), p_e=10.0 ** (pe_db / 10.0), alpha=alpha, theta=theta)


def _eta_or_zero(sol: DesignSolution) -> float:
    return sol.report.eta if sol.feasible else 0.0


def _figure_pilot_sweep(sc: Scenario, points: int):
    # Throughput against pilot power, one series per Bob SNR.
    rates = RatePair(2.0, 1.0)
    con = OutageConstraints(eps=0.05, delta=0.1)
    solver = solve_s1 if sc is Scenario.S1 else solve_s2
    alphas = np.geomspace(1e-2, 1e3, points)
    rows = []
    for pb_db in (5.0, 10.0, 15.0, 20.0):
        for a in alphas:
            sol = solver(_fig_cfg(float(a), pb_db=pb_db), rates, con)
            rows.append([float(a), _eta_or_zero(sol), pb_db])
    return ["alpha", "throughput", "Pb_dB"], rows


def _figure3(points: int):
    # Scenario comparison against the secrecy constraint.
    rates = RatePair(2.0, 1.0)
    eps_grid = np.geomspace(0.01, 1.0, points)
    rows = []
    for alpha in (1.0, 5.0, math.inf):
        cfg = _fig_cfg(alpha)
        for name, solver in (("s1", solve_s1), ("s2", solve_s2), ("s3", solve_s3)):
            for e in eps_grid:
                sol = solver(cfg, rates, OutageConstraints(eps=float(e), delta=0.1))
                rows.append([float(e), _eta_or_zero(sol), name, alpha])
    return ["eps", "throughput", "scenario", "alpha"], rows


def _figure4(points: int):
    # Fixed-rate S3 throughput over the (eps, delta) plane.
    rates = RatePair(2.0, 1.0)
    cfg = _fig_cfg(5.0)
    eps_grid = np.geomspace(0.01, 1.0, points)
    delta_grid = np.geomspace(0.01, 1.0, points)
    rows = []
    for e in eps_grid:
        for d in delta_grid:
            sol = solve_s3(cfg, rates, OutageConstraints(eps=float(e), delta=float(d)))
            rows.append([float(e), float(d), _eta_or_zero(sol)])
    return ["eps", "delta", "throughput"], rows


def _figure5(points: int):
    # Feasibility frontier of the non-adaptive scheme for a pinned mu_b = 9.
    mu_b = 9.0
    delta_grid = np.geomspace(1e-3, 0.999, points)
    rows = []
    for alpha in (1.0, 5.0, math.inf):
        stats = snr_stats(_fig_cfg(alpha))
        for d in delta_grid:
            cap = min(mu_b, rate_region_bound(stats, mu_b, float(d)))
            eps_min = math.exp(-cap / stats.mean_ge)
            rows.append([float(d), eps_min, alpha])
    return ["delta", "eps_min", "alpha"], rows


def _figure6(points: int):
    # Joint designs: throughput against the secrecy constraint.
    rows = []
    eps_grid = np.geomspace(0.01, 1.0, points)
    for alpha in (1.0, 5.0):
        cfg = _fig_cfg(alpha)
        for e in eps_grid:
            con = OutageConstraints(eps=float(e), delta=0.1)
            rows.append([float(e), _eta_or_zero(solve_nonadaptive(cfg, con)), alpha, NONADAPTIVE])
            rows.append([float(e), solve_adaptive(cfg, con).eta, alpha, ADAPTIVE])
    return ["eps", "throughput", "alpha", "scheme"], rows


def _min_eps_for_target(cfg: SystemConfig, scheme: str, target: float) -> float:
    """Smallest secrecy bound at which the scheme's throughput reaches target
    (throughput is nondecreasing in the bound)."""

    def gap(e: float) -> float:
        con = OutageConstraints(eps=e, delta=0.1)
        eta = solve_adaptive(cfg, con).eta if scheme == ADAPTIVE else _eta_or_zero(
            solve_nonadaptive(cfg, con)
        )
        return eta - target

    if gap(1.0) < 0.0:
        return math.nan
    lo = 1e-9
    if gap(lo) >= 0.0:
        return lo
    return find_root_monotone(gap, lo, 1.0)


def _figure7(points: int):
    # Achievable secrecy constraint against pilot power for target throughputs.
    rows = []
    alphas = np.geomspace(1e-2, 1e3, points)
    for target in (0.2, 0.5):
        for scheme in _SCHEMES:
            for a in alphas:
                eps_min = _min_eps_for_target(_fig_cfg(float(a)), scheme, target)
                rows.append([float(a), eps_min, scheme, target])
    return ["alpha", "eps_min", "scheme", "eta_target"], rows


def _figure8(points: int):
    # Non-adaptive throughput over the (eps, delta) plane.
    cfg = _fig_cfg(5.0)
    eps_grid = np.geomspace(0.01, 1.0, points)
    delta_grid = np.geomspace(0.01, 1.0, points)
    rows = []
    for e in eps_grid:
        for d in delta_grid:
            sol = solve_nonadaptive(cfg, OutageConstraints(eps=float(e), delta=float(d)))
            rows.append([float(e), float(d), _eta_or_zero(sol)])
    return ["eps", "delta", "throughput"], rows


_FIG_DEFAULT_POINTS = {1: 64, 2: 64, 3: 41, 4: 21, 5: 41, 6: 20, 7: 17, 8: 21}


def _cmd_figure(args, parser) -> int:
    fig = args.id
    points = args.points if args.points is not None else _FIG_DEFAULT_POINTS[fig]
    if points < 2:
        parser.error("--points must be at least 2")
    if fig == 1:
        header, rows = _figure_pilot_sweep(Scenario.S1, points)
    elif fig == 2:
        header, rows = _figure_pilot_sweep(Scenario.S2, points)
    elif fig == 3:
        header, rows = _figure3(points)
    elif fig == 4:
        header, rows = _figure4(points)
    elif fig == 5:
        header, rows = _figure5(points)
    elif fig == 6:
        header, rows = _figure6(points)
    elif fig == 7:
        header, rows = _figure7(points)
    else:
        header, rows = _figure8(points)
    _emit_table(header, rows, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# mc-validate
# ---------------------------------------------------------------------------

def _cmd_mc_validate(args, parser) -> int:
    prob = _resolve_problem(args, parser)
    merged = _merged(args, parser)
    n_blocks = int(merged.get("n_blocks") or 1_000_000)
    seed = int(merged.get("seed") or 0)

    sol, policy = _solve(prob)
    if policy is not None:
        closed = adaptive_performance(policy, snr_stats(prob.cfg), prob.cfg.theta)
        mc_policy = policy
    else:
        if not sol.feasible:
            sys.stderr.write(f"infeasible design: {sol.reason}\n")
            return EXIT_INFEASIBLE
        closed = sol.report
        mc_policy = (sol.thresholds, sol.rates)

    sc = prob.mode if isinstance(prob.mode, Scenario) else Scenario.S3
    mc = estimate_performance(prob.cfg, sc, mc_policy, n_blocks, seed)
    if mc.degenerate:
        _emit_table(["quantity", "closed_form", "mc_estimate", "se", "z_score"], [], args.out)
        sys.stderr.write("degenerate run: no transmitted blocks, conditional rates undefined\n")
        return EXIT_DEGENERATE

    perturb = args.perturb or 0.0
    rows = []
    all_ok = True
    pairs = [
        ("p_tx", closed.p_tx + perturb, mc.p_tx, mc.se_p_tx),
        ("p_co", closed.p_co + perturb, mc.p_co, mc.se_p_co),
        ("p_so", closed.p_so + perturb, mc.p_so, mc.se_p_so),
        ("eta", closed.eta + perturb, mc.eta, mc.se_eta),
    ]
    for name, cf, est, se in pairs:
        if se > 0.0:
            z = (est - cf) / se
        else:
            z = 0.0 if est == cf else math.inf
        all_ok &= abs(z) <= 3.0
        rows.append([name, cf, est, se, z])
    _emit_table(["quantity", "closed_form", "mc_estimate", "se", "z_score"], rows, args.out)
    return EXIT_OK if all_ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# optimize-pilot
# ---------------------------------------------------------------------------

def _cmd_optimize_pilot(args, parser) -> int:
    prob = _resolve_problem(args, parser, need_alpha=False)
    if not 0.0 < args.alpha_min < args.alpha_max:
        parser.error("need 0 < --alpha-min < --alpha-max")
    alpha_star, eta_star = optimize_pilot_power(
        prob.mode,
        prob.cfg,
        prob.con,
        rates=prob.rates,
        alpha_range=(args.alpha_min, args.alpha_max),
        n_seeds=args.alpha_points,
    )
    rec = {
        "mode": prob.mode_name,
        "pb_db": 10.0 * math.log10(prob.cfg.p_b),
        "pe_db": 10.0 * math.log10(prob.cfg.p_e),
        "eps": prob.con.eps,
        "delta": prob.con.delta,
        "alpha_min": args.alpha_min,
        "alpha_max": args.alpha_max,
        "alpha_star": alpha_star,
        "eta_star": eta_star,
    }
    _emit_record(rec, args.format, args.out)
    return EXIT_OK if eta_star > 0.0 else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="secure-onoff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="solve one design problem")
    _add_param_flags(p)
    p.add_argument("--out", help="also write the record to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("sweep", help="sweep one parameter axis, emit CSV")
    _add_param_flags(p)
    p.add_argument("--axis", required=True, help=f"one of {', '.join(_SWEEP_AXES)}")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--log", nargs=3, type=float, metavar=("LO", "HI", "N"))
    g.add_argument("--linear", nargs=3, type=float, metavar=("LO", "HI", "N"))
    p.add_argument("--out", help="also write the CSV to this path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="emit the CSV data behind one study figure")
    p.add_argument("id", type=int, choices=range(1, 9), metavar="ID", help="figure id, 1..8")
    p.add_argument("--points", type=int, help="grid density override")
    p.add_argument("--out", help="also write the CSV to this path")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("mc-validate", help="closed forms vs Monte-Carlo oracle")
    _add_param_flags(p)
    p.add_argument("--n-blocks", dest="n_blocks", type=int, help="blocks to simulate (default 1e6)")
    p.add_argument("--seed", type=int, help="Monte-Carlo seed (default 0)")
    p.add_argument("--perturb", type=float, help=argparse.SUPPRESS)  # detector test hook
    p.add_argument("--out", help="also write the table to this path")
    p.set_defaults(func=_cmd_mc_validate)

    p = sub.add_parser("optimize-pilot", help="pilot power maximizing throughput")
    _add_param_flags(p, alpha=False)
    p.add_argument("--alpha-min", type=float, default=1e-2)
    p.add_argument("--alpha-max", type=float, default=1e3)
    p.add_argument("--alpha-points", type=int, default=64, help="coarse log-grid seeds")
    p.add_argument("--out", help="also write the record to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_optimize_pilot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except BracketError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
