"""Command-line front end.

Every command reads an optional scenario file (``--config``), applies the
inline overrides, writes a CSV (``--out``, default standard output) and
prints ``key=value`` summary lines.  Exit codes: 0 success, 1 invalid
input, 2 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import attention_costs as ac
from . import continuous_state as cs
from . import correlated_lp as clp
from . import equilibrium as eq
from . import signal_model as sm
from .config import ConfigError, ScenarioConfig, parse_config
from .errors import ModelError
from .signal_solver import VoterProblem, solve_optimal_signal

EXIT_OK, EXIT_INVALID, EXIT_SOLVER = 0, 1, 2

XI_COLUMNS = ["f0", "v1", "I0", "I1", "x", "y", "z", "P1", "D", "P0", "xi",
              "regime", "c_hat", "sustainable", "selection", "status"]


class SolverFailure(RuntimeError):
    pass


def fmt(value) -> str:
    """Render one CSV cell: floats with 9 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    return str(value)


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _primitives(cfg: ScenarioConfig) -> Optional[eq.ModelPrimitives]:
    if not cfg.has_primitives:
        return None
    return eq.derive_performance_pmf(cfg.alpha, cfg.h_ability, cfg.c)


def _xi_row(f0, v1, i0, i1, cost_kind, units, prim):
    """One electorate evaluation; failures come back in the status column."""
    try:
        cost = ac.cost_from_name(cost_kind, units)
        e = eq.Electorate(f0, v1, i0, i1, cost)
        rep = eq.accountability(e, prim) if prim else eq.societal_incentive_power(e)
        x, y = rep.right_signal.x, rep.right_signal.y
        z = 1.0 / (x + i1 / x)
        return [f0, v1, i0, i1, x, y, z, rep.P1, rep.D, rep.P0, rep.xi,
                rep.pivotal_regime, rep.c_hat, rep.sustainable, rep.selection, "ok"]
    except (ModelError, ArithmeticError, RuntimeError) as exc:
        return [f0, v1, i0, i1] + [None] * 11 + [f"error: {exc}"]


def _xi_row_star(args):
    return _xi_row(*args)


def run_solve(cfg: ScenarioConfig):
    cost = cfg.cost
    sol = solve_optimal_signal(VoterProblem(cfg.v, cfg.bandwidth, cost))
    sig = sol.signal
    pi_l, pi_r = sm.outcome_probabilities(sig)
    a_plus, a_minus = sm.recommendation_rates(sig)
    header = ["v", "bandwidth", "cost", "x", "y", "pi_L", "pi_R", "a_plus", "a_minus",
              "P", "D", "value", "multiplier", "corner", "status"]
    status = "degenerate" if sol.degenerate else "ok"
    row = [cfg.v, cfg.bandwidth, cost.kind, sig.x, sig.y, pi_l, pi_r, a_plus, a_minus,
           sm.incentive_power(sig), sm.disagreement(sig), sol.value, sol.multiplier,
           sol.corner, status]
    summary = [f"x={fmt(sig.x)}", f"y={fmt(sig.y)}", f"P={fmt(row[9])}",
               f"value={fmt(sol.value)}", f"corner={fmt(sol.corner)}"]
    if sol.degenerate:
        raise SolverFailure("optimal signal is degenerate")
    return header, [row], summary


def run_xi(cfg: ScenarioConfig):
    row = _xi_row(cfg.f0, cfg.v1, cfg.i0, cfg.i1, cfg.cost_kind, cfg.units, _primitives(cfg))
    if row[-1] != "ok":
        raise SolverFailure(row[-1])
    summary = [f"{k}={fmt(v)}" for k, v in zip(XI_COLUMNS, row)
               if k in ("P1", "D", "P0", "xi", "regime", "c_hat", "sustainable", "selection")
               and v is not None]
    return XI_COLUMNS, [row], summary


def run_sweep(cfg: ScenarioConfig):
    prim = _primitives(cfg)
    grid = np.linspace(cfg.sweep_from, cfg.sweep_to, cfg.sweep_steps)
    base = {"f0": cfg.f0, "v1": cfg.v1, "i0": cfg.i0, "i1": cfg.i1}
    tasks = []
    for value in grid:
        point = dict(base, **{cfg.sweep_param: float(value)})
        tasks.append((point["f0"], point["v1"], point["i0"], point["i1"],
                      cfg.cost_kind, cfg.units, prim))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_xi_row_star, tasks, chunksize=8))
    else:
        rows = [_xi_row(*t) for t in tasks]
    failed = sum(r[-1] != "ok" for r in rows)
    summary = [f"parameter={cfg.sweep_param}", f"points={len(rows)}", f"failed={failed}"]
    return XI_COLUMNS, rows, summary, failed


def run_lp(cfg: ScenarioConfig):
    e = eq.Electorate(cfg.f0, cfg.v1, cfg.i0, cfg.i1, cfg.cost)
    m = clp.marginals_from_electorate(e)
    indep, xi_ind = clp.independent_joint(m)
    sol = clp.maximize_correlated_xi(m)
    xi_vertex = clp.vertex_oracle(m)
    header = ["index", "profile", "a_independent", "b_independent",
              "a_correlated", "b_correlated"]
    rows = [[i + 1, p, indep.a[i], indep.b[i], sol.joint.a[i], sol.joint.b[i]]
            for i, p in enumerate(clp.PROFILES)]
    summary = [
        f"xi_independent={fmt(xi_ind)}",
        f"xi_correlated={fmt(sol.xi)}",
        f"xi_vertex_oracle={fmt(xi_vertex)}",
        f"duality_gap={sol.duality_gap:.3e}",
        f"xi_independent_reported={clp.REPORTED_INDEPENDENT_XI}",
        f"xi_correlated_reported={clp.REPORTED_CORRELATED_XI}",
        f"note={clp.DISCREPANCY_NOTE}",
    ]
    return header, rows, summary


def run_continuous(cfg: ScenarioConfig):
    model = cs.linear_model(cfg.grid_points)
    sols = [cs.solve_single_voter(v, cfg.capacity, model, cfg.units) for v in cfg.continuous_v]
    header = ["omega"] + [f"m_v{fmt(v)}" for v in cfg.continuous_v]
    rows = [[w, *(s.m[k] for s in sols)] for k, w in enumerate(model.grid)]
    summary = []
    for v, s in zip(cfg.continuous_v, sols):
        summary.append(
            f"v={fmt(v)} P={fmt(s.P)} q={fmt(s.q)} lambda={fmt(s.lam)} "
            f"capacity_used_nats={fmt(s.capacity_used)} unconstrained={fmt(s.unconstrained)}")
    return header, rows, summary


def run_benchmark(cfg: ScenarioConfig):
    prim = _primitives(cfg)
    rep = eq.benchmark_full_information(prim)
    header = ["alpha", "h_ability", "l_ability", "p1_good", "p0_good", "c", "c_hat",
              "xi", "sustainable", "selection"]
    row = [prim.alpha, prim.h_ability, prim.l_ability, prim.p1_good, prim.p0_good,
           prim.effort_cost, rep.c_hat, rep.xi, rep.sustainable, rep.selection]
    summary = [f"c_hat={fmt(rep.c_hat)}", f"sustainable={fmt(rep.sustainable)}",
               f"selection={fmt(rep.selection)}"]
    return header, [row], summary


RUNNERS = {
    "solve": run_solve,
    "xi": run_xi,
    "sweep": run_sweep,
    "lp": run_lp,
    "continuous": run_continuous,
    "benchmark": run_benchmark,
}


def run(cfg: ScenarioConfig, out=None, stdout=None) -> int:
    """Execute a validated scenario; returns the process exit code."""
    stdout = stdout or sys.stdout
    failed = 0
    try:
        result = RUNNERS[cfg.mode](cfg)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SolverFailure, ArithmeticError, RuntimeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if len(result) == 4:
        header, rows, summary, failed = result
    else:
        header, rows, summary = result
    text = to_csv(header, rows)
    target = out or cfg.out
    if target:
        Path(target).write_text(text, encoding="utf-8", newline="\n")
    else:
        stdout.write(text)
    for line in summary:
        print(line, file=stdout if target else sys.stderr)
    return EXIT_SOLVER if failed else EXIT_OK


# flag -> (section, key)
OVERRIDES = {
    "v1": ("electorate", "v1"),
    "i0": ("electorate", "i0"),
    "i1": ("electorate", "i1"),
    "f0": ("electorate", "f0"),
    "cost": ("cost", "kind"),
    "units": ("cost", "units"),
    "alpha": ("primitives", "alpha"),
    "h_ability": ("primitives", "h_ability"),
    "c": ("primitives", "c"),
    "grid_points": ("continuous", "grid_points"),
    "capacity": ("continuous", "capacity"),
    "v": ("voter", "v"),
    "bandwidth": ("voter", "bandwidth"),
    "jobs": ("run", "jobs"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario file")
    common.add_argument("--out", help="CSV output path (default: standard output)")
    common.add_argument("--v1", help="extreme voters' preference parameter")
    common.add_argument("--i0", help="centrist bandwidth")
    common.add_argument("--i1", help="extreme voters' bandwidth")
    common.add_argument("--f0", help="centrist mass")
    common.add_argument("--cost", choices=["quadratic", "entropy"])
    common.add_argument("--units", choices=["nats", "bits"])
    common.add_argument("--alpha", help="prior probability of high ability")
    common.add_argument("--h-ability", dest="h_ability", help="high ability value")
    common.add_argument("--c", help="effort cost")
    common.add_argument("--grid-points", dest="grid_points", help="continuous-state grid size")
    common.add_argument("--capacity", help="mutual-information budget (continuous mode)")
    common.add_argument("--v", help="single voter preference (solve mode)")
    common.add_argument("--bandwidth", help="single voter bandwidth (solve mode)")
    common.add_argument("--jobs", help="worker processes for sweeps")

    parser = argparse.ArgumentParser(
        prog="inattentive-voters",
        description="Accountability with rationally inattentive voters")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("solve", "optimal signal of a single voter"),
        ("xi", "societal incentive power of one electorate"),
        ("sweep", "comparative statics over one parameter"),
        ("lp", "correlated versus independent recommendations"),
        ("continuous", "single voter with a continuum of states"),
        ("benchmark", "full-information benchmark"),
        ("run", "run the mode named in the scenario file"),
    ]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {OVERRIDES[k]: v for k, v in vars(args).items()
                 if k in OVERRIDES and v is not None}
    text = ""
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_INVALID
    mode = None if args.command == "run" else args.command
    try:
        cfg = parse_config(text, overrides, mode)
    except ConfigError as exc:
        for issue in exc.issues:
            print(f"config error: {issue}", file=sys.stderr)
        return EXIT_INVALID
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
