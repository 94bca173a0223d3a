"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 infeasible instance.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .detect import phr_curve_experiment, psr_table
from .graph import GraphError, Mode, NoPathError, dump_graph, generate_random_graph, load_graph
from .multipoint import PlanSolution, load_task, solve_multipoint
from .probmodel import solve_probabilistic

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    graph: Path | None = None
    task: Path | None = None
    out: Path | None = None
    seed: int = 0
    trials: int = 1000
    grid: list[float] = field(default_factory=list)
    n: int = 0
    m: int = 0

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(**{k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__})


def _grid(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stegnet", description="Covert-communication planning and structural attack tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a connected random graph (unit weights)")
    gen.add_argument("-n", type=int, required=True)
    gen.add_argument("-m", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--out", type=Path)

    for name, helptext in (("plan", "minimum-risk multi-point plan"), ("prob-plan", "maximum-reliability plan")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("-g", "--graph", type=Path, required=True)
        sp.add_argument("-t", "--task", type=Path, required=True)
        sp.add_argument("-o", "--out", type=Path)

    psr = sub.add_parser("psr", help="path-support rate of every edge (CSV)")
    psr.add_argument("-g", "--graph", type=Path, required=True)
    psr.add_argument("-o", "--out", type=Path)

    sim = sub.add_parser("simulate", help="PHR-vs-ESR curve on a random graph (CSV)")
    sim.add_argument("-n", type=int, required=True)
    sim.add_argument("-m", type=int, required=True)
    sim.add_argument("--trials", type=int, default=1000)
    sim.add_argument("--grid", type=_grid, default=_grid("0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"))
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("-o", "--out", type=Path)
    return p


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _plan_lines(plan: PlanSolution, edge_fmt) -> list[str]:
    lines = []
    for i, grp in enumerate(plan.groups):
        lines.append(f"group {i}: terminals " + " ".join(str(t) for t in sorted(grp.terminals)))
        lines += [f"  {edge_fmt(e)}" for e in grp.edges]
        lines.append(f"group {i} risk: {grp.risk:.6f}")
    return lines


def cmd_gen(cfg: RunConfig) -> str:
    try:
        g = generate_random_graph(cfg.n, cfg.m, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return dump_graph(g, comments=[f"seed={cfg.seed}"])


def cmd_plan(cfg: RunConfig) -> str:
    g = load_graph(_read(cfg.graph))
    if g.mode is not Mode.RISK:
        raise UsageError("plan needs a risk graph; use prob-plan for probability graphs")
    plan = solve_multipoint(g, _load_task(cfg, g))
    lines = _plan_lines(plan, lambda e: f"{e.u} {e.v} {e.value:.6f}")
    lines.append(f"total risk: {plan.risk:.6f}")
    return "\n".join(lines) + "\n"


def cmd_prob_plan(cfg: RunConfig) -> str:
    g = load_graph(_read(cfg.graph))
    if g.mode is not Mode.PROB:
        raise UsageError("prob-plan needs a prob graph")
    res = solve_probabilistic(g, _load_task(cfg, g))
    lines = _plan_lines(res.plan, lambda e: f"{e.u} {e.v} p={g.value(e.u, e.v):.6f} w={e.value:.6f}")
    lines.append(f"reliability: {res.reliability:.6f}")
    lines.append(f"equivalent risk: {res.equivalent_risk:.6f}")
    return "\n".join(lines) + "\n"


def cmd_psr(cfg: RunConfig) -> str:
    g = load_graph(_read(cfg.graph))
    if g.mode is not Mode.RISK:
        raise UsageError("psr needs a risk graph")
    return psr_table(g).to_csv()


def cmd_simulate(cfg: RunConfig) -> str:
    try:
        curve = phr_curve_experiment(cfg.n, cfg.m, cfg.trials, cfg.grid, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return curve.to_csv()


def _load_task(cfg: RunConfig, g):
    task = load_task(_read(cfg.task))
    try:
        task.check(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return task


COMMANDS = {
    "gen": cmd_gen,
    "plan": cmd_plan,
    "prob-plan": cmd_prob_plan,
    "psr": cmd_psr,
    "simulate": cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    cfg = RunConfig.from_args(build_parser().parse_args(argv))
    try:
        text = COMMANDS[cfg.command](cfg)
    except (UsageError, GraphError) as exc:
        print(f"stegnet {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoPathError as exc:
        print(f"stegnet {cfg.command}: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
