"""Command-line entry point: gen, validate, solve, simulate, sweep, oracle.

Exit codes: 0 success (solve: proven optimal), 1 usage or I/O error,
2 feasible but not proven optimal (heuristic result or exhausted budget),
3 infeasible instance, 4 invalid schema.

All file outputs are written atomically (temp file + rename).  With
``--json`` the standard output carries exactly one JSON document and
nothing else; human-readable notes go to stderr.  Outputs contain no
wall-clock fields, so repeated runs with identical inputs and flags are
byte-identical (wall-clock budget trips are the one documented exception).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from ._fileio import dumps_doc, write_json_file, write_text_atomic
from .bench import (
    Constant,
    GenSpec,
    Skewed,
    SWEEP_METHODS,
    UniformRange,
    curve_to_csv,
    generate,
    sweep,
)
from .core import Kind, instance_to_doc, load_instance, save_instance
from .errors import (
    HeuristicInapplicableError,
    InfeasibleInstanceError,
    InstanceTooLargeError,
    InvalidInstanceError,
    InvalidSchemaError,
    MapschedError,
)
from .oracle import oracle_min_z
from .schema import load_schema, save_schema, schema_to_doc, validate
from .shuffle import sim_report_to_doc, simulate
from .solver import SearchBudget, SolveStatus, lower_bound, solve_exact, solve_heuristic

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_PROVEN = 2
EXIT_INFEASIBLE = 3
EXIT_INVALID_SCHEMA = 4


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems as exit code 1."""

    def error(self, message: str):  # noqa: A003 - argparse API
        raise _UsageError(self, message)


def _parse_dist(text: str):
    parts = text.split(":")
    try:
        if parts[0] == "constant" and len(parts) == 2:
            return Constant(int(parts[1]))
        if parts[0] == "uniform" and len(parts) == 3:
            return UniformRange(int(parts[1]), int(parts[2]))
        if parts[0] == "skewed" and len(parts) == 4:
            return Skewed(int(parts[1]), int(parts[2]), int(parts[3]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad distribution {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"bad distribution {text!r}; expected constant:W, uniform:LO:HI, or skewed:BASE:COUNT:MULT"
    )


def _parse_q_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad capacity list {text!r}: {exc}") from exc


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON document on stdout")
    common.add_argument("--seed", type=int, default=None, help="seed for anything random (required by gen)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sweep points")

    parser = _Parser(prog="mapsched", description="Capacity-bounded reducer assignment toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("--m", type=int, required=True, help="input count (X side for x2y)")
    p.add_argument("--n", type=int, default=0, help="Y-side input count (x2y only)")
    p.add_argument("--dist", type=_parse_dist, required=True,
                   help="constant:W | uniform:LO:HI | skewed:BASE:COUNT:MULT")
    p.add_argument("--q", type=int, required=True, help="reducer capacity")
    p.add_argument("--out", help="instance file to write")

    p = sub.add_parser("validate", parents=[common], help="check a schema against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--schema", required=True)

    p = sub.add_parser("solve", parents=[common], help="minimize the reducer count")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=["exact", "heuristic"], default="exact")
    p.add_argument("--budget-nodes", type=int, default=SearchBudget().max_nodes)
    p.add_argument("--budget-ms", type=int, default=int(SearchBudget().max_time * 1000))
    p.add_argument("--x-fraction", type=float, default=0.5,
                   help="capacity fraction given to the X side (x2y heuristic)")
    p.add_argument("--out", help="schema file to write")

    p = sub.add_parser("simulate", parents=[common], help="simulate the shuffle for a schema")
    p.add_argument("--instance", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--report", help="report file to write")

    p = sub.add_parser("sweep", parents=[common], help="tradeoff curve across capacities")
    p.add_argument("--instance", required=True)
    p.add_argument("--q", type=_parse_q_list, required=True, help="comma-separated capacities")
    p.add_argument("--method", choices=list(SWEEP_METHODS), default="exact")
    p.add_argument("--budget-nodes", type=int, default=SearchBudget().max_nodes)
    p.add_argument("--budget-ms", type=int, default=int(SearchBudget().max_time * 1000))
    p.add_argument("--x-fraction", type=float, default=0.5)
    p.add_argument("--csv", help="CSV file to write")

    p = sub.add_parser("oracle", parents=[common], help="exhaustive minimum for tiny instances")
    p.add_argument("--instance", required=True)
    p.add_argument("--max-pairs", type=int, default=None, help="override the size guard")
    p.add_argument("--out", help="schema file for the witness")

    return parser


def _emit(args: argparse.Namespace, doc: dict, human_lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(dumps_doc(doc))
    else:
        for line in human_lines:
            print(line)


def _cmd_gen(args) -> int:
    if args.seed is None:
        raise _UsageError(_build_parser(), "gen requires --seed (no wall-clock seeding)")
    kind = Kind(args.kind)
    spec = GenSpec(kind=kind, m=args.m, n=args.n, dist=args.dist, seed=args.seed, capacity=args.q)
    instance = generate(spec)
    if args.out:
        save_instance(instance, args.out)
    doc = instance_to_doc(instance)
    lines = [] if args.out else [dumps_doc(doc).rstrip("\n")]
    if args.out:
        lines.append(f"wrote instance to {args.out}")
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    schema = load_schema(args.schema, instance.kind)
    empties = [i for i, r in enumerate(schema.reducers)
               if (len(r) if instance.kind is Kind.A2A else len(r.x) + len(r.y)) == 0]
    if empties:
        print(f"warning: empty reducers at indices {empties}", file=sys.stderr)
    report = validate(schema, instance)
    doc = {
        "valid": report.valid,
        "capacity_violations": [[idx, load] for idx, load in report.capacity_violations],
        "uncovered_pairs": [[p.first, p.second] for p in report.uncovered_pairs],
    }
    lines = [f"valid: {report.valid}"]
    for idx, load in report.capacity_violations:
        lines.append(f"capacity violation: reducer {idx} load {load} > q {instance.capacity}")
    for p in report.uncovered_pairs:
        lines.append(f"uncovered pair: ({p.first}, {p.second})")
    _emit(args, doc, lines)
    return EXIT_OK if report.valid else EXIT_INVALID_SCHEMA


def _solve_doc(status: str, z, lb, nodes, schema) -> dict:
    return {
        "status": status,
        "z": z,
        "lower_bound": lb,
        "nodes_explored": nodes,
        "schema": None if schema is None else schema_to_doc(schema),
    }


def _cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    budget = SearchBudget(max_nodes=args.budget_nodes, max_time=args.budget_ms / 1000.0)
    if args.method == "exact":
        report = solve_exact(instance, budget)
    else:
        try:
            report = solve_heuristic(instance, args.x_fraction)
        except HeuristicInapplicableError as exc:
            doc = _solve_doc("heuristic_inapplicable", None, lower_bound(instance), 0, None)
            _emit(args, doc, [f"heuristic inapplicable: {exc}"])
            return EXIT_NOT_PROVEN
    if report.schema is not None and args.out:
        save_schema(report.schema, args.out)
    doc = _solve_doc(report.status.value, report.z, report.lower_bound,
                     report.nodes_explored, report.schema)
    lines = [
        f"status: {report.status.value}",
        f"z: {report.z}  lower_bound: {report.lower_bound}  nodes: {report.nodes_explored}",
    ]
    if report.schema is not None and args.out:
        lines.append(f"wrote schema to {args.out}")
    _emit(args, doc, lines)
    if report.status is SolveStatus.OPTIMAL:
        return EXIT_OK
    if report.status is SolveStatus.INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_NOT_PROVEN


def _cmd_simulate(args) -> int:
    instance = load_instance(args.instance)
    schema = load_schema(args.schema, instance.kind)
    report = simulate(schema, instance)
    doc = sim_report_to_doc(report)
    if args.report:
        write_json_file(args.report, doc)
    lines = [f"bytes_shipped: {report.bytes_shipped}  outputs_produced: {report.outputs_produced}"]
    if args.report:
        lines.append(f"wrote report to {args.report}")
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    instance = load_instance(args.instance)
    budget = SearchBudget(max_nodes=args.budget_nodes, max_time=args.budget_ms / 1000.0)
    curve = sweep(
        instance,
        args.q,
        args.method,
        budget=budget,
        x_fraction=args.x_fraction,
        threads=args.threads,
    )
    csv_text = curve_to_csv(curve)
    if args.csv:
        write_text_atomic(args.csv, csv_text)
    doc = {
        "points": [
            {"q": p.q, "z": p.z, "cost": p.cost, "method": p.method, "status": p.status}
            for p in curve.points
        ]
    }
    lines = [f"wrote csv to {args.csv}"] if args.csv else [csv_text.rstrip("\n")]
    _emit(args, doc, lines)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    instance = load_instance(args.instance)
    result = oracle_min_z(instance, hard_limit=args.max_pairs)
    if args.out:
        save_schema(result.witness, args.out)
    doc = {
        "min_z": result.min_z,
        "explored": result.explored,
        "witness": schema_to_doc(result.witness),
    }
    lines = [f"min_z: {result.min_z}  explored: {result.explored}"]
    if args.out:
        lines.append(f"wrote witness to {args.out}")
    _emit(args, doc, lines)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "validate": _cmd_validate,
    "solve": _cmd_solve,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
}


def run(argv: Sequence[str]) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        exc.parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_SCHEMA
    except InfeasibleInstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MapschedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
