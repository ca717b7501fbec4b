"""Exact minimum-reducer-count solver.

The objective (reducer count z) is minimized directly by iterative
deepening: for z = lower_bound, lower_bound+1, ... a depth-first search
looks for any assignment covering all required pairs with at most z
capacity-respecting reducers, branching on the lexicographically first
uncovered pair.  The first success is optimal by construction.  The
constructive cover serves as an upper bound: exhausting every level below
its reducer count proves it optimal without searching its own level.  All
tie breaking is lexicographic, so results are reproducible; under a node
budget they are bit-identical across runs.

Search effort is bounded by a :class:`SearchBudget`.  The node budget is
enforced exactly inside the kernel; wall-clock time is checked between
fixed-size kernel chunks, so time-limited runs stop promptly but the exact
stopping point may vary with machine load (statuses near the time boundary
can differ across runs; node-limited runs cannot).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernel
from .core import Instance, Kind, check_feasibility, global_pairs, global_sizes
from .errors import HeuristicInapplicableError, InfeasibleInstanceError
from .heuristic import a2a_pair_cover, prune_redundant, x2y_grid_cover
from .schema import MappingSchema, schema_from_global

__all__ = [
    "SearchBudget",
    "SolveReport",
    "SolveStatus",
    "lower_bound",
    "solve_exact",
    "solve_heuristic",
]

_CHUNK_NODES = 16_384


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    FEASIBLE_ONLY = "feasible_only"
    INFEASIBLE = "infeasible"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchBudget:
    """Search limits: node expansions and wall-clock seconds."""

    max_nodes: int = 10_000_000
    max_time: float = 60.0

    def __post_init__(self) -> None:
        if self.max_nodes <= 0:
            raise ValueError(f"max_nodes must be positive, got {self.max_nodes}")
        if self.max_time <= 0:
            raise ValueError(f"max_time must be positive, got {self.max_time}")


@dataclass(frozen=True)
class SolveReport:
    """Solve outcome: schema (when one exists), bounds, search statistics.

    ``z`` is the reducer count of the returned schema (0 when none).  With
    status OPTIMAL, z is the exact minimum.  ``elapsed`` is wall-clock
    seconds and is the one field that varies across identical runs.
    """

    schema: MappingSchema | None
    z: int
    lower_bound: int
    status: SolveStatus
    nodes_explored: int
    elapsed: float


def _max_pairs_one_reducer(instance: Instance) -> int:
    """Most required pairs a single capacity-q reducer can host, bounded
    greedily over the smallest sizes."""
    q = instance.capacity
    if instance.kind is Kind.A2A:
        ordered = sorted(instance.sizes)
        total, k = 0, 0
        for s in ordered:
            if total + s > q:
                break
            total += s
            k += 1
        return k * (k - 1) // 2
    xs = sorted(instance.x_sizes)
    ys = sorted(instance.y_sizes)
    x_prefix = [0]
    for s in xs:
        x_prefix.append(x_prefix[-1] + s)
    y_prefix = [0]
    for s in ys:
        y_prefix.append(y_prefix[-1] + s)
    best = 0
    for a in range(1, len(xs) + 1):
        if x_prefix[a] > q:
            break
        b = 0
        while b < len(ys) and x_prefix[a] + y_prefix[b + 1] <= q:
            b += 1
        best = max(best, a * b)
    return best


def lower_bound(instance: Instance) -> int:
    """Covering bound: ceil(pair count / max pairs per reducer).

    Never exceeds the true optimum.  Raises for infeasible instances.
    """
    report = check_feasibility(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(f"pair {tuple(report.witness)} cannot fit capacity {instance.capacity}")
    n_pairs = instance.pair_count
    if n_pairs == 0:
        return 0
    per_reducer = _max_pairs_one_reducer(instance)
    return -(-n_pairs // per_reducer)


def _best_effort_schema(instance: Instance, x_fraction: float = 0.5) -> MappingSchema | None:
    """Pruned constructive cover, or None when the construction cannot
    place some input."""
    try:
        if instance.kind is Kind.A2A:
            built = a2a_pair_cover(instance)
        else:
            built = x2y_grid_cover(instance, x_fraction)
    except HeuristicInapplicableError:
        return None
    return prune_redundant(built, instance)


def solve_exact(instance: Instance, budget: SearchBudget | None = None) -> SolveReport:
    """Minimize the reducer count exactly, within the given budget.

    Returns OPTIMAL with a minimum-count schema when the search completes,
    INFEASIBLE when some pair cannot fit any reducer, and
    BUDGET_EXHAUSTED with the best-effort constructive schema (when one
    applies) once the node or time budget trips.
    """
    start = time.perf_counter()
    budget = budget if budget is not None else SearchBudget()
    if not check_feasibility(instance).feasible:
        return SolveReport(
            schema=None,
            z=0,
            lower_bound=0,
            status=SolveStatus.INFEASIBLE,
            nodes_explored=0,
            elapsed=time.perf_counter() - start,
        )
    n_pairs = instance.pair_count
    lb = lower_bound(instance)
    if n_pairs == 0:
        return SolveReport(
            schema=MappingSchema(instance.kind, ()),
            z=0,
            lower_bound=0,
            status=SolveStatus.OPTIMAL,
            nodes_explored=0,
            elapsed=time.perf_counter() - start,
        )

    # The pruned constructive cover doubles as an upper bound: once every
    # level below its reducer count is exhausted, it is itself optimal, so
    # deepening never has to search its own level.
    fallback = _best_effort_schema(instance)
    upper = fallback.reducer_count if fallback is not None else None

    sizes = np.asarray(global_sizes(instance), dtype=np.int64)
    pairs = global_pairs(instance)
    pair_a = np.asarray([a for a, _ in pairs], dtype=np.int64)
    pair_b = np.asarray([b for _, b in pairs], dtype=np.int64)
    n_inputs = sizes.shape[0]
    deadline = start + budget.max_time

    nodes_total = 0
    out_of_budget = False
    for z in range(max(lb, 1), n_pairs + 1):
        if upper is not None and z == upper:
            return SolveReport(
                schema=fallback,
                z=upper,
                lower_bound=lb,
                status=SolveStatus.OPTIMAL,
                nodes_explored=nodes_total,
                elapsed=time.perf_counter() - start,
            )
        members = np.zeros((n_pairs + 1, z, n_inputs), dtype=np.uint8)
        loads = np.zeros((n_pairs + 1, z), dtype=np.int64)
        covered = np.zeros((n_pairs + 1, n_pairs), dtype=np.uint8)
        k_stack = np.zeros(n_pairs + 1, dtype=np.int64)
        branch = np.zeros(n_pairs + 1, dtype=np.int64)
        pair_at = np.zeros(n_pairs + 1, dtype=np.int64)
        ctrl = np.zeros(4, dtype=np.int64)
        level_budget = budget.max_nodes - nodes_total
        if level_budget <= 0:
            out_of_budget = True
            break
        while True:
            _kernel.run_chunk(
                sizes, instance.capacity, z, pair_a, pair_b,
                members, loads, covered, k_stack, branch, pair_at, ctrl,
                _CHUNK_NODES, level_budget,
            )
            status = int(ctrl[3])
            if status == _kernel.RUNNING:
                if time.perf_counter() > deadline:
                    out_of_budget = True
                    break
                continue
            break
        nodes_total += int(ctrl[2])
        if out_of_budget or status == _kernel.NODE_BUDGET:
            out_of_budget = True
            break
        if status == _kernel.FOUND:
            depth = int(ctrl[0])
            k = int(k_stack[depth])
            found = [frozenset(np.nonzero(members[depth, r])[0].tolist()) for r in range(k)]
            schema = schema_from_global(found, instance)
            return SolveReport(
                schema=schema,
                z=k,
                lower_bound=lb,
                status=SolveStatus.OPTIMAL,
                nodes_explored=nodes_total,
                elapsed=time.perf_counter() - start,
            )
        # EXHAUSTED: no schema with at most z reducers; deepen.

    if not out_of_budget:
        raise AssertionError("deepening passed the pair count without a cover")
    return SolveReport(
        schema=fallback,
        z=fallback.reducer_count if fallback is not None else 0,
        lower_bound=lb,
        status=SolveStatus.BUDGET_EXHAUSTED,
        nodes_explored=nodes_total,
        elapsed=time.perf_counter() - start,
    )


def solve_heuristic(instance: Instance, x_fraction: float = 0.5) -> SolveReport:
    """Constructive cover wrapped in a report; no optimality claim.

    Raises HeuristicInapplicableError when the construction cannot place
    some input within its bin budget.
    """
    start = time.perf_counter()
    if not check_feasibility(instance).feasible:
        return SolveReport(
            schema=None,
            z=0,
            lower_bound=0,
            status=SolveStatus.INFEASIBLE,
            nodes_explored=0,
            elapsed=time.perf_counter() - start,
        )
    if instance.kind is Kind.A2A:
        built = a2a_pair_cover(instance)
    else:
        built = x2y_grid_cover(instance, x_fraction)
    built = prune_redundant(built, instance)
    status = SolveStatus.OPTIMAL if instance.pair_count == 0 else SolveStatus.FEASIBLE_ONLY
    return SolveReport(
        schema=built,
        z=built.reducer_count,
        lower_bound=lower_bound(instance),
        status=status,
        nodes_explored=0,
        elapsed=time.perf_counter() - start,
    )
