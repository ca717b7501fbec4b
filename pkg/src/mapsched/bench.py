"""Seeded instance generators and capacity-tradeoff sweeps.

Generators are deterministic for a fixed spec: only the uniform
distribution draws from the seeded RNG; constant and skewed sizes are
fixed by construction (skewed instances place the heavy inputs first).
Sweeps re-solve one size profile across a list of capacities and report
the reducer count and the simulated communication cost per point, so every
curve exercises the full solve-validate-simulate pipeline.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Instance, Kind, check_feasibility, new_instance
from .errors import HeuristicInapplicableError
from .oracle import oracle_min_z
from .shuffle import simulate
from .solver import SearchBudget, SolveStatus, solve_exact, solve_heuristic

__all__ = [
    "Constant",
    "GenSpec",
    "Skewed",
    "SweepPoint",
    "TradeoffCurve",
    "UniformRange",
    "curve_to_csv",
    "generate",
    "sweep",
]

SWEEP_METHODS = ("exact", "heuristic", "oracle")


@dataclass(frozen=True)
class Constant:
    """Every input has the same size."""

    value: int


@dataclass(frozen=True)
class UniformRange:
    """Sizes drawn uniformly from the inclusive integer range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"lo must not exceed hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Skewed:
    """Mostly ``base``-sized inputs plus a few heavy hitters of size
    base * heavy_multiplier, placed at the front."""

    base: int
    heavy_count: int
    heavy_multiplier: int


SizeDistribution = Constant | UniformRange | Skewed


@dataclass(frozen=True)
class GenSpec:
    """Deterministic generator request.

    ``n`` is the Y-side count and only meaningful for X2Y.  ``capacity``
    is carried through to the emitted instance; feasibility of the result
    is the caller's concern.
    """

    kind: Kind
    m: int
    dist: SizeDistribution
    seed: int
    capacity: int
    n: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.m <= 0 or (self.kind is Kind.X2Y and self.n <= 0):
            raise ValueError("input counts must be positive")


def _draw(dist: SizeDistribution, count: int, rng: np.random.Generator) -> list[int]:
    if isinstance(dist, Constant):
        if dist.value <= 0:
            raise ValueError("constant size must be positive")
        return [dist.value] * count
    if isinstance(dist, UniformRange):
        if dist.lo <= 0:
            raise ValueError("uniform range must be positive")
        return [int(v) for v in rng.integers(dist.lo, dist.hi + 1, size=count)]
    if dist.base <= 0 or dist.heavy_count < 0 or dist.heavy_multiplier <= 0:
        raise ValueError("skewed parameters must be positive")
    heavies = min(dist.heavy_count, count)
    return [dist.base * dist.heavy_multiplier] * heavies + [dist.base] * (count - heavies)


def generate(spec: GenSpec) -> Instance:
    """Emit the instance for a spec; identical specs yield identical
    instances.  Feasibility is checked downstream, not here."""
    rng = np.random.default_rng(spec.seed)
    if spec.kind is Kind.A2A:
        return new_instance(Kind.A2A, spec.capacity, sizes=_draw(spec.dist, spec.m, rng))
    xs = _draw(spec.dist, spec.m, rng)
    ys = _draw(spec.dist, spec.n, rng)
    return new_instance(Kind.X2Y, spec.capacity, x_sizes=xs, y_sizes=ys)


@dataclass(frozen=True)
class SweepPoint:
    """One tradeoff sample; z and cost are None for points that produced
    no schema (infeasible capacity, inapplicable construction, exhausted
    budget with no fallback)."""

    q: int
    z: int | None
    cost: int | None
    method: str
    status: str


@dataclass(frozen=True)
class TradeoffCurve:
    """Sweep points ordered by strictly increasing capacity."""

    points: tuple[SweepPoint, ...]


def _eval_point(
    instance: Instance,
    q: int,
    method: str,
    budget: SearchBudget | None,
    x_fraction: float,
) -> SweepPoint:
    candidate = dataclasses.replace(instance, capacity=q)
    if not check_feasibility(candidate).feasible:
        return SweepPoint(q=q, z=None, cost=None, method=method, status="infeasible")
    if method == "exact":
        report = solve_exact(candidate, budget)
        status = "optimal" if report.status is SolveStatus.OPTIMAL else "budget_exhausted"
        schema = report.schema
    elif method == "heuristic":
        try:
            report = solve_heuristic(candidate, x_fraction)
        except HeuristicInapplicableError:
            return SweepPoint(q=q, z=None, cost=None, method=method, status="inapplicable")
        status = "optimal" if report.status is SolveStatus.OPTIMAL else "feasible"
        schema = report.schema
    elif method == "oracle":
        result = oracle_min_z(candidate)
        status = "optimal"
        schema = result.witness
    else:
        raise ValueError(f"unknown sweep method {method!r} (expected one of {SWEEP_METHODS})")
    if schema is None:
        return SweepPoint(q=q, z=None, cost=None, method=method, status=status)
    cost = simulate(schema, candidate).bytes_shipped
    return SweepPoint(q=q, z=schema.reducer_count, cost=cost, method=method, status=status)


def sweep(
    instance: Instance,
    q_values: Sequence[int],
    method: str = "exact",
    *,
    budget: SearchBudget | None = None,
    x_fraction: float = 0.5,
    threads: int = 1,
) -> TradeoffCurve:
    """Evaluate one method across capacities; points come back ordered by
    q regardless of completion order.  Infeasible capacities are flagged
    rather than dropped."""
    qs = sorted(set(int(q) for q in q_values))
    if not qs:
        raise ValueError("q_values must not be empty")
    if qs[0] <= 0:
        raise ValueError(f"capacities must be positive, got {qs[0]}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(lambda q: _eval_point(instance, q, method, budget, x_fraction), qs))
    else:
        points = [_eval_point(instance, q, method, budget, x_fraction) for q in qs]
    return TradeoffCurve(points=tuple(points))


def curve_to_csv(curve: TradeoffCurve) -> str:
    """CSV rendering: header ``q,z,cost,method,status``, one row per point."""
    lines = ["q,z,cost,method,status"]
    for p in curve.points:
        z = "" if p.z is None else str(p.z)
        cost = "" if p.cost is None else str(p.cost)
        lines.append(f"{p.q},{z},{cost},{p.method},{p.status}")
    return "\n".join(lines) + "\n"
