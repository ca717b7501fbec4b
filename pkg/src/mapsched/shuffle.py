"""Map-to-reduce shuffle simulation for a mapping schema.

Each hosted input is shipped once to every reducer that hosts it, so the
shipped total equals the schema's communication cost by definition.  A
pair may be co-resident in several reducers; to keep output computation
exactly-once, an ownership plan assigns each required pair to the
minimum-index reducer hosting both members, and only the owner computes
the pair's output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import Instance, PairId, global_pairs, global_sizes, required_pairs
from .errors import InvalidSchemaError
from .schema import MappingSchema, global_reducers, validate

__all__ = [
    "OwnershipPlan",
    "ReducerStats",
    "SimReport",
    "plan_ownership",
    "sim_report_to_doc",
    "simulate",
]


@dataclass(frozen=True)
class OwnershipPlan:
    """One owner reducer per required pair; the owner hosts both members."""

    owner: Mapping[PairId, int]


@dataclass(frozen=True)
class ReducerStats:
    inputs_hosted: int
    load: int
    outputs_computed: int


@dataclass(frozen=True)
class SimReport:
    """Shuffle accounting: shipped size units, outputs, per-reducer stats."""

    bytes_shipped: int
    outputs_produced: int
    per_reducer: tuple[ReducerStats, ...]


def plan_ownership(schema: MappingSchema, instance: Instance) -> OwnershipPlan:
    """Deterministic pair ownership: the minimum-index hosting reducer.

    The schema must pass validation; an uncovered pair is reported by
    identity in the raised error.
    """
    report = validate(schema, instance)
    if report.uncovered_pairs:
        pair = report.uncovered_pairs[0]
        raise InvalidSchemaError(f"pair {tuple(pair)} is hosted by no reducer", pair=tuple(pair))
    if report.capacity_violations:
        idx, load = report.capacity_violations[0]
        raise InvalidSchemaError(f"reducer {idx} load {load} exceeds capacity {instance.capacity}")
    reducers = global_reducers(schema, instance)
    owner: dict[PairId, int] = {}
    for pair, (a, b) in zip(required_pairs(instance), global_pairs(instance)):
        for idx, r in enumerate(reducers):
            if a in r and b in r:
                owner[pair] = idx
                break
    return OwnershipPlan(owner=owner)


def simulate(schema: MappingSchema, instance: Instance) -> SimReport:
    """Ship every hosted input once per hosting reducer and compute each
    required pair exactly once, at its owner."""
    plan = plan_ownership(schema, instance)
    reducers = global_reducers(schema, instance)
    sizes = global_sizes(instance)
    outputs = [0] * len(reducers)
    for idx in plan.owner.values():
        outputs[idx] += 1
    stats = tuple(
        ReducerStats(
            inputs_hosted=len(r),
            load=sum(sizes[v] for v in r),
            outputs_computed=outputs[i],
        )
        for i, r in enumerate(reducers)
    )
    return SimReport(
        bytes_shipped=sum(s.load for s in stats),
        outputs_produced=sum(outputs),
        per_reducer=stats,
    )


def sim_report_to_doc(report: SimReport) -> dict:
    """Simulation report document for file output."""
    return {
        "bytes_shipped": report.bytes_shipped,
        "outputs_produced": report.outputs_produced,
        "per_reducer": [
            {
                "inputs_hosted": s.inputs_hosted,
                "load": s.load,
                "outputs_computed": s.outputs_computed,
            }
            for s in report.per_reducer
        ],
    }
