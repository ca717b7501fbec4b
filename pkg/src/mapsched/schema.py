"""Mapping schemas: reducer contents, constraint validation, cost metrics.

A mapping schema is an ordered list of reducers, each a set of input
indices.  Validation checks the two assignment constraints: (i) no reducer
load exceeds the capacity and (ii) every required pair shares at least one
reducer.  Metrics are computed for invalid schemas too, so they stay
usable while debugging.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._fileio import read_json_file, write_json_file
from .core import Instance, Kind, PairId, global_pairs, global_sizes, required_pairs
from .errors import InvalidSchemaError

__all__ = [
    "MappingSchema",
    "Metrics",
    "ValidationReport",
    "XYReducer",
    "global_reducers",
    "load_schema",
    "metrics",
    "save_schema",
    "schema_from_doc",
    "schema_from_global",
    "schema_to_doc",
    "validate",
]


def _index_set(label: str, values: Iterable[int]) -> frozenset[int]:
    out = frozenset(values)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidSchemaError(f"{label} indices must be non-negative integers, got {v!r}")
    return out


@dataclass(frozen=True)
class XYReducer:
    """One X2Y reducer: indices into the X side and into the Y side."""

    x: frozenset[int]
    y: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _index_set("x", self.x))
        object.__setattr__(self, "y", _index_set("y", self.y))


@dataclass(frozen=True)
class MappingSchema:
    """Ordered reducers.  A2A entries are frozensets of indices into
    ``sizes``; X2Y entries are :class:`XYReducer` values."""

    kind: Kind
    reducers: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.A2A:
            entries = tuple(_index_set("reducer", r) for r in self.reducers)
        else:
            entries = tuple(
                r if isinstance(r, XYReducer) else XYReducer(frozenset(r[0]), frozenset(r[1]))
                for r in self.reducers
            )
        object.__setattr__(self, "reducers", entries)

    @property
    def reducer_count(self) -> int:
        return len(self.reducers)


def global_reducers(schema: MappingSchema, instance: Instance) -> tuple[frozenset[int], ...]:
    """Reducer member sets over the flat input indexing (X then Y).

    Raises InvalidSchemaError on kind mismatch or out-of-range indices.
    """
    if schema.kind is not instance.kind:
        raise InvalidSchemaError(
            f"schema kind {schema.kind.value!r} does not match instance kind {instance.kind.value!r}"
        )
    if instance.kind is Kind.A2A:
        m = len(instance.sizes)
        for idx, r in enumerate(schema.reducers):
            for v in r:
                if v >= m:
                    raise InvalidSchemaError(f"reducer {idx}: index {v} out of range for {m} inputs")
        return schema.reducers
    m, n = len(instance.x_sizes), len(instance.y_sizes)
    out = []
    for idx, r in enumerate(schema.reducers):
        for v in r.x:
            if v >= m:
                raise InvalidSchemaError(f"reducer {idx}: x index {v} out of range for {m} inputs")
        for v in r.y:
            if v >= n:
                raise InvalidSchemaError(f"reducer {idx}: y index {v} out of range for {n} inputs")
        out.append(r.x | frozenset(m + v for v in r.y))
    return tuple(out)


def schema_from_global(members: Iterable[Iterable[int]], instance: Instance) -> MappingSchema:
    """Build a schema from flat-indexed member sets (inverse of
    :func:`global_reducers`)."""
    if instance.kind is Kind.A2A:
        return MappingSchema(Kind.A2A, tuple(frozenset(r) for r in members))
    m = len(instance.x_sizes)
    reducers = tuple(
        XYReducer(frozenset(v for v in r if v < m), frozenset(v - m for v in r if v >= m))
        for r in members
    )
    return MappingSchema(Kind.X2Y, reducers)


@dataclass(frozen=True)
class ValidationReport:
    """Exhaustive constraint violations, in deterministic order.

    ``capacity_violations`` holds (reducer index, load) for every overfull
    reducer; ``uncovered_pairs`` lists every required pair hosted by no
    reducer, lexicographically.
    """

    capacity_violations: tuple[tuple[int, int], ...]
    uncovered_pairs: tuple[PairId, ...]

    @property
    def valid(self) -> bool:
        return not self.capacity_violations and not self.uncovered_pairs


@dataclass(frozen=True)
class Metrics:
    """Cost measures of a schema against an instance.

    ``communication_cost`` is the total size units shipped: the sum of
    reducer loads, equivalently the replication-weighted sum of input
    sizes.  ``replication`` counts hosting reducers per input, over the
    flat input order (X entries then Y entries for X2Y).
    """

    reducer_count: int
    communication_cost: int
    replication: tuple[int, ...]
    max_load: int
    min_load: int


def _loads(reducers: Sequence[frozenset[int]], sizes: Sequence[int]) -> list[int]:
    return [sum(sizes[v] for v in r) for r in reducers]


def validate(schema: MappingSchema, instance: Instance) -> ValidationReport:
    """Check both assignment constraints; the report is exhaustive."""
    reducers = global_reducers(schema, instance)
    sizes = global_sizes(instance)
    q = instance.capacity
    violations = tuple(
        (idx, load) for idx, load in enumerate(_loads(reducers, sizes)) if load > q
    )
    uncovered = tuple(
        pair
        for pair, (a, b) in zip(required_pairs(instance), global_pairs(instance))
        if not any(a in r and b in r for r in reducers)
    )
    return ValidationReport(capacity_violations=violations, uncovered_pairs=uncovered)


def metrics(schema: MappingSchema, instance: Instance) -> Metrics:
    """Reducer count, communication cost, replication, and load extremes.

    Defined for invalid schemas as well; ``max_load <= q`` only holds for
    schemas that pass validation.
    """
    reducers = global_reducers(schema, instance)
    sizes = global_sizes(instance)
    loads = _loads(reducers, sizes)
    replication = tuple(sum(1 for r in reducers if v in r) for v in range(instance.input_count))
    return Metrics(
        reducer_count=len(reducers),
        communication_cost=sum(loads),
        replication=replication,
        max_load=max(loads, default=0),
        min_load=min(loads, default=0),
    )


def schema_to_doc(schema: MappingSchema) -> dict:
    """Schema file document: ``{"reducers": [[...], ...]}`` for A2A or
    ``{"reducers": [{"x": [...], "y": [...]}, ...]}`` for X2Y."""
    if schema.kind is Kind.A2A:
        return {"reducers": [sorted(r) for r in schema.reducers]}
    return {"reducers": [{"x": sorted(r.x), "y": sorted(r.y)} for r in schema.reducers]}


def _doc_index_list(label: str, raw: object) -> tuple[int, ...]:
    if not isinstance(raw, list):
        raise InvalidSchemaError(f"{label} must be a list of indices")
    values = tuple(raw)
    if len(set(values)) != len(values):
        raise InvalidSchemaError(f"{label} repeats an input index")
    return values


def schema_from_doc(doc: object, kind: Kind | str) -> MappingSchema:
    """Parse a schema document for the given problem kind.

    The document does not name its kind; the entry shape (plain lists for
    A2A, x/y objects for X2Y) must agree with ``kind``.
    """
    kind = Kind(kind)
    if not isinstance(doc, dict) or "reducers" not in doc:
        raise InvalidSchemaError("schema document must be an object with a 'reducers' list")
    raw = doc["reducers"]
    if not isinstance(raw, list):
        raise InvalidSchemaError("'reducers' must be a list")
    entries = []
    for idx, r in enumerate(raw):
        if kind is Kind.A2A:
            if isinstance(r, dict):
                raise InvalidSchemaError(f"reducer {idx}: tagged x/y entry in an a2a schema")
            entries.append(_doc_index_list(f"reducer {idx}", r))
        else:
            if not isinstance(r, dict) or set(r) != {"x", "y"}:
                raise InvalidSchemaError(f"reducer {idx}: x2y entries must be objects with 'x' and 'y'")
            entries.append(
                XYReducer(
                    frozenset(_doc_index_list(f"reducer {idx} x", r["x"])),
                    frozenset(_doc_index_list(f"reducer {idx} y", r["y"])),
                )
            )
    return MappingSchema(kind, tuple(entries))


def load_schema(path: str | os.PathLike, kind: Kind | str) -> MappingSchema:
    try:
        doc = read_json_file(path)
    except ValueError as exc:
        raise InvalidSchemaError(f"{path}: not valid JSON ({exc})") from exc
    return schema_from_doc(doc, kind)


def save_schema(schema: MappingSchema, path: str | os.PathLike) -> None:
    write_json_file(path, schema_to_doc(schema))
