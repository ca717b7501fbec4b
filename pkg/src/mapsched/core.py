"""Problem instances and the universe of required co-residence pairs.

An instance fixes the problem kind, the positive integral input sizes, and
the uniform reducer capacity ``q``.  A2A instances require every unordered
pair of distinct inputs to share a reducer; X2Y instances require every
cross pair between two disjoint input sets X and Y.  Sizes and capacity
share one abstract unit, so every capacity comparison is exact integer
arithmetic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple

from ._fileio import read_json_file, write_json_file
from .errors import InvalidInstanceError

__all__ = [
    "FeasibilityReport",
    "Instance",
    "Kind",
    "PairId",
    "check_feasibility",
    "global_pairs",
    "global_sizes",
    "instance_from_doc",
    "instance_to_doc",
    "load_instance",
    "new_instance",
    "required_pairs",
    "save_instance",
]


class Kind(str, Enum):
    """Problem variant: all pairs within one set, or all cross pairs."""

    A2A = "a2a"
    X2Y = "x2y"


class PairId(NamedTuple):
    """One required pair.

    For A2A both fields index ``sizes`` and ``first < second``.  For X2Y
    ``first`` indexes the X side and ``second`` independently indexes Y.
    """

    first: int
    second: int


def _check_size_list(label: str, values: tuple[int, ...]) -> None:
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise InvalidInstanceError(f"{label} entries must be positive integers, got {v!r}")


@dataclass(frozen=True)
class Instance:
    """A reducer-assignment problem: kind, input sizes, and capacity ``q``.

    Immutable value type; all operations over it are pure functions.
    Duplicate size values are distinct inputs (identity is the index).
    """

    kind: Kind
    capacity: int
    sizes: tuple[int, ...] = ()
    x_sizes: tuple[int, ...] = ()
    y_sizes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "x_sizes", tuple(self.x_sizes))
        object.__setattr__(self, "y_sizes", tuple(self.y_sizes))
        if not isinstance(self.capacity, int) or isinstance(self.capacity, bool) or self.capacity <= 0:
            raise InvalidInstanceError(f"capacity must be a positive integer, got {self.capacity!r}")
        _check_size_list("sizes", self.sizes)
        _check_size_list("x_sizes", self.x_sizes)
        _check_size_list("y_sizes", self.y_sizes)
        if self.kind is Kind.A2A and (self.x_sizes or self.y_sizes):
            raise InvalidInstanceError("a2a instances use 'sizes'; 'x_sizes'/'y_sizes' must be empty")
        if self.kind is Kind.X2Y and self.sizes:
            raise InvalidInstanceError("x2y instances use 'x_sizes'/'y_sizes'; 'sizes' must be empty")

    @property
    def input_count(self) -> int:
        """Total number of inputs (X then Y for X2Y)."""
        if self.kind is Kind.A2A:
            return len(self.sizes)
        return len(self.x_sizes) + len(self.y_sizes)

    @property
    def pair_count(self) -> int:
        """Number of required pairs: C(m,2) for A2A, m*n for X2Y."""
        if self.kind is Kind.A2A:
            m = len(self.sizes)
            return m * (m - 1) // 2
        return len(self.x_sizes) * len(self.y_sizes)


def new_instance(
    kind: Kind | str,
    capacity: int,
    sizes: Iterable[int] = (),
    x_sizes: Iterable[int] = (),
    y_sizes: Iterable[int] = (),
) -> Instance:
    """Validating constructor.  Empty input lists are legal (zero pairs)."""
    return Instance(
        kind=Kind(kind),
        capacity=capacity,
        sizes=tuple(sizes),
        x_sizes=tuple(x_sizes),
        y_sizes=tuple(y_sizes),
    )


def required_pairs(instance: Instance) -> tuple[PairId, ...]:
    """All required pairs in lexicographic order, without duplicates.

    A2A yields the C(m,2) unordered distinct pairs (no self-pairs); X2Y
    yields the m*n cross pairs.
    """
    if instance.kind is Kind.A2A:
        return tuple(PairId(i, j) for i, j in combinations(range(len(instance.sizes)), 2))
    return tuple(
        PairId(i, j) for i, j in product(range(len(instance.x_sizes)), range(len(instance.y_sizes)))
    )


def global_sizes(instance: Instance) -> tuple[int, ...]:
    """Sizes over the flat input indexing (X entries then Y entries)."""
    if instance.kind is Kind.A2A:
        return instance.sizes
    return instance.x_sizes + instance.y_sizes


def global_pairs(instance: Instance) -> tuple[tuple[int, int], ...]:
    """Required pairs over the flat indexing, in the same order as
    :func:`required_pairs` (for X2Y the Y index is offset by ``len(x_sizes)``)."""
    if instance.kind is Kind.A2A:
        return tuple((p.first, p.second) for p in required_pairs(instance))
    m = len(instance.x_sizes)
    return tuple((p.first, m + p.second) for p in required_pairs(instance))


@dataclass(frozen=True)
class FeasibilityReport:
    """Whether every required pair can jointly fit in one reducer.

    ``witness`` is the lexicographically first pair whose combined size
    exceeds the capacity, or None when the instance is feasible.
    """

    witness: PairId | None = None

    @property
    def feasible(self) -> bool:
        return self.witness is None


def _local_pairs(instance: Instance) -> Iterator[PairId]:
    if instance.kind is Kind.A2A:
        for i, j in combinations(range(len(instance.sizes)), 2):
            yield PairId(i, j)
    else:
        for i, j in product(range(len(instance.x_sizes)), range(len(instance.y_sizes))):
            yield PairId(i, j)


def check_feasibility(instance: Instance) -> FeasibilityReport:
    """Feasible iff size_i + size_j <= q for every required pair (i, j)."""
    q = instance.capacity
    if instance.kind is Kind.A2A:
        sizes = instance.sizes
        for p in _local_pairs(instance):
            if sizes[p.first] + sizes[p.second] > q:
                return FeasibilityReport(witness=p)
    else:
        xs, ys = instance.x_sizes, instance.y_sizes
        for p in _local_pairs(instance):
            if xs[p.first] + ys[p.second] > q:
                return FeasibilityReport(witness=p)
    return FeasibilityReport()


_INSTANCE_KEYS = {"kind", "q", "sizes", "x_sizes", "y_sizes"}


def instance_to_doc(instance: Instance) -> dict:
    """Instance file document: ``{"kind", "q", "sizes" | "x_sizes"/"y_sizes"}``."""
    doc: dict = {"kind": instance.kind.value, "q": instance.capacity}
    if instance.kind is Kind.A2A:
        doc["sizes"] = list(instance.sizes)
    else:
        doc["x_sizes"] = list(instance.x_sizes)
        doc["y_sizes"] = list(instance.y_sizes)
    return doc


def _int_list(doc: dict, key: str) -> tuple[int, ...]:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise InvalidInstanceError(f"'{key}' must be a list")
    return tuple(raw)


def instance_from_doc(doc: object) -> Instance:
    """Parse and validate an instance document.  Unknown fields are rejected."""
    if not isinstance(doc, dict):
        raise InvalidInstanceError("instance document must be a JSON object")
    unknown = set(doc) - _INSTANCE_KEYS
    if unknown:
        raise InvalidInstanceError(f"unknown instance fields: {sorted(unknown)}")
    if "kind" not in doc or "q" not in doc:
        raise InvalidInstanceError("instance document requires 'kind' and 'q'")
    try:
        kind = Kind(doc["kind"])
    except ValueError:
        raise InvalidInstanceError(f"unknown kind {doc['kind']!r} (expected 'a2a' or 'x2y')") from None
    return new_instance(
        kind,
        doc["q"],
        sizes=_int_list(doc, "sizes"),
        x_sizes=_int_list(doc, "x_sizes"),
        y_sizes=_int_list(doc, "y_sizes"),
    )


def load_instance(path: str | os.PathLike) -> Instance:
    try:
        doc = read_json_file(path)
    except ValueError as exc:
        raise InvalidInstanceError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_doc(doc)


def save_instance(instance: Instance, path: str | os.PathLike) -> None:
    write_json_file(path, instance_to_doc(instance))
