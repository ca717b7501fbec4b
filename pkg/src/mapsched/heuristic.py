"""Scalable schema construction from bin packing.

Inputs are first packed into capacity-bounded groups with first-fit
decreasing; groups then act as equal-capacity pseudo-inputs.  For A2A the
group capacity is floor(q/2), so any two groups co-reside within q and one
reducer per group pair covers every required pair.  For X2Y the capacity
is split between the sides and one reducer per (X-group, Y-group) covers
the full cross grid.  A final pruning pass drops reducers whose hosted
pairs are all covered elsewhere.

Constructions are deterministic: FFD breaks size ties by ascending index,
and reducers are emitted in lexicographic group order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from .core import Instance, Kind, check_feasibility, global_pairs, global_sizes
from .errors import HeuristicInapplicableError, InfeasibleInstanceError, InvalidSchemaError
from .schema import MappingSchema, XYReducer, global_reducers

__all__ = [
    "BinPacking",
    "a2a_pair_cover",
    "ffd_pack",
    "prune_redundant",
    "x2y_grid_cover",
]


@dataclass(frozen=True)
class BinPacking:
    """A partition of input indices into bins whose loads fit the capacity."""

    bins: tuple[frozenset[int], ...]
    bin_capacity: int


def ffd_pack(sizes: Sequence[int], bin_capacity: int) -> BinPacking:
    """First-fit decreasing: place items largest first (ties by ascending
    index) into the first bin that fits, opening a new bin otherwise."""
    if bin_capacity <= 0:
        raise ValueError(f"bin capacity must be positive, got {bin_capacity}")
    oversize = [i for i, s in enumerate(sizes) if s > bin_capacity]
    if oversize:
        raise ValueError(
            f"item {oversize[0]} of size {sizes[oversize[0]]} exceeds bin capacity {bin_capacity}"
        )
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    bins: list[list[int]] = []
    loads: list[int] = []
    for i in order:
        for b, load in enumerate(loads):
            if load + sizes[i] <= bin_capacity:
                bins[b].append(i)
                loads[b] += sizes[i]
                break
        else:
            bins.append([i])
            loads.append(sizes[i])
    return BinPacking(bins=tuple(frozenset(b) for b in bins), bin_capacity=bin_capacity)


def a2a_pair_cover(instance: Instance) -> MappingSchema:
    """Cover all pairs with one reducer per pair of floor(q/2)-capacity bins.

    Cross-bin pairs meet in their bins' shared reducer; intra-bin pairs are
    covered because every bin appears in some reducer.  When everything
    fits a single reducer, that reducer alone is emitted.
    """
    if instance.kind is not Kind.A2A:
        raise ValueError("a2a_pair_cover requires an a2a instance")
    report = check_feasibility(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(f"pair {tuple(report.witness)} cannot fit capacity {instance.capacity}")
    if instance.pair_count == 0:
        return MappingSchema(Kind.A2A, ())
    sizes = instance.sizes
    q = instance.capacity
    if sum(sizes) <= q:
        return MappingSchema(Kind.A2A, (frozenset(range(len(sizes))),))
    half = q // 2
    worst = max(sizes)
    if worst > half:
        raise HeuristicInapplicableError(
            f"input of size {worst} exceeds the bin capacity {half} (= floor(q/2))"
        )
    bins = ffd_pack(sizes, half).bins
    # sum(sizes) > q >= 2*half forces at least two bins here
    reducers = tuple(a | b for a, b in combinations(bins, 2))
    return MappingSchema(Kind.A2A, reducers)


def x2y_grid_cover(instance: Instance, x_fraction: float = 0.5) -> MappingSchema:
    """Cover the cross grid with one reducer per (X-bin, Y-bin).

    X packs into bins of floor(x_fraction*q), Y into the remaining
    capacity, so every reducer load stays within q.  When everything fits
    a single reducer, that reducer alone is emitted.
    """
    if instance.kind is not Kind.X2Y:
        raise ValueError("x2y_grid_cover requires an x2y instance")
    if not 0.0 < x_fraction < 1.0:
        raise ValueError(f"x_fraction must lie strictly between 0 and 1, got {x_fraction}")
    report = check_feasibility(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(f"pair {tuple(report.witness)} cannot fit capacity {instance.capacity}")
    if instance.pair_count == 0:
        return MappingSchema(Kind.X2Y, ())
    xs, ys = instance.x_sizes, instance.y_sizes
    q = instance.capacity
    if sum(xs) + sum(ys) <= q:
        return MappingSchema(
            Kind.X2Y, (XYReducer(frozenset(range(len(xs))), frozenset(range(len(ys)))),)
        )
    x_cap = math.floor(x_fraction * q)
    y_cap = q - x_cap
    if x_cap <= 0 or max(xs) > x_cap:
        raise HeuristicInapplicableError(
            f"x input of size {max(xs)} exceeds the x bin capacity {x_cap}", side="x"
        )
    if max(ys) > y_cap:
        raise HeuristicInapplicableError(
            f"y input of size {max(ys)} exceeds the y bin capacity {y_cap}", side="y"
        )
    x_bins = ffd_pack(xs, x_cap).bins
    y_bins = ffd_pack(ys, y_cap).bins
    reducers = tuple(XYReducer(bx, by) for bx, by in product(x_bins, y_bins))
    return MappingSchema(Kind.X2Y, reducers)


def prune_redundant(schema: MappingSchema, instance: Instance) -> MappingSchema:
    """Drop reducers whose hosted required pairs are all covered elsewhere.

    Repeatedly removes the largest-load such reducer (ties to the higher
    index) until none remains; surviving reducers keep their order.  The
    covered-pair set is preserved exactly.  Capacity violations and
    structural errors are rejected; schemas with uncovered pairs are
    accepted and keep their partial coverage.
    """
    reducers = global_reducers(schema, instance)
    sizes = global_sizes(instance)
    loads = [sum(sizes[v] for v in r) for r in reducers]
    for i, load in enumerate(loads):
        if load > instance.capacity:
            raise InvalidSchemaError(f"reducer {i} load {load} exceeds capacity {instance.capacity}")
    hosted: list[list[int]] = [[] for _ in reducers]
    cover_count: dict[int, int] = {}
    for p, (a, b) in enumerate(global_pairs(instance)):
        for i, r in enumerate(reducers):
            if a in r and b in r:
                hosted[i].append(p)
                cover_count[p] = cover_count.get(p, 0) + 1
    alive = set(range(len(reducers)))
    while True:
        removable = [i for i in alive if all(cover_count[p] >= 2 for p in hosted[i])]
        if not removable:
            break
        victim = max(removable, key=lambda i: (loads[i], i))
        alive.remove(victim)
        for p in hosted[victim]:
            cover_count[p] -= 1
    return MappingSchema(schema.kind, tuple(schema.reducers[i] for i in sorted(alive)))
