"""Exhaustive ground-truth minimizer for tiny instances.

Candidate reducers are the maximal capacity-respecting input sets: any
cover is dominated by one that uses only maximal sets (grow each reducer
until nothing else fits; coverage can only increase), so restricting the
pool preserves the optimum while shrinking the search space.  Families of
candidates are then enumerated in canonical order by increasing size, so
the first covering family fixes the exact minimum reducer count.

This module deliberately shares no search code with the branch-and-bound
solver; it is the reference that solver is tested against.  It is
single-threaded and makes no attempt to be fast beyond the maximality
restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Instance, Kind, check_feasibility, global_pairs, global_sizes
from .errors import InfeasibleInstanceError, InstanceTooLargeError
from .schema import MappingSchema, schema_from_global

__all__ = ["OracleResult", "oracle_min_z"]

# Default pair-count guards: 7 inputs for A2A (21 pairs), 16 cross pairs for X2Y.
_DEFAULT_PAIR_LIMIT = {Kind.A2A: 21, Kind.X2Y: 16}


@dataclass(frozen=True)
class OracleResult:
    """Exact minimum reducer count with one optimal schema as witness."""

    min_z: int
    witness: MappingSchema
    explored: int


def _maximal_candidates(sizes: tuple[int, ...], q: int) -> list[int]:
    """Bitmasks of all maximal input sets whose load fits the capacity,
    sorted lexicographically by member tuple."""
    n = len(sizes)
    loads = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        loads[mask] = loads[mask ^ low] + sizes[low.bit_length() - 1]
    out = []
    for mask in range(1, 1 << n):
        if loads[mask] > q:
            continue
        maximal = True
        for v in range(n):
            if not mask & (1 << v) and loads[mask] + sizes[v] <= q:
                maximal = False
                break
        if maximal:
            out.append(mask)
    members = sorted(tuple(v for v in range(n) if mask & (1 << v)) for mask in out)
    return [sum(1 << v for v in tup) for tup in members]


def _mask_members(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask & (1 << v)]


def oracle_min_z(instance: Instance, hard_limit: int | None = None) -> OracleResult:
    """Exact minimum reducer count by exhaustive family enumeration.

    For z = 1, 2, ... every size-z family of maximal candidate reducers is
    tested, in canonical order, until one covers all required pairs.
    ``explored`` counts the candidate schemas examined.  ``hard_limit``
    bounds the number of required pairs (kind-specific default when None);
    larger instances are refused rather than ground through.
    """
    report = check_feasibility(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(f"pair {tuple(report.witness)} cannot fit capacity {instance.capacity}")
    limit = _DEFAULT_PAIR_LIMIT[instance.kind] if hard_limit is None else hard_limit
    n_pairs = instance.pair_count
    if n_pairs > limit:
        raise InstanceTooLargeError(f"{n_pairs} required pairs exceed the oracle guard of {limit}")
    if n_pairs == 0:
        return OracleResult(min_z=0, witness=MappingSchema(instance.kind, ()), explored=1)

    sizes = global_sizes(instance)
    pairs = global_pairs(instance)
    candidates = _maximal_candidates(sizes, instance.capacity)
    # Pair-coverage bitmask per candidate; candidates covering nothing can
    # never help a minimal family.
    coverage = []
    kept = []
    for mask in candidates:
        cov = 0
        for p, (a, b) in enumerate(pairs):
            if mask & (1 << a) and mask & (1 << b):
                cov |= 1 << p
        if cov:
            kept.append(mask)
            coverage.append(cov)
    full = (1 << n_pairs) - 1

    explored = 0
    for z in range(1, len(kept) + 1):
        for family in combinations(range(len(kept)), z):
            explored += 1
            covered = 0
            for idx in family:
                covered |= coverage[idx]
            if covered == full:
                witness = schema_from_global((_mask_members(kept[idx]) for idx in family), instance)
                return OracleResult(min_z=z, witness=witness, explored=explored)
    raise AssertionError("no covering family found for a feasible instance")
