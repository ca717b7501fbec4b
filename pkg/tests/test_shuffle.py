"""Shuffle simulation: ownership, shipped bytes, exactly-once outputs."""

from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from mapsched import (
    InvalidSchemaError,
    MappingSchema,
    PairId,
    XYReducer,
    metrics,
    new_instance,
    plan_ownership,
    required_pairs,
    simulate,
    solve_exact,
)
from mapsched.core import check_feasibility

UNIT3 = new_instance("a2a", 2, sizes=[1, 1, 1])
TRIANGLE = MappingSchema("a2a", [{0, 1}, {0, 2}, {1, 2}])


def test_owner_is_min_index_reducer():
    inst = new_instance("a2a", 2, sizes=[1, 1])
    schema = MappingSchema("a2a", [{0, 1}, {0, 1}])
    plan = plan_ownership(schema, inst)
    assert plan.owner[PairId(0, 1)] == 0


def test_triangle_ownership_one_per_reducer():
    plan = plan_ownership(TRIANGLE, UNIT3)
    assert sorted(plan.owner.values()) == [0, 1, 2]


def test_ownership_error_names_missing_pair():
    schema = MappingSchema("a2a", [{0, 1}])
    with pytest.raises(InvalidSchemaError) as exc:
        plan_ownership(schema, UNIT3)
    assert exc.value.pair == (0, 2)


def test_simulate_triangle():
    report = simulate(TRIANGLE, UNIT3)
    assert report.bytes_shipped == 6
    assert report.outputs_produced == 3


def test_simulate_all_in_one():
    inst = new_instance("a2a", 4, sizes=[1] * 4)
    report = simulate(MappingSchema("a2a", [{0, 1, 2, 3}]), inst)
    assert report.bytes_shipped == 4 and report.outputs_produced == 6


def test_simulate_x2y_grid():
    inst = new_instance("x2y", 2, x_sizes=[1, 1], y_sizes=[1, 1])
    schema = MappingSchema(
        "x2y",
        [XYReducer(frozenset({i}), frozenset({j})) for i in range(2) for j in range(2)],
    )
    report = simulate(schema, inst)
    assert report.bytes_shipped == 8 and report.outputs_produced == 4


def test_per_reducer_stats_account_everything():
    report = simulate(TRIANGLE, UNIT3)
    assert sum(s.outputs_computed for s in report.per_reducer) == report.outputs_produced
    assert sum(s.load for s in report.per_reducer) == report.bytes_shipped
    assert [s.inputs_hosted for s in report.per_reducer] == [2, 2, 2]


def test_exactly_once_ownership():
    inst = new_instance("a2a", 3, sizes=[1, 1, 1, 1])
    schema = MappingSchema("a2a", [{0, 1, 2}, {0, 1, 3}, {2, 3}])
    plan = plan_ownership(schema, inst)
    counts = Counter(plan.owner.keys())
    assert set(counts) == set(required_pairs(inst))
    assert all(v == 1 for v in counts.values())


def test_bytes_equal_metrics_cost_across_solved_corpus():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 25:
        m = int(rng.integers(2, 6))
        inst = new_instance("a2a", int(rng.integers(2, 8)), sizes=[int(v) for v in rng.integers(1, 4, m)])
        if not check_feasibility(inst).feasible:
            continue
        schema = solve_exact(inst).schema
        assert simulate(schema, inst).bytes_shipped == metrics(schema, inst).communication_cost
        checked += 1


def test_simulation_independent_of_reducer_order():
    inst = new_instance("x2y", 5, x_sizes=[1, 2], y_sizes=[2, 1])
    base = MappingSchema(
        "x2y",
        [XYReducer(frozenset({0, 1}), frozenset({1})), XYReducer(frozenset({0, 1}), frozenset({0}))],
    )
    flipped = MappingSchema("x2y", tuple(reversed(base.reducers)))
    a, b = simulate(base, inst), simulate(flipped, inst)
    assert a.bytes_shipped == b.bytes_shipped
    assert a.outputs_produced == b.outputs_produced
    assert sorted((s.inputs_hosted, s.load) for s in a.per_reducer) == sorted(
        (s.inputs_hosted, s.load) for s in b.per_reducer
    )


def test_capacity_violation_blocks_simulation():
    inst = new_instance("a2a", 2, sizes=[1, 1, 1])
    with pytest.raises(InvalidSchemaError):
        simulate(MappingSchema("a2a", [{0, 1, 2}]), inst)
