"""Instance construction, required pairs, and feasibility."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mapsched import (
    InvalidInstanceError,
    Kind,
    PairId,
    check_feasibility,
    instance_from_doc,
    instance_to_doc,
    new_instance,
    required_pairs,
)
from mapsched.core import global_pairs, global_sizes


def test_smallest_nontrivial_a2a():
    inst = new_instance("a2a", 2, sizes=[1, 1])
    assert required_pairs(inst) == (PairId(0, 1),)


def test_nonpositive_capacity_rejected():
    with pytest.raises(InvalidInstanceError):
        new_instance("a2a", 0, sizes=[1, 1])


def test_single_cross_pair():
    inst = new_instance("x2y", 3, x_sizes=[1], y_sizes=[2])
    assert required_pairs(inst) == (PairId(0, 0),)


@pytest.mark.parametrize(
    "sizes",
    [[0, 1], [1, -2], [1.5, 1]],
)
def test_bad_sizes_rejected(sizes):
    with pytest.raises(InvalidInstanceError):
        new_instance("a2a", 2, sizes=sizes)


def test_kind_population_mismatch_rejected():
    with pytest.raises(InvalidInstanceError):
        new_instance("a2a", 2, sizes=[1], x_sizes=[1])
    with pytest.raises(InvalidInstanceError):
        new_instance("x2y", 2, sizes=[1], y_sizes=[1])


def test_empty_input_lists_are_legal():
    assert new_instance("a2a", 1).pair_count == 0
    assert new_instance("x2y", 1, x_sizes=[1]).pair_count == 0


def test_pair_counts():
    assert len(required_pairs(new_instance("a2a", 2, sizes=[1] * 4))) == 6
    assert len(required_pairs(new_instance("x2y", 2, x_sizes=[1] * 2, y_sizes=[1] * 3))) == 6
    assert required_pairs(new_instance("a2a", 2, sizes=[1])) == ()


def test_pairs_are_lexicographic_and_distinct():
    inst = new_instance("a2a", 2, sizes=[1] * 5)
    pairs = required_pairs(inst)
    assert pairs == tuple(sorted(pairs))
    assert len(set(pairs)) == len(pairs)
    assert all(p.first < p.second for p in pairs)


@given(m=st.integers(0, 50))
def test_a2a_pair_count_closed_form(m):
    inst = new_instance("a2a", 2, sizes=[1] * m)
    assert len(required_pairs(inst)) == math.comb(m, 2)


@given(m=st.integers(0, 50), n=st.integers(0, 50))
def test_x2y_pair_count_closed_form(m, n):
    inst = new_instance("x2y", 2, x_sizes=[1] * m, y_sizes=[1] * n)
    assert len(required_pairs(inst)) == m * n


def test_feasibility_examples():
    rep = check_feasibility(new_instance("a2a", 4, sizes=[3, 2]))
    assert not rep.feasible and rep.witness == PairId(0, 1)
    assert check_feasibility(new_instance("a2a", 2, sizes=[1, 1, 1])).feasible
    rep = check_feasibility(new_instance("x2y", 4, x_sizes=[2, 2], y_sizes=[3]))
    assert not rep.feasible and rep.witness == PairId(0, 0)


def test_witness_present_iff_infeasible():
    feasible = check_feasibility(new_instance("a2a", 2, sizes=[1, 1]))
    assert feasible.feasible and feasible.witness is None


@given(
    sizes=st.lists(st.integers(1, 6), min_size=2, max_size=8),
    q=st.integers(2, 12),
    bump=st.integers(0, 6),
)
def test_feasibility_monotone_in_q(sizes, q, bump):
    base = check_feasibility(new_instance("a2a", q, sizes=sizes))
    grown = check_feasibility(new_instance("a2a", q + bump, sizes=sizes))
    if base.feasible:
        assert grown.feasible


def test_global_indexing_for_x2y():
    inst = new_instance("x2y", 5, x_sizes=[2, 3], y_sizes=[1, 4])
    assert global_sizes(inst) == (2, 3, 1, 4)
    assert global_pairs(inst) == ((0, 2), (0, 3), (1, 2), (1, 3))


def test_doc_round_trip():
    for inst in (
        new_instance("a2a", 3, sizes=[1, 2]),
        new_instance("x2y", 4, x_sizes=[1], y_sizes=[2, 3]),
        new_instance("a2a", 1),
    ):
        assert instance_from_doc(instance_to_doc(inst)) == inst


def test_doc_rejects_unknown_fields():
    with pytest.raises(InvalidInstanceError):
        instance_from_doc({"kind": "a2a", "q": 2, "sizes": [1, 1], "comment": "hi"})


def test_doc_rejects_bad_shape():
    with pytest.raises(InvalidInstanceError):
        instance_from_doc({"kind": "a2a"})
    with pytest.raises(InvalidInstanceError):
        instance_from_doc({"kind": "diag", "q": 2})
    with pytest.raises(InvalidInstanceError):
        instance_from_doc([1, 2, 3])


def test_kind_is_normalized_from_strings():
    inst = new_instance("x2y", 2, x_sizes=[1], y_sizes=[1])
    assert inst.kind is Kind.X2Y
