import random

import pytest
from hypothesis import given, settings, strategies as st

from relfix.bmetric import BMetricSpace
from relfix.relation import (
    BinaryRelation,
    check_bd_self_closed,
    find_path,
    is_complete,
    is_f_closed,
    is_r_directed,
    is_transitive,
    related,
    relation_diagnostics,
    symmetric_closure,
    transitive_closure,
)

from conftest import example_map, example_relation, example_space


@pytest.fixture
def ex():
    space = example_space()
    return space, example_relation(space)


def vp(space, pairs):
    return BinaryRelation.from_value_pairs(space, pairs)


def test_related(ex):
    space, R = ex
    one, four = space.point_by_value(1), space.point_by_value(4)
    assert related(R, one, four)
    assert not related(R, four, one)
    assert not related(BinaryRelation(frozenset()), one, four)


def test_symmetric_closure(ex):
    space, R = ex
    closed = symmetric_closure(R)
    expected = set(R.pairs) | {
        (space.point_by_value(4).id, space.point_by_value(v).id) for v in (1, 2, 3)
    }
    assert set(closed.pairs) == expected
    assert symmetric_closure(closed).pairs == closed.pairs


def test_singleton_closure():
    assert symmetric_closure(BinaryRelation({(0, 1)})).pairs == frozenset({(0, 1), (1, 0)})


def test_is_transitive(ex):
    _, R = ex
    ok, w = is_transitive(R)
    assert ok and not w
    ok, w = is_transitive(BinaryRelation({(0, 1), (1, 2)}))
    assert not ok and (0, 1, 2) in w


def test_transitive_closure(ex):
    _, R = ex
    assert transitive_closure(BinaryRelation({(0, 1), (1, 2)})).pairs == frozenset(
        {(0, 1), (1, 2), (0, 2)}
    )
    assert transitive_closure(R).pairs == R.pairs  # already transitive
    assert transitive_closure(BinaryRelation(frozenset())).pairs == frozenset()


def test_is_complete(ex):
    space, R = ex
    # every unordered distinct pair of {1,2,3,4} appears in some direction
    assert is_complete(R, space)[0]
    full = BinaryRelation({(a, b) for a in range(4) for b in range(4)})
    assert is_complete(full, space)[0]
    ok, w = is_complete(BinaryRelation(frozenset()), space)
    assert not ok and (0, 1) in w


def test_is_f_closed(ex):
    space, R = ex
    fmap = example_map(space).mapping
    assert is_f_closed(R, fmap)[0]
    assert is_f_closed(BinaryRelation(frozenset()), fmap)[0]  # vacuous
    small = vp(space, [(3, 4)])
    ok, w = is_f_closed(small, fmap)
    assert not ok
    assert w == [(space.point_by_value(3).id, space.point_by_value(4).id)]


def test_is_r_directed(ex):
    space, R = ex
    D = [space.point_by_value(1), space.point_by_value(2)]
    assert is_r_directed(D, R, space)[0]  # common successor 3: (1,3),(2,3) in R
    assert is_r_directed([space.point_by_value(1)], R, space)[0]
    ok, _ = is_r_directed(D, BinaryRelation(frozenset()), space)
    assert not ok


def test_find_path(ex):
    space, R = ex
    one, four = space.point_by_value(1), space.point_by_value(4)
    path = find_path(R, one, four)
    assert path.nodes == (one.id, four.id) and path.length == 1
    assert find_path(R, four, one, max_len=len(space)) is None
    loop = BinaryRelation({(2, 2)})
    assert find_path(loop, 2, 2).nodes == (2, 2)


def test_find_path_tie_breaking():
    # two shortest 2-step routes 0->x->3; the smaller intermediate wins
    R = BinaryRelation({(0, 2), (0, 1), (1, 3), (2, 3)})
    assert find_path(R, 0, 3).nodes == (0, 1, 3)


def test_find_path_respects_max_len():
    chain = BinaryRelation({(0, 1), (1, 2), (2, 3)})
    assert find_path(chain, 0, 3, max_len=2) is None
    assert find_path(chain, 0, 3, max_len=3).nodes == (0, 1, 2, 3)


def test_bd_self_closed(ex):
    space, R = ex
    res = check_bd_self_closed(space, R)
    assert res.applicable and res.holds
    assert "eventually-constant" in res.justification

    single = BMetricSpace.from_values([1])
    assert check_bd_self_closed(single, BinaryRelation(frozenset())).holds

    sampled = BMetricSpace.from_values([1, 2, 3], grid_sample=True)
    res = check_bd_self_closed(sampled, R)
    assert not res.applicable and res.holds is None


def test_relation_diagnostics(ex):
    space, R = ex
    diag = relation_diagnostics(R, space)
    # nonreflexive, nonirreflexive, nonsymmetric, nonantisymmetric
    assert not diag.reflexive
    assert not diag.irreflexive
    assert not diag.symmetric
    assert not diag.antisymmetric
    assert space.point_by_value(1).id in diag.witnesses["irreflexive"]


relations = st.sets(
    st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=20
).map(lambda s: BinaryRelation(frozenset(s)))


@given(relations)
def test_transitive_closure_properties(R):
    closed = transitive_closure(R)
    assert R.pairs <= closed.pairs
    assert is_transitive(closed)[0]
    assert transitive_closure(closed).pairs == closed.pairs


@given(relations, st.integers(0, 5), st.integers(0, 5))
def test_find_path_matches_reachability(R, src, dst):
    # oracle: one-step-at-a-time reachability with at least one edge taken
    frontier = set(R.successors(src))
    reachable = set(frontier)
    while frontier:
        frontier = {c for b in frontier for c in R.successors(b)} - reachable
        reachable |= frontier
    path = find_path(R, src, dst, max_len=36)
    assert (path is not None) == (dst in reachable)
    if path is not None:
        assert path.nodes[0] == src and path.nodes[-1] == dst
        for a, b in zip(path.nodes, path.nodes[1:]):
            assert related(R, a, b)


@given(relations, st.integers(0, 5), st.integers(0, 5))
def test_transitivity_collapses_paths(R, src, dst):
    closed = transitive_closure(R)
    path = find_path(closed, src, dst, max_len=36)
    if path is not None:
        assert related(closed, src, dst)


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_symmetric_closure_preserves_f_closedness(seed):
    # random F-closed relation; its symmetrization must stay F-closed
    from instance_gen import random_relation_and_map

    R, mapping = random_relation_and_map(random.Random(seed))
    assert is_f_closed(R, mapping)[0]
    assert is_f_closed(symmetric_closure(R), mapping)[0]
