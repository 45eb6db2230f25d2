from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest.canonical import NO_PARENT
from forest.embedding import verify_embedding
from forest.errors import NotConnected, SizeLimit
from forest.graph import Forest, components, disjoint_union, path, star
from schema import OracleBudget
from solver.exact_three import (
    ExactThree,
    child_partitions,
    dp_type2,
    enumerate_partitions,
    exact3_supertree,
    type1_min,
)
from solver.greedy import greedy_supertree
from solver.oracle import oracle_min_superforest
from tests.helpers import random_tree, seeds


def _check(trees, result):
    assert result.tree.is_tree()
    assert result.order == result.tree.order
    for tree, embedding in zip(trees, result.embeddings):
        assert verify_embedding(tree, result.tree, embedding)


def _as_sets(partitions):
    return {frozenset(frozenset(part) for part in p.parts) for p in partitions}


def test_partitions_of_two_singletons():
    found = _as_sets(child_partitions(["a"], ["b"], []))
    assert found == {
        frozenset({frozenset("a"), frozenset("b")}),
        frozenset({frozenset("ab")}),
    }


def test_partitions_of_three_singletons():
    found = list(child_partitions(["a"], ["b"], ["c"]))
    assert len(found) == 5
    assert len(_as_sets(found)) == 5


def test_partitions_keep_one_per_group():
    found = list(enumerate_partitions([["a1", "a2"], [], []]))
    assert found == [[("a1",), ("a2",)]]


@given(sizes=st.lists(st.integers(0, 3), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_partitions_are_distinct_and_admissible(sizes):
    groups = [[(g, i) for i in range(n)] for g, n in enumerate(sizes)]
    found = list(enumerate_partitions(groups))
    distinct = {frozenset(frozenset(part) for part in parts) for parts in found}
    assert len(distinct) == len(found)
    for parts in found:
        assert sorted(x for part in parts for x in part) == sorted(
            x for members in groups for x in members
        )
        for part in parts:
            assert len({g for g, _ in part}) == len(part)


def test_partition_cap():
    with pytest.raises(SizeLimit):
        list(enumerate_partitions([list(range(5)), list(range(5)), list(range(3))], cap=12))
    with pytest.raises(SizeLimit):
        exact3_supertree(star(5), star(5), star(5))


def test_type1_joins():
    order, result = type1_min(path(2), path(1), path(1))
    assert order == 2
    assert result.tree.order == 2
    order, result = type1_min(path(5), path(2), path(2))
    assert order == 5
    for tree, embedding in zip((path(5), path(2), path(2)), result.embeddings):
        assert verify_embedding(tree, result.tree, embedding)
    images = set(result.embeddings[1].mapping) | set(result.embeddings[2].mapping)
    assert len(images) == 4


def test_type1_respects_stop_at():
    assert type1_min(path(5), path(2), path(2), stop_at=5) is None


def test_type1_spider_triple():
    trees = [path(3), star(3), path(5)]
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        order, _ = type1_min(trees[i], trees[j], trees[k])
        assert order >= 6


def test_type2_rooted_examples():
    single = Forest.empty(1)
    assert dp_type2([single, single, single], [0, 0, 0])[0] == 1
    order, tree, embeddings = dp_type2([path(2), path(2), path(3)], [0, 0, 0])
    assert order == 3
    assert tree.order == 3
    for t, e in zip((path(2), path(2), path(3)), embeddings):
        assert verify_embedding(t, tree, e)
        assert e(0) == 0


def test_type2_identical_rooting():
    tree = random_tree(5, 9, max_degree=3)
    order, built, _ = dp_type2([tree, tree, tree], [4, 4, 4])
    assert order == 9
    assert built.order == 9


@pytest.mark.parametrize(
    "trees,order",
    [
        ([path(2), path(3), path(4)], 4),
        ([path(3), star(3), path(5)], 6),
        ([path(4), path(4), path(4)], 4),
        ([Forest.empty(1), path(2), Forest.empty(1)], 2),
    ],
)
def test_small_instances(trees, order):
    result = exact3_supertree(*trees)
    assert result.order == order
    _check(trees, result)


def test_reports_statistics():
    result = exact3_supertree(path(3), star(3), path(5))
    assert result.kind in (1, 2)
    assert result.max_degree == 3
    assert result.dp_states > 0


def test_rejects_forests():
    with pytest.raises(NotConnected):
        exact3_supertree(path(2), disjoint_union([path(1), path(1)]), path(2))


@given(seed=seeds, n=st.lists(st.integers(1, 8), min_size=3, max_size=3))
@settings(max_examples=200, deadline=None)
def test_matches_oracle(seed, n):
    trees = [random_tree(seed + i, order, max_degree=3) for i, order in enumerate(n)]
    result = exact3_supertree(*trees)
    _check(trees, result)
    assert len(components(result.tree)) == 1
    assert result.order <= greedy_supertree(trees)[0].order
    budget = OracleBudget(max_host_order=result.order)
    smallest = oracle_min_superforest(trees, budget)
    assert len(components(smallest.forest)) == 1
    assert result.order == smallest.order


@given(seed=seeds, n=st.lists(st.integers(1, 4), min_size=3, max_size=3))
@settings(max_examples=20, deadline=None)
def test_shared_table_matches_fresh_solver_per_root_triple(seed, n):
    trees = [random_tree(seed + i, order, max_degree=3) for i, order in enumerate(n)]
    shared = ExactThree(trees)
    for roots in product(*(range(order) for order in n)):
        assert shared.type2_order(roots) == ExactThree(trees).type2_order(roots)


@given(seed=seeds, n=st.lists(st.integers(1, 9), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_never_worse_than_greedy(seed, n):
    trees = [random_tree(seed + i, order, max_degree=3) for i, order in enumerate(n)]
    result = exact3_supertree(*trees)
    _check(trees, result)
    assert result.order <= greedy_supertree(trees)[0].order
    assert result.order >= max(n)


@given(seed=seeds, n=st.lists(st.integers(1, 7), min_size=3, max_size=3))
@settings(max_examples=25, deadline=None)
def test_stored_values_are_bounded(seed, n):
    trees = [random_tree(seed + i, order, max_degree=3) for i, order in enumerate(n)]
    solver = ExactThree(trees)
    for r1 in range(n[0]):
        solver.type2_order([r1, 0, n[2] - 1])
    size = solver.table.size
    for key, value in solver.dp.values.items():
        if not key:
            continue
        # the anchors share one root vertex
        shared = len(key) - 1
        assert max(size[s] for s in key) <= value <= sum(size[s] for s in key) - shared
    root_shape = solver.index[0].shape(NO_PARENT, 0)
    assert solver.f([root_shape]) == n[0]
