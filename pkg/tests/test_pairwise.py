import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest.canonical import NO_PARENT, ShapeIndex, ShapeTable
from forest.embedding import verify_embedding
from forest.errors import NotConnected
from forest.graph import disjoint_union, path, root_at, star
from solver.pairwise import (
    AnchoredMcs,
    mcs_rooted_anchored,
    mcs_trees,
    supertree2,
    supertree2_rooted,
)
from tests.helpers import brute_mcs_size, nx_code, random_tree, seeds, shuffled


def _check_mcs(first, second, result):
    assert result.common.is_tree()
    assert verify_embedding(result.common, first, result.embed1)
    assert verify_embedding(result.common, second, result.embed2)


def test_star_and_path():
    k13, p4 = star(3), path(4)
    mcs = mcs_trees(k13, p4)
    assert mcs.size == 3
    _check_mcs(k13, p4, mcs)
    result = supertree2(k13, p4)
    assert result.order == 5
    assert result.common_size == 3
    assert verify_embedding(k13, result.tree, result.embed1)
    assert verify_embedding(p4, result.tree, result.embed2)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 5), (4, 4), (7, 3)])
def test_two_paths(m, n):
    assert mcs_trees(path(m), path(n)).size == min(m, n)
    assert supertree2(path(m), path(n)).order == max(m, n)


def test_anchored_star_center_against_path_end():
    result = mcs_rooted_anchored(root_at(star(3), [0]), 0, root_at(path(4), [0]), 0)
    assert result.size == 2
    assert result.embed1(0) == 0
    assert result.embed2(0) == 0


def test_rooted_supertree_keeps_anchor_at_root():
    result = supertree2_rooted(root_at(path(3), [0]), 0, root_at(star(2), [0]), 0)
    assert result.order == 4
    assert result.root == 0
    for pattern, embedding in zip(result.patterns, result.embeddings):
        assert embedding(0) == result.root
        assert verify_embedding(pattern, result.tree, embedding)


def test_rejects_forests():
    with pytest.raises(NotConnected):
        mcs_trees(disjoint_union([path(2), path(2)]), path(3))


@given(
    seed=seeds,
    m=st.integers(min_value=1, max_value=60),
    n=st.integers(min_value=1, max_value=60),
)
@settings(max_examples=500, deadline=None)
def test_supertree_order_identity(seed, m, n):
    first, second = random_tree(seed, m), random_tree(seed + 1, n)
    mcs = mcs_trees(first, second)
    _check_mcs(first, second, mcs)
    result = supertree2(first, second)
    assert result.order == m + n - mcs.size
    assert verify_embedding(first, result.tree, result.embed1)
    assert verify_embedding(second, result.tree, result.embed2)


@given(
    seed=seeds,
    m=st.integers(min_value=1, max_value=8),
    n=st.integers(min_value=1, max_value=8),
)
@settings(max_examples=300, deadline=None)
def test_mcs_matches_subset_enumeration(seed, m, n):
    first, second = random_tree(seed, m), random_tree(seed + 7, n)
    assert mcs_trees(first, second).size == brute_mcs_size(first, second)


@given(seed=seeds, n=st.integers(min_value=1, max_value=30))
@settings(max_examples=60, deadline=None)
def test_mcs_is_symmetric_and_relabeling_invariant(seed, n):
    first, second = random_tree(seed, n), random_tree(seed + 3, n + 2)
    size = mcs_trees(first, second).size
    assert mcs_trees(second, first).size == size
    assert mcs_trees(shuffled(first, seed), second).size == size


@given(seed=seeds, n=st.integers(min_value=1, max_value=30))
@settings(max_examples=40, deadline=None)
def test_tree_with_itself(seed, n):
    tree = random_tree(seed, n)
    result = supertree2(tree, shuffled(tree, seed + 1))
    assert result.order == n
    assert nx_code(result.tree) == nx_code(tree)


def _anchors(tree):
    for v in range(tree.order):
        yield NO_PARENT, v
    for u, w in tree.edges():
        yield u, w
        yield w, u


@given(seed=seeds, m=st.integers(1, 8), n=st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_anchored_memo_is_root_independent(seed, m, n):
    first, second = random_tree(seed, m), random_tree(seed + 2, n)
    table = ShapeTable()
    index_a, index_b = ShapeIndex(first, table), ShapeIndex(second, table)
    shared = AnchoredMcs(table)
    for r1 in range(m):
        for r2 in range(n):
            value = shared.solve(index_a.shape(NO_PARENT, r1), index_b.shape(NO_PARENT, r2))
            fresh = mcs_rooted_anchored(root_at(first, [r1]), r1, root_at(second, [r2]), r2)
            assert value == fresh.size

    other = ShapeTable()
    other_a, other_b = ShapeIndex(first, other), ShapeIndex(second, other)
    recomputed = AnchoredMcs(other)
    for p, u in reversed(list(_anchors(first))):
        for q, v in reversed(list(_anchors(second))):
            expected = recomputed.solve(other_a.shape(p, u), other_b.shape(q, v))
            assert shared.solve(index_a.shape(p, u), index_b.shape(q, v)) == expected
