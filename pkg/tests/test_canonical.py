import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest.canonical import (
    NO_PARENT,
    ShapeIndex,
    ShapeTable,
    canonical_order,
    forest_canonical,
    rooted_canonical,
    tree_canonical,
)
from forest.errors import NotConnected
from forest.graph import disjoint_union, path, root_at, star, to_networkx
from tests.helpers import random_tree, seeds, shuffled


def test_rooted_codes():
    at_center = rooted_canonical(root_at(path(3), [1]), 1)
    at_leaf = rooted_canonical(root_at(path(3), [0]), 0)
    assert at_center != at_leaf
    assert at_center.order == at_leaf.order == 3

    relabeled = shuffled(star(4), 11)
    center = next(v for v in range(5) if relabeled.degree(v) == 4)
    assert rooted_canonical(root_at(relabeled, [center]), center) == rooted_canonical(
        root_at(star(4), [0]), 0
    )

    single = rooted_canonical(root_at(path(1), [0]), 0)
    assert single.code == b"()"
    assert single.order == 1


def test_tree_codes():
    assert tree_canonical(path(4)) == tree_canonical(shuffled(path(4), 5))
    assert tree_canonical(path(4)) != tree_canonical(star(3))
    code = tree_canonical(path(6))
    for seed in range(10):
        assert tree_canonical(shuffled(path(6), seed)) == code


def test_tree_code_needs_a_tree():
    with pytest.raises(NotConnected):
        tree_canonical(disjoint_union([path(2), path(2)]))


@given(first=seeds, second=seeds, order=st.integers(min_value=1, max_value=7))
@settings(max_examples=300, deadline=None)
def test_codes_agree_with_isomorphism(first, second, order):
    a, b = random_tree(first, order), random_tree(second, order)
    same = nx.is_isomorphic(to_networkx(a), to_networkx(b))
    assert (tree_canonical(a) == tree_canonical(b)) == same


@given(seed=seeds, shuffle=seeds, order=st.integers(min_value=1, max_value=30))
@settings(max_examples=100, deadline=None)
def test_canonical_order_is_an_isomorphism(seed, shuffle, order):
    a = random_tree(seed, order)
    b = shuffled(a, shuffle)
    pairing = dict(zip(canonical_order(a), canonical_order(b)))
    assert sorted(pairing) == list(range(order))
    assert all(b.has_edge(pairing[u], pairing[v]) for u, v in a.edges())


def test_forest_code_ignores_component_order():
    first = disjoint_union([path(3), star(3), path(1)])
    second = disjoint_union([path(1), star(3), path(3)])
    assert forest_canonical(first) == forest_canonical(second)
    assert forest_canonical(first) != forest_canonical(disjoint_union([path(4), star(3)]))


@given(seed=seeds, order=st.integers(min_value=2, max_value=25))
@settings(max_examples=50, deadline=None)
def test_directed_edge_shapes_do_not_depend_on_rooting(seed, order):
    tree = random_tree(seed, order)
    table = ShapeTable()
    index = ShapeIndex(tree, table)
    for root in (0, order - 1):
        rooted = root_at(tree, [root])
        other = ShapeIndex(tree, table)
        for v in range(order):
            p = rooted.parent[v]
            p = NO_PARENT if p is None else p
            assert other.shape(p, v) == index.shape(p, v)
            assert table.size[index.shape(p, v)] == rooted.subtree_size[v]
            assert sorted(index.subtree(p, v)) == sorted(rooted.descendants(v))


def test_shape_table_interns_once():
    table = ShapeTable()
    index = ShapeIndex(star(5), table)
    leaves = {index.shape(0, v) for v in range(1, 6)}
    assert leaves == {table.leaf}
    assert table.size[index.shape(NO_PARENT, 0)] == 6
    assert len(table) == 2
