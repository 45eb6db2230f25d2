import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest.canonical import tree_canonical
from forest.embedding import contains_induced, verify_embedding
from forest.enumerate import free_trees
from forest.errors import BudgetExceeded, EmptyInput
from forest.graph import Forest, components, disjoint_union, path, star
from instances.reductions import gen_prop1
from schema import OracleBudget, ThreePartitionInstance
from solver.oracle import _grown_supertrees, oracle_max_subforest, oracle_min_superforest
from solver.pairwise import mcs_trees, supertree2
from tests.helpers import random_tree, seeds


def _check_sub(forests, result):
    for host, embedding in zip(forests, result.embeddings):
        assert verify_embedding(result.forest, host, embedding)


def _check_super(forests, result):
    for pattern, embedding in zip(forests, result.embeddings):
        assert verify_embedding(pattern, result.forest, embedding)


def test_max_subforest_examples():
    forests = [path(4), star(3)]
    result = oracle_max_subforest(forests)
    assert result.order == 3
    _check_sub(forests, result)
    tree = random_tree(11, 7)
    assert oracle_max_subforest([tree, tree]).order == 7


def test_max_subforest_may_be_disconnected():
    forests = [path(7), star(4)]
    assert oracle_max_subforest(forests).order == 4
    assert oracle_max_subforest(forests, connected_only=True).order == 3


def test_min_superforest_examples():
    result = oracle_min_superforest([path(3), star(3)])
    assert result.order == 4
    result = oracle_min_superforest([path(5), star(3)])
    assert result.order == 6
    assert result.forest.is_tree()
    _check_super([path(5), star(3)], result)
    assert oracle_min_superforest([star(4)]).order == 5


def test_min_superforest_of_forests():
    two = disjoint_union([path(2), path(2)])
    result = oracle_min_superforest([two, path(3)])
    assert result.order == 5
    _check_super([two, path(3)], result)
    assert oracle_min_superforest([Forest.empty()]).order == 0


def test_budgets():
    with pytest.raises(BudgetExceeded):
        oracle_min_superforest([path(5), star(3)], OracleBudget(max_host_order=5))
    with pytest.raises(BudgetExceeded):
        oracle_max_subforest([path(9), path(9)], OracleBudget(max_subset_order=8))
    with pytest.raises(EmptyInput):
        oracle_max_subforest([])
    with pytest.raises(EmptyInput):
        oracle_min_superforest([])


def test_partition_pair():
    pair = gen_prop1(ThreePartitionInstance(m=2, a=[2, 2, 3, 2, 2, 3]))
    result = oracle_max_subforest([pair.t1, pair.t2])
    assert result.order == pair.t1.order - 1 == 14
    _check_sub([pair.t1, pair.t2], result)


def test_grown_levels_are_every_tree_of_each_order():
    counts = [len(level) for _, level in _grown_supertrees(Forest.empty(1), 9)]
    assert counts == [1] + [nx.number_of_nonisomorphic_trees(n) for n in range(2, 10)]


def test_grown_levels_are_the_supertrees_of_the_base():
    for order, level in _grown_supertrees(path(4), 7):
        expected = {
            tree_canonical(t).code
            for t in free_trees(order)
            if contains_induced(path(4), t) is not None
        }
        assert {tree_canonical(t).code for t in level} == expected


@given(seed=seeds, m=st.integers(1, 8), n=st.integers(1, 8))
@settings(max_examples=300, deadline=None)
def test_pairwise_solvers_agree(seed, m, n):
    first, second = random_tree(seed, m), random_tree(seed + 5, n)
    smallest = oracle_min_superforest([first, second])
    _check_super([first, second], smallest)
    assert len(components(smallest.forest)) == 1
    assert supertree2(first, second).order == smallest.order
    common = oracle_max_subforest([first, second], connected_only=True)
    assert common.forest.is_tree()
    assert mcs_trees(first, second).size == common.order
    assert smallest.order == m + n - common.order
