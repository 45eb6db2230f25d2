from itertools import combinations
from typing import Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np
from hypothesis import strategies as st

from forest.graph import Forest, component_vertex_sets, random_forest, to_networkx

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def relabel(forest: Forest, permutation: List[int]) -> Forest:
    return Forest.from_edges(
        forest.order, [(permutation[u], permutation[v]) for u, v in forest.edges()]
    )


def shuffled(forest: Forest, seed: int) -> Forest:
    rng = np.random.default_rng(seed)
    return relabel(forest, [int(x) for x in rng.permutation(forest.order)])


def random_tree(seed: int, order: int, max_degree: Optional[int] = None) -> Forest:
    return random_forest(seed, order, max_degree=max_degree)


def nx_code(forest: Forest) -> str:
    """Isomorphism invariant computed by networkx; complete on forests."""
    if forest.order == 0:
        return ""
    graph = to_networkx(forest)
    return nx.weisfeiler_lehman_graph_hash(graph, iterations=max(1, forest.order))


def induced_subsets(forest: Forest) -> Iterator[Tuple[Tuple[int, ...], Forest]]:
    for size in range(forest.order + 1):
        for subset in combinations(range(forest.order), size):
            yield subset, forest.induced(subset)[0]


def subtree_codes(tree: Forest) -> Set[Tuple[int, str]]:
    return {
        (sub.order, nx_code(sub))
        for _, sub in induced_subsets(tree)
        if sub.order > 0 and nx.is_tree(to_networkx(sub))
    }


def brute_mcs_size(first: Forest, second: Forest) -> int:
    common = subtree_codes(first) & subtree_codes(second)
    return max(order for order, _ in common)


def brute_census_set(forest: Forest, trees: List[Forest], delta: int) -> Set[Tuple[int, ...]]:
    """Census vectors of every induced subforest with components of order <= delta."""
    codes = [nx_code(t) for t in trees]
    found = set()
    for _, sub in induced_subsets(forest):
        counts = [0] * len(trees)
        for part in component_vertex_sets(sub):
            if len(part) > delta:
                break
            counts[codes.index(nx_code(sub.induced(part)[0]))] += 1
        else:
            found.add(tuple(counts))
    return found
