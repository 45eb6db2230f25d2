from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from forest.canonical import canonical_order, tree_canonical
from forest.graph import Forest, disjoint_union


def _relabel_canonically(tree: Forest) -> Forest:
    order = canonical_order(tree)
    index = {v: i for i, v in enumerate(order)}
    return Forest.from_edges(tree.order, [(index[u], index[v]) for u, v in tree.edges()])


@lru_cache(maxsize=None)
def free_trees(order: int) -> Tuple[Forest, ...]:
    """All trees of the given order up to isomorphism, sorted by code.

    Grown by attaching one leaf to every vertex of every tree one smaller,
    deduplicated by canonical code.
    """
    if order <= 0:
        return ()
    if order == 1:
        return (Forest.empty(1),)
    found: Dict[bytes, Forest] = {}
    for smaller in free_trees(order - 1):
        for v in range(smaller.order):
            grown = Forest.from_edges(order, smaller.edges() + [(v, order - 1)])
            code = tree_canonical(grown).code
            if code not in found:
                found[code] = _relabel_canonically(grown)
    return tuple(found[code] for code in sorted(found))


def trees_up_to(order: int) -> List[Forest]:
    return [t for n in range(1, order + 1) for t in free_trees(n)]


def _tree_multisets(
    total: int, min_order: int, min_index: int
) -> Iterator[List[Tuple[int, int]]]:
    """Multisets of (order, index) with nondecreasing keys summing to total."""
    if total == 0:
        yield []
        return
    for n in range(min_order, total + 1):
        start = min_index if n == min_order else 0
        for i in range(start, len(free_trees(n))):
            for rest in _tree_multisets(total - n, n, i):
                yield [(n, i)] + rest


def forests_of_order(order: int, trees_only: bool = False) -> Iterator[Forest]:
    """All forests of the given order up to isomorphism."""
    if trees_only:
        yield from free_trees(order)
        return
    for multiset in _tree_multisets(order, 1, 0):
        yield disjoint_union([free_trees(n)[i] for n, i in multiset])
