"""Exhaustive reference solvers for small instances.

Both raise BudgetExceeded instead of answering when a limit in the
OracleBudget is hit, so an unknown result never looks like a solved one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from forest.canonical import forest_canonical, tree_canonical
from forest.embedding import Embedding, contains_induced
from forest.enumerate import forests_of_order
from forest.errors import BudgetExceeded, EmptyInput
from forest.graph import Forest
from schema.solver import OracleBudget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    forest: Forest
    embeddings: Tuple[Embedding, ...]

    @property
    def order(self) -> int:
        return self.forest.order


def _embed_all(
    pattern: Forest, hosts: Sequence[Forest], node_budget: int
) -> Optional[List[Embedding]]:
    found: List[Embedding] = []
    for host in hosts:
        embedding = contains_induced(pattern, host, node_budget)
        if embedding is None:
            return None
        found.append(embedding)
    return found


def oracle_max_subforest(
    forests: Sequence[Forest],
    budget: Optional[OracleBudget] = None,
    connected_only: bool = False,
) -> OracleResult:
    """Largest forest induced in every input, by subsets of a smallest input.

    With `connected_only` only nonempty trees are considered.
    """
    if not forests:
        raise EmptyInput("the subforest oracle needs at least one forest")
    budget = budget or OracleBudget()
    source = min(range(len(forests)), key=lambda i: (forests[i].order, i))
    smallest = forests[source]
    if smallest.order > budget.max_subset_order:
        raise BudgetExceeded(
            f"smallest input has order {smallest.order}, above "
            f"max_subset_order {budget.max_subset_order}"
        )

    seen: Set[Tuple[bytes, ...]] = set()
    lowest = 1 if connected_only else 0
    for size in range(smallest.order, lowest - 1, -1):
        for subset in combinations(range(smallest.order), size):
            candidate, back = smallest.induced(subset)
            if connected_only and not candidate.is_tree():
                continue
            code = forest_canonical(candidate)
            if code in seen:
                continue
            seen.add(code)
            found = _embed_all(candidate, forests, budget.node_budget)
            if found is None:
                continue
            found[source] = Embedding(tuple(back))
            logger.debug(
                "subforest oracle: order %d after %d distinct candidates", size, len(seen)
            )
            return OracleResult(forest=candidate, embeddings=tuple(found))
    raise EmptyInput("inputs share no nonempty common tree")


def _grown_supertrees(base: Forest, limit: int) -> Iterator[Tuple[int, List[Forest]]]:
    """Every tree containing `base` induced, by order, up to `limit`.

    Such a tree is reached from `base` by attaching one leaf at a time, so
    each level is the previous one with a leaf added anywhere, up to
    isomorphism.
    """
    level = [base]
    order = base.order
    while order <= limit:
        yield order, level
        if order == limit:
            return
        found: Dict[bytes, Forest] = {}
        for tree in level:
            for v in range(order):
                grown = Forest.from_edges(order + 1, tree.edges() + [(v, order)])
                found.setdefault(tree_canonical(grown).code, grown)
        level = [found[code] for code in sorted(found)]
        order += 1


def _forest_levels(start: int, limit: int) -> Iterator[Tuple[int, Iterable[Forest]]]:
    for order in range(start, limit + 1):
        yield order, forests_of_order(order)


def oracle_min_superforest(
    forests: Sequence[Forest], budget: Optional[OracleBudget] = None
) -> OracleResult:
    """Smallest forest containing every input induced.

    When every input is a tree only trees are tried, since a minimum
    superforest of trees is connected; those are grown from the largest
    input instead of enumerating every tree of each order.
    """
    if not forests:
        raise EmptyInput("the superforest oracle needs at least one forest")
    budget = budget or OracleBudget()
    start = max(f.order for f in forests)
    if start == 0:
        empty = tuple(Embedding(()) for _ in forests)
        return OracleResult(forest=Forest.empty(), embeddings=empty)
    levels: Iterator[Tuple[int, Iterable[Forest]]]
    if all(f.is_tree() for f in forests):
        base = max(forests, key=lambda f: f.order)
        levels = _grown_supertrees(base, budget.max_host_order)
    else:
        levels = _forest_levels(start, budget.max_host_order)
    tried = 0
    for order, hosts in levels:
        for host in hosts:
            tried += 1
            found = _embed_all_into(forests, host, budget.node_budget)
            if found is not None:
                logger.debug(
                    "superforest oracle: order %d after %d candidates", order, tried
                )
                return OracleResult(forest=host, embeddings=tuple(found))
    raise BudgetExceeded(
        f"no superforest up to order {budget.max_host_order} ({tried} candidates tried)"
    )


def _embed_all_into(
    patterns: Sequence[Forest], host: Forest, node_budget: int
) -> Optional[List[Embedding]]:
    found: List[Embedding] = []
    for pattern in patterns:
        embedding = contains_induced(pattern, host, node_budget)
        if embedding is None:
            return None
        found.append(embedding)
    return found
