from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from forest.embedding import Embedding
from forest.errors import EmptyInput
from forest.graph import Forest
from solver.pairwise import SupertreeResult, require_tree, supertree2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyTrace:
    per_rotation_orders: List[int]
    chosen_index: int
    bound: Fraction

    def within_bound(self, optimum: int) -> bool:
        """Whether the chosen order respects the guarantee against `optimum`."""
        return self.per_rotation_orders[self.chosen_index] <= self.bound * optimum


def greedy_bound(k: int) -> Fraction:
    if k < 1:
        raise ValueError(f"bound needs at least one tree, got k={k}")
    return Fraction(k, 2) - Fraction(1, 2) + Fraction(1, k)


def greedy_rotation(trees: Sequence[Forest], start: int) -> SupertreeResult:
    """Fold the pairwise supertree over the list starting at `start`.

    Embeddings of every input into the fold are carried along: after each
    step the existing ones are composed with the step's first embedding.
    """
    k = len(trees)
    current = trees[start]
    embeddings: List[Optional[Embedding]] = [None] * k
    embeddings[start] = Embedding.identity(current.order)
    for j in range(1, k):
        index = (start + j) % k
        step = supertree2(current, trees[index])
        embeddings = [e.compose(step.embed1) if e is not None else None for e in embeddings]
        embeddings[index] = step.embed2
        current = step.tree
    return SupertreeResult(
        tree=current,
        embeddings=tuple(e for e in embeddings if e is not None),
    )


def greedy_supertree(trees: Sequence[Forest]) -> Tuple[SupertreeResult, GreedyTrace]:
    if not trees:
        raise EmptyInput("greedy supertree needs at least one tree")
    for i, tree in enumerate(trees):
        require_tree(tree, f"tree {i}")

    results = [greedy_rotation(trees, i) for i in range(len(trees))]
    orders = [r.order for r in results]
    chosen = min(range(len(trees)), key=lambda i: (orders[i], i))
    logger.info("greedy supertree rotations %s, chose %d", orders, chosen)
    return results[chosen], GreedyTrace(
        per_rotation_orders=orders,
        chosen_index=chosen,
        bound=greedy_bound(len(trees)),
    )
