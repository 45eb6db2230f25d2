from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from forest.embedding import Embedding, contains_induced
from forest.errors import InvalidInstance, VerificationFailed
from forest.graph import Forest
from schema.instance import CaterpillarMeta, SubdividedStarMeta, TightnessParams

logger = logging.getLogger(__name__)


def caterpillar(counts: Sequence[int]) -> Forest:
    """T(n_1, ..., n_p): spine vertices are 0..p-1, pendants follow in order."""
    if not counts:
        raise InvalidInstance("a caterpillar needs at least one spine vertex")
    if any(n < 0 for n in counts):
        raise InvalidInstance(f"negative pendant count in {list(counts)}")
    p = len(counts)
    edges = [(i, i + 1) for i in range(p - 1)]
    next_id = p
    for i, n in enumerate(counts):
        for _ in range(n):
            edges.append((i, next_id))
            next_id += 1
    return Forest.from_edges(next_id, edges)


def caterpillar_meta(counts: Sequence[int]) -> CaterpillarMeta:
    return CaterpillarMeta(counts=list(counts), spine=list(range(len(counts))))


def subdivided_star(legs: Sequence[int]) -> Tuple[Forest, SubdividedStarMeta]:
    """Center 0 joined to one end of a path of each given order."""
    edges: List[Tuple[int, int]] = []
    ids: List[List[int]] = []
    next_id = 1
    for length in legs:
        leg = list(range(next_id, next_id + length))
        next_id += length
        if leg:
            edges.append((0, leg[0]))
            edges.extend(zip(leg, leg[1:]))
        ids.append(leg)
    return Forest.from_edges(next_id, edges), SubdividedStarMeta(center=0, legs=ids)


def tightness_counts(params: TightnessParams) -> Tuple[List[int], List[int], List[int], List[int]]:
    a, b, c = params.a, params.b, params.c
    return (
        [0, b, a, a, c, 0],
        [0, b, 0, a, 0, 0, 0, a, 0],
        [0, b, 0, 0, 0, 0, 0, a, 0, c, a, 0],
        [0, b, 0, 0, b, b, a, a, c, c, a, 0],
    )


@dataclass(frozen=True)
class TightnessFamily:
    trees: Tuple[Forest, Forest, Forest]
    known: Forest
    embeddings: Tuple[Embedding, Embedding, Embedding]
    """Verified copies of the three trees inside `known`."""


def gen_tightness(params: TightnessParams) -> TightnessFamily:
    """Three caterpillars on which the greedy supertree is far from optimal.

    Every greedy order grows to at least 4a while `known` has order
    3a + 3b + 2c + 12.
    """
    if not params.a > params.b > params.c >= 1:
        raise InvalidInstance(
            f"need a > b > c >= 1, got a={params.a} b={params.b} c={params.c}"
        )
    *shapes, known_counts = tightness_counts(params)
    trees = tuple(caterpillar(counts) for counts in shapes)
    known = caterpillar(known_counts)
    embeddings = []
    for i, tree in enumerate(trees):
        found = contains_induced(tree, known)
        if found is None:
            raise VerificationFailed(f"tightness tree {i + 1} is not inside the known supertree")
        embeddings.append(found)
    logger.info(
        "tightness family a=%d b=%d c=%d: orders %s, known supertree %d",
        params.a,
        params.b,
        params.c,
        [t.order for t in trees],
        known.order,
    )
    return TightnessFamily(
        trees=(trees[0], trees[1], trees[2]),
        known=known,
        embeddings=(embeddings[0], embeddings[1], embeddings[2]),
    )


def gen_tradeoff(a: int, k: int) -> List[Forest]:
    """T(a,0,a), T(a,0,0,a), ..., T(a,0^k,a)."""
    if a < 0 or k < 1:
        raise InvalidInstance(f"need a >= 0 and k >= 1, got a={a} k={k}")
    return [caterpillar([a] + [0] * gap + [a]) for gap in range(1, k + 1)]
