"""Maximum common induced subtree and minimum supertree of two trees.

The common-subtree values follow the classic matching-based dynamic
program: the best common rooted subtree whose roots correspond is one vertex
plus a maximum weight matching between the two child lists, weighted by the
same quantity one level down. Values depend only on the rooted shapes
involved, so they are memoized per pair of shape ids and repeated branches
are solved once.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from forest.canonical import NO_PARENT, ShapeIndex, ShapeTable
from forest.embedding import Embedding
from forest.errors import NotConnected
from forest.graph import Forest, RootedForest, root_at
from solver.matching import max_weight_transport

logger = logging.getLogger(__name__)

ShapePair = Tuple[int, int]
# (shape in the first tree, shape in the second tree, number of pairs)
GroupPairing = Tuple[Tuple[int, int, int], ...]


@dataclass(frozen=True)
class McsResult:
    size: int
    common: Forest
    embed1: Embedding
    embed2: Embedding


@dataclass(frozen=True)
class SupertreeResult:
    tree: Forest
    embeddings: Tuple[Embedding, ...]
    common_size: int = 0

    @property
    def order(self) -> int:
        return self.tree.order

    @property
    def embed1(self) -> Embedding:
        return self.embeddings[0]

    @property
    def embed2(self) -> Embedding:
        return self.embeddings[1]


@dataclass(frozen=True)
class RootedSupertree:
    """Supertree of two down-subtrees whose root realizes both anchors.

    `patterns[i]` is the i-th down-subtree relabeled with its anchor as
    vertex 0 and `sources[i]` maps those ids back to the input forest.
    """

    tree: Forest
    root: int
    patterns: Tuple[Forest, Forest]
    sources: Tuple[List[int], List[int]]
    embeddings: Tuple[Embedding, Embedding]

    @property
    def order(self) -> int:
        return self.tree.order


def require_tree(tree: Forest, name: str = "input") -> None:
    if not tree.is_tree():
        raise NotConnected(
            f"{name} must be a nonempty tree, got order {tree.order} "
            f"with {tree.component_count} components"
        )


class AnchoredMcs:
    """Common rooted subtree values for pairs of shapes of one ShapeTable."""

    def __init__(self, table: ShapeTable) -> None:
        self.table = table
        self.value: Dict[ShapePair, int] = {}
        self.pairing: Dict[ShapePair, GroupPairing] = {}

    def solve(self, a: int, b: int) -> int:
        found = self.value.get((a, b))
        if found is not None:
            return found
        children = self.table.children
        stack = [(a, b)]
        while stack:
            x, y = stack[-1]
            if (x, y) in self.value:
                stack.pop()
                continue
            pending = [
                (cx, cy)
                for cx in set(children[x])
                for cy in set(children[y])
                if (cx, cy) not in self.value
            ]
            if pending:
                stack.extend(pending)
                continue
            self._compute(x, y)
            stack.pop()
        return self.value[(a, b)]

    def _compute(self, a: int, b: int) -> None:
        kids_a = Counter(self.table.children[a])
        kids_b = Counter(self.table.children[b])
        if not kids_a or not kids_b:
            self.value[(a, b)] = 1
            self.pairing[(a, b)] = ()
            return
        rows = sorted(kids_a)
        cols = sorted(kids_b)
        weights = [[self.value[(x, y)] for y in cols] for x in rows]
        total, amounts = max_weight_transport(
            [kids_a[x] for x in rows], [kids_b[y] for y in cols], weights
        )
        self.value[(a, b)] = 1 + total
        self.pairing[(a, b)] = tuple(
            (rows[i], cols[j], f) for (i, j), f in sorted(amounts.items())
        )

    def supertree_order(self, a: int, b: int) -> int:
        """Order of a smallest rooted supertree whose root realizes both."""
        return self.table.size[a] + self.table.size[b] - self.solve(a, b)

    def match(
        self, first: ShapeIndex, p: int, u: int, second: ShapeIndex, q: int, v: int
    ) -> Tuple[List[Tuple[int, int]], List[int]]:
        """Concrete vertex pairs of a best common subtree anchored at u ~ v.

        Returns the pairs in breadth-first order and, for each pair, the
        index of its parent pair (-1 for the anchor).
        """
        self.solve(first.shape(p, u), second.shape(q, v))
        pairs: List[Tuple[int, int]] = []
        parents: List[int] = []
        pending = [(p, u, q, v, -1)]
        i = 0
        while i < len(pending):
            p, u, q, v, up = pending[i]
            i += 1
            index = len(pairs)
            pairs.append((u, v))
            parents.append(up)
            groups_a: Dict[int, List[int]] = {}
            for w in first.children(p, u):
                groups_a.setdefault(first.shape(u, w), []).append(w)
            groups_b: Dict[int, List[int]] = {}
            for w in second.children(q, v):
                groups_b.setdefault(second.shape(v, w), []).append(w)
            taken_a: Counter[int] = Counter()
            taken_b: Counter[int] = Counter()
            key = (first.shape(p, u), second.shape(q, v))
            for x, y, count in self.pairing[key]:
                for _ in range(count):
                    wa = groups_a[x][taken_a[x]]
                    wb = groups_b[y][taken_b[y]]
                    taken_a[x] += 1
                    taken_b[y] += 1
                    pending.append((u, wa, v, wb, index))
        return pairs, parents


def _mcs_result(pairs: List[Tuple[int, int]], parents: List[int]) -> McsResult:
    common = Forest.from_edges(
        len(pairs), [(up, k) for k, up in enumerate(parents) if up >= 0]
    )
    return McsResult(
        size=len(pairs),
        common=common,
        embed1=Embedding(tuple(a for a, _ in pairs)),
        embed2=Embedding(tuple(b for _, b in pairs)),
    )


def _parent_of(forest: RootedForest, v: int) -> int:
    p = forest.parent[v]
    return NO_PARENT if p is None else p


def mcs_rooted_anchored(
    first: RootedForest, u: int, second: RootedForest, v: int
) -> McsResult:
    table = ShapeTable()
    index_a = ShapeIndex(first.base, table)
    index_b = ShapeIndex(second.base, table)
    pairs, parents = AnchoredMcs(table).match(
        index_a, _parent_of(first, u), u, index_b, _parent_of(second, v), v
    )
    return _mcs_result(pairs, parents)


def best_anchor_pair(
    index_a: ShapeIndex, rooted_a: RootedForest, index_b: ShapeIndex, dp: AnchoredMcs
) -> Tuple[int, int, int]:
    """(value, u, v) maximizing the common subtree over all anchor pairs.

    The first tree is fixed at one root and contributes its down-subtrees;
    the second contributes every vertex as the root of the whole tree.
    """
    shapes_a: Dict[int, int] = {}
    for u in rooted_a.bfs_order:
        shapes_a.setdefault(index_a.shape(_parent_of(rooted_a, u), u), u)
    shapes_b: Dict[int, int] = {}
    for v in range(index_b.forest.order):
        shapes_b.setdefault(index_b.shape(NO_PARENT, v), v)

    best = (0, -1, -1)
    for a, u in shapes_a.items():
        for b, v in shapes_b.items():
            value = dp.solve(a, b)
            if value > best[0]:
                best = (value, u, v)
    logger.debug(
        "common subtree over %d x %d anchor shapes, %d shape pairs solved",
        len(shapes_a),
        len(shapes_b),
        len(dp.value),
    )
    return best


def mcs_trees(first: Forest, second: Forest) -> McsResult:
    require_tree(first, "first tree")
    require_tree(second, "second tree")
    table = ShapeTable()
    index_a = ShapeIndex(first, table)
    index_b = ShapeIndex(second, table)
    rooted_a = root_at(first, [0])
    dp = AnchoredMcs(table)
    _, u, v = best_anchor_pair(index_a, rooted_a, index_b, dp)
    pairs, parents = dp.match(index_a, _parent_of(rooted_a, u), u, index_b, NO_PARENT, v)
    return _mcs_result(pairs, parents)


def glue(first: Forest, second: Forest, common: Dict[int, int]) -> SupertreeResult:
    """Extend `first` by the vertices of `second` outside the common part.

    `common` maps vertices of `second` to the vertices of `first` they are
    identified with; both sides must induce the same subtree.
    """
    new_id: Dict[int, int] = {}
    next_id = first.order
    for w in range(second.order):
        if w in common:
            new_id[w] = common[w]
        else:
            new_id[w] = next_id
            next_id += 1
    edges = first.edges() + [
        (new_id[x], new_id[y])
        for x, y in second.edges()
        if not (x in common and y in common)
    ]
    return SupertreeResult(
        tree=Forest.from_edges(next_id, edges),
        embeddings=(
            Embedding.identity(first.order),
            Embedding(tuple(new_id[w] for w in range(second.order))),
        ),
        common_size=len(common),
    )


def supertree2(first: Forest, second: Forest) -> SupertreeResult:
    mcs = mcs_trees(first, second)
    result = glue(
        first, second, {b: a for a, b in zip(mcs.embed1.mapping, mcs.embed2.mapping)}
    )
    logger.debug(
        "supertree of orders %d and %d: common %d, result %d",
        first.order,
        second.order,
        mcs.size,
        result.order,
    )
    return result


def _down_subtree(forest: RootedForest, v: int) -> Tuple[Forest, List[int]]:
    return forest.base.induced(forest.descendants(v))


def supertree2_rooted(
    first: RootedForest, u: int, second: RootedForest, v: int
) -> RootedSupertree:
    pattern_a, source_a = _down_subtree(first, u)
    pattern_b, source_b = _down_subtree(second, v)
    mcs = mcs_rooted_anchored(first, u, second, v)
    local_a = {x: i for i, x in enumerate(source_a)}
    local_b = {x: i for i, x in enumerate(source_b)}
    common = {
        local_b[b]: local_a[a] for a, b in zip(mcs.embed1.mapping, mcs.embed2.mapping)
    }
    glued = glue(pattern_a, pattern_b, common)
    return RootedSupertree(
        tree=glued.tree,
        root=0,
        patterns=(pattern_a, pattern_b),
        sources=(source_a, source_b),
        embeddings=(glued.embed1, glued.embed2),
    )
