"""Minimum supertree of three trees of bounded maximum degree.

A smallest supertree either holds disjoint copies of two inputs (type 1)
or copies of all three that pairwise intersect (type 2). Type 1 reduces to
the pairwise problem against every way of joining the disjoint pair by a
path. Type 2 copies share a vertex, so every triple of root choices is
tried and the rooted supertree order f is computed by dynamic programming
over anchor sets, partitioning the children of the three anchors.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from forest.canonical import NO_PARENT, ShapeIndex, ShapeTable
from forest.embedding import Embedding, verify_embedding
from forest.errors import SizeLimit, VerificationFailed
from forest.graph import Forest
from solver.pairwise import AnchoredMcs, SupertreeResult, require_tree, supertree2

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)

# (slot in the sorted anchor set, position in that anchor's child list)
Element = Tuple[int, int]
Part = Tuple[Element, ...]


@dataclass(frozen=True)
class Anchor:
    """Root of the down-subtree T_i(u): `vertex` seen from `parent`.

    With `parent == NO_PARENT` the whole tree is rooted at `vertex`;
    otherwise the subtree is the side of the edge away from `parent`, which
    does not depend on where the tree was rooted.
    """

    tree: int
    parent: int
    vertex: int

    @property
    def is_root(self) -> bool:
        return self.parent == NO_PARENT


@dataclass(frozen=True)
class ChildPartition:
    parts: Tuple[Tuple[object, ...], ...]


@dataclass
class DpTable:
    """f-values keyed by sorted tuples of one, two or three shape ids."""

    values: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    choice: Dict[Tuple[int, ...], Tuple[Part, ...]] = field(default_factory=dict)
    partitions: int = 0


@dataclass(frozen=True)
class ExactThreeResult:
    order: int
    tree: Forest
    embeddings: Tuple[Embedding, Embedding, Embedding]
    kind: int
    dp_states: int
    partitions: int
    max_degree: int


def enumerate_partitions(
    groups: Sequence[Sequence[T]], cap: int = 12
) -> Iterator[List[Tuple[T, ...]]]:
    """Partitions of the union of `groups` taking at most one per group per part.

    Every admissible partition is produced exactly once: the part holding
    the first remaining element is chosen, then the rest is partitioned.
    """
    tagged = [(g, x) for g, members in enumerate(groups) for x in members]
    if len(tagged) > cap:
        raise SizeLimit(
            f"ground set of {len(tagged)} children exceeds the partition cap {cap}"
        )

    def split(remaining: List[Tuple[int, T]]) -> Iterator[List[Tuple[T, ...]]]:
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        others = sorted({g for g, _ in rest if g != first[0]})

        def extend(k: int, part: List[Tuple[int, T]]) -> Iterator[List[Tuple[T, ...]]]:
            if k == len(others):
                left = [e for e in rest if e not in part]
                for tail in split(left):
                    yield [tuple(x for _, x in part)] + tail
                return
            yield from extend(k + 1, part)
            for e in rest:
                if e[0] == others[k]:
                    yield from extend(k + 1, part + [e])

        yield from extend(0, [first])

    yield from split(tagged)


def child_partitions(
    u1: Sequence[T], u2: Sequence[T], u3: Sequence[T], cap: int = 12
) -> Iterator[ChildPartition]:
    for parts in enumerate_partitions([u1, u2, u3], cap):
        yield ChildPartition(tuple(parts))


class ExactThree:
    """Shared state for one three-tree instance: shapes, pair DP, f-table."""

    def __init__(self, trees: Sequence[Forest], partition_cap: int = 12) -> None:
        for i, tree in enumerate(trees):
            require_tree(tree, f"tree {i}")
        self.trees = list(trees)
        self.table = ShapeTable()
        self.index = [ShapeIndex(t, self.table) for t in self.trees]
        self.pairs = AnchoredMcs(self.table)
        self.dp = DpTable()
        self.partition_cap = partition_cap

    def shape(self, anchor: Anchor) -> int:
        return self.index[anchor.tree].shape(anchor.parent, anchor.vertex)

    def f(self, shapes: Sequence[int]) -> int:
        key = tuple(sorted(shapes))
        found = self.dp.values.get(key)
        if found is not None:
            return found
        size = self.table.size
        if len(key) == 0:
            value = 0
        elif len(key) == 1:
            value = size[key[0]]
        elif len(key) == 2:
            value = self.pairs.supertree_order(key[0], key[1])
        elif self.table.leaf in key:
            rest = list(key)
            rest.remove(self.table.leaf)
            value = self.f(rest)
        else:
            value = self._best_partition(key)
        self.dp.values[key] = value
        return value

    def _best_partition(self, key: Tuple[int, ...]) -> int:
        kids = [self.table.children[s] for s in key]
        groups = [[(slot, pos) for pos in range(len(k))] for slot, k in enumerate(kids)]
        best: Optional[Tuple[int, Tuple[Part, ...]]] = None
        for parts in enumerate_partitions(groups, self.partition_cap):
            self.dp.partitions += 1
            cost = 1 + sum(self.f([kids[slot][pos] for slot, pos in part]) for part in parts)
            if best is None or cost < best[0]:
                best = (cost, tuple(parts))
        assert best is not None
        self.dp.choice[key] = best[1]
        return best[0]

    def type2_order(self, roots: Sequence[int]) -> int:
        return self.f([self.index[i].shape(NO_PARENT, r) for i, r in enumerate(roots)])

    def build(self, roots: Sequence[int]) -> Tuple[Forest, List[Embedding]]:
        builder = _Builder(self)
        builder.build([Anchor(i, NO_PARENT, r) for i, r in enumerate(roots)])
        tree = Forest.from_edges(builder.count, builder.edges)
        embeddings = [
            Embedding.from_dict(builder.maps[i], t.order) for i, t in enumerate(self.trees)
        ]
        return tree, embeddings


class _Builder:
    """Materializes a rooted supertree from the f-table back-pointers."""

    def __init__(self, solver: ExactThree) -> None:
        self.solver = solver
        self.count = 0
        self.edges: List[Tuple[int, int]] = []
        self.maps: List[Dict[int, int]] = [{} for _ in solver.trees]

    def _children(self, anchor: Anchor) -> List[Anchor]:
        index = self.solver.index[anchor.tree]
        return [
            Anchor(anchor.tree, anchor.vertex, w)
            for w in index.children(anchor.parent, anchor.vertex)
        ]

    def _groups(self, anchors: List[Anchor]) -> List[List[Anchor]]:
        solver = self.solver
        anchors = [a for a in anchors if solver.shape(a) != solver.table.leaf] or anchors[:1]
        if len(anchors) == 1:
            return [[c] for c in self._children(anchors[0])]
        if len(anchors) == 2:
            return self._pair_groups(anchors[0], anchors[1])
        anchors.sort(key=solver.shape)
        key = tuple(solver.shape(a) for a in anchors)
        solver.f(key)
        kids = [self._children(a) for a in anchors]
        return [[kids[slot][pos] for slot, pos in part] for part in solver.dp.choice[key]]

    def _pair_groups(self, first: Anchor, second: Anchor) -> List[List[Anchor]]:
        solver = self.solver
        a, b = solver.shape(first), solver.shape(second)
        solver.pairs.solve(a, b)
        kids_a = self._children(first)
        kids_b = self._children(second)
        used_a = [False] * len(kids_a)
        used_b = [False] * len(kids_b)
        groups: List[List[Anchor]] = []
        for x, y, count in solver.pairs.pairing[(a, b)]:
            for _ in range(count):
                i = next(
                    k for k, c in enumerate(kids_a) if not used_a[k] and solver.shape(c) == x
                )
                j = next(
                    k for k, c in enumerate(kids_b) if not used_b[k] and solver.shape(c) == y
                )
                used_a[i] = used_b[j] = True
                groups.append([kids_a[i], kids_b[j]])
        groups.extend([c] for k, c in enumerate(kids_a) if not used_a[k])
        groups.extend([c] for k, c in enumerate(kids_b) if not used_b[k])
        return groups

    def build(self, anchors: List[Anchor]) -> int:
        s = self.count
        self.count += 1
        for a in anchors:
            self.maps[a.tree][a.vertex] = s
        for group in self._groups(list(anchors)):
            child = self.build(group)
            self.edges.append((s, child))
        return s


def _join(first: Forest, second: Forest, u: int, v: int, path_order: int) -> Forest:
    """Disjoint copies joined by a path of `path_order` vertices from u to v.

    The path's end vertices are u and v themselves; its interior is fresh.
    """
    offset = first.order
    interior = list(range(first.order + second.order, first.order + second.order + path_order - 2))
    chain = [u] + interior + [v + offset]
    edges = first.edges() + [(x + offset, y + offset) for x, y in second.edges()]
    edges += list(zip(chain, chain[1:]))
    return Forest.from_edges(first.order + second.order + path_order - 2, edges)


def type1_min(
    ti: Forest,
    tj: Forest,
    tk: Forest,
    max_order: Optional[int] = None,
    stop_at: Optional[int] = None,
) -> Optional[Tuple[int, SupertreeResult]]:
    """Smallest supertree of (ti, tj, tk) holding disjoint copies of tj and tk.

    Joins are enumerated up to rooted shape of u and v. When `stop_at` is
    given, joins that cannot beat it are skipped and None is returned if
    none does. Embeddings of the result are in the order (ti, tj, tk).
    """
    if max_order is None:
        max_order = max(ti.order, tj.order, tk.order) + 2
    table = ShapeTable()
    anchors_j: Dict[int, int] = {}
    index_j = ShapeIndex(tj, table)
    for u in range(tj.order):
        anchors_j.setdefault(index_j.shape(NO_PARENT, u), u)
    anchors_k: Dict[int, int] = {}
    index_k = ShapeIndex(tk, table)
    for v in range(tk.order):
        anchors_k.setdefault(index_k.shape(NO_PARENT, v), v)

    best: Optional[Tuple[int, SupertreeResult]] = None
    for path_order in range(2, max_order + 1):
        floor = max(ti.order, tj.order + tk.order + path_order - 2)
        limit = best[0] if best is not None else stop_at
        if limit is not None and floor >= limit:
            break
        for u in anchors_j.values():
            for v in anchors_k.values():
                joined = _join(tj, tk, u, v, path_order)
                step = supertree2(ti, joined)
                limit = best[0] if best is not None else stop_at
                if limit is not None and step.order >= limit:
                    continue
                into_j = Embedding.identity(tj.order).compose(step.embed2)
                into_k = Embedding(
                    tuple(x + tj.order for x in range(tk.order))
                ).compose(step.embed2)
                best = (
                    step.order,
                    SupertreeResult(
                        tree=step.tree,
                        embeddings=(step.embed1, into_j, into_k),
                        common_size=step.common_size,
                    ),
                )
    return best


def dp_type2(
    trees: Sequence[Forest], roots: Sequence[int], partition_cap: int = 12
) -> Tuple[int, Forest, List[Embedding]]:
    solver = ExactThree(trees, partition_cap)
    order = solver.type2_order(roots)
    tree, embeddings = solver.build(roots)
    return order, tree, embeddings


def exact3_supertree(
    t1: Forest, t2: Forest, t3: Forest, partition_cap: int = 12
) -> ExactThreeResult:
    trees = [t1, t2, t3]
    solver = ExactThree(trees, partition_cap)

    best_roots: Optional[Tuple[int, int, int]] = None
    best_order = 0
    seen: Dict[Tuple[int, ...], Tuple[int, int, int]] = {}
    for r1 in range(t1.order):
        for r2 in range(t2.order):
            for r3 in range(t3.order):
                key = tuple(
                    sorted(solver.index[i].shape(NO_PARENT, r) for i, r in enumerate((r1, r2, r3)))
                )
                if key in seen:
                    continue
                seen[key] = (r1, r2, r3)
                order = solver.f(key)
                if best_roots is None or order < best_order:
                    best_roots, best_order = (r1, r2, r3), order
    assert best_roots is not None
    tree, embeddings = solver.build(best_roots)
    kind = 2
    logger.debug(
        "type 2 minimum %d over %d root shape triples, %d dp states, %d partitions",
        best_order,
        len(seen),
        len(solver.dp.values),
        solver.dp.partitions,
    )

    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        found = type1_min(trees[i], trees[j], trees[k], stop_at=best_order)
        if found is None:
            continue
        best_order, result = found
        tree = result.tree
        placed = {i: result.embeddings[0], j: result.embeddings[1], k: result.embeddings[2]}
        embeddings = [placed[x] for x in range(3)]
        kind = 1

    for i, (pattern, embedding) in enumerate(zip(trees, embeddings)):
        if not verify_embedding(pattern, tree, embedding):
            raise VerificationFailed(f"tree {i} does not embed into the exact supertree")
    logger.info("exact three-tree supertree of order %d (type %d)", tree.order, kind)
    return ExactThreeResult(
        order=tree.order,
        tree=tree,
        embeddings=(embeddings[0], embeddings[1], embeddings[2]),
        kind=kind,
        dp_states=len(solver.dp.values),
        partitions=solver.dp.partitions,
        max_degree=max(t.max_degree() for t in trees),
    )
