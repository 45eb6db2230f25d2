"""Approximation scheme for the maximum common induced subforest.

For a bound D on component orders, every forest has a finite census
vector counting its components by isomorphism class of tree of order at
most D. The set of census vectors of all induced subforests of a forest is
computed exactly by a dynamic program over a rooting of each component.
A common induced subforest whose components are all small is then the
best vector in the intersection of those sets, and choosing D = ceil(2/eps)
loses at most an eps fraction of the optimum.

States at a vertex u count everything below u except the component that
contains u itself; that component's class is added once it is closed.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from forest.canonical import NO_PARENT, ShapeIndex, ShapeTable, canonical_order, tree_canonical
from forest.embedding import Embedding, verify_embedding
from forest.enumerate import free_trees
from forest.errors import CapExceeded, EmptyInput, StateExplosion, VerificationFailed
from forest.graph import (
    Forest,
    component_vertex_sets,
    disjoint_union,
    max_independent_set,
    root_components,
)

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class RootedClass:
    shape: int
    tree_index: int
    children: Tuple[int, ...]
    order: int


@dataclass(frozen=True)
class TreeCatalog:
    delta: int
    trees: Tuple[Forest, ...]
    codes: Tuple[bytes, ...]
    orders: Tuple[int, ...]
    table: ShapeTable
    rooted: Tuple[RootedClass, ...]

    @property
    def q(self) -> int:
        return len(self.trees)

    def index_of(self, code: bytes) -> int:
        return self.codes.index(code)


@lru_cache(maxsize=None)
def _catalog(delta: int) -> TreeCatalog:
    trees = [t for n in range(1, delta + 1) for t in free_trees(n)]
    codes = [tree_canonical(t).code for t in trees]
    table = ShapeTable()
    tree_of_shape: Dict[int, int] = {}
    for i, tree in enumerate(trees):
        index = ShapeIndex(tree, table)
        for v in range(tree.order):
            tree_of_shape.setdefault(index.shape(NO_PARENT, v), i)
    rooted = tuple(
        RootedClass(
            shape=s,
            tree_index=tree_of_shape[s],
            children=table.children[s],
            order=table.size[s],
        )
        for s in sorted(tree_of_shape)
    )
    return TreeCatalog(
        delta=delta,
        trees=tuple(trees),
        codes=tuple(codes),
        orders=tuple(t.order for t in trees),
        table=table,
        rooted=rooted,
    )


def build_catalog(delta: int, cap: int = 6) -> TreeCatalog:
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    if delta > cap:
        raise CapExceeded(f"delta {delta} is above the catalog cap {cap}")
    return _catalog(delta)


@dataclass(frozen=True)
class Realizer:
    """Back-pointer chain: own vertices plus the realizers it was summed from."""

    vertices: Tuple[int, ...]
    parts: Tuple[Realizer, ...] = ()

    def collect(self) -> List[int]:
        found: List[int] = []
        stack: List[Realizer] = [self]
        while stack:
            node = stack.pop()
            found.extend(node.vertices)
            stack.extend(node.parts)
        return sorted(found)


_EMPTY = Realizer(())


class VectorSet:
    def __init__(self, q: int, budget: Optional[int] = None) -> None:
        self.q = q
        self.budget = budget
        self.realizers: Dict[Vector, Realizer] = {}

    @classmethod
    def zero(cls, q: int, budget: Optional[int] = None) -> VectorSet:
        result = cls(q, budget)
        result.realizers[(0,) * q] = _EMPTY
        return result

    def __len__(self) -> int:
        return len(self.realizers)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.realizers)

    def __contains__(self, vector: object) -> bool:
        return vector in self.realizers

    def vectors(self) -> Set[Vector]:
        return set(self.realizers)

    def realizer(self, vector: Vector) -> Realizer:
        return self.realizers[vector]

    def add(self, vector: Vector, realizer: Realizer) -> None:
        if vector in self.realizers:
            return
        self.realizers[vector] = realizer
        if self.budget is not None and len(self.realizers) > self.budget:
            raise StateExplosion(
                f"vector set grew beyond {self.budget} entries; lower delta"
            )

    def update(self, other: VectorSet) -> None:
        for vector, realizer in other.realizers.items():
            self.add(vector, realizer)

    def shifted(self, index: int) -> VectorSet:
        """Every vector plus the unit vector of `index`, same realizers."""
        result = VectorSet(self.q, self.budget)
        for vector, realizer in self.realizers.items():
            moved = vector[:index] + (vector[index] + 1,) + vector[index + 1:]
            result.add(moved, realizer)
        return result


def vector_sum(first: VectorSet, second: VectorSet) -> VectorSet:
    if first.q != second.q:
        raise ValueError(f"vector lengths differ: {first.q} and {second.q}")
    result = VectorSet(first.q, first.budget)
    for a, ra in first.realizers.items():
        for b, rb in second.realizers.items():
            s = tuple(x + y for x, y in zip(a, b))
            if s not in result:
                result.add(s, Realizer((), (ra, rb)))
    return result


def _sum_all(sets: Sequence[VectorSet], q: int, budget: Optional[int]) -> VectorSet:
    total = VectorSet.zero(q, budget)
    for s in sets:
        total = vector_sum(total, s)
    return total


@dataclass
class _VertexState:
    inside: VectorSet
    """Census vectors of all induced subforests of the subtree at u."""

    without: VectorSet
    """Those not containing u."""

    rooted: Dict[int, VectorSet]
    """Per rooted class shape: u's component is that class, counted apart."""


def _assignments(
    kids: Tuple[int, ...], children: List[int], states: Dict[int, _VertexState]
) -> Iterator[Tuple[int, ...]]:
    """Injective maps of class children onto vertex children.

    Equal class children take vertex children in increasing position.
    """
    def extend(j: int, chosen: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if j == len(kids):
            yield chosen
            return
        start = chosen[-1] + 1 if j > 0 and kids[j] == kids[j - 1] else 0
        for pos in range(start, len(children)):
            if pos in chosen:
                continue
            found = states[children[pos]].rooted.get(kids[j])
            if found is not None and len(found) > 0:
                yield from extend(j + 1, chosen + (pos,))

    yield from extend(0, ())


def _component_set(
    root: int,
    rooted_children: Sequence[Sequence[int]],
    order: List[int],
    catalog: TreeCatalog,
    budget: Optional[int],
) -> VectorSet:
    q = catalog.q
    states: Dict[int, _VertexState] = {}
    size: Dict[int, int] = {}
    for u in reversed(order):
        children = list(rooted_children[u])
        size[u] = 1 + sum(size[v] for v in children)
        without = _sum_all([states[v].inside for v in children], q, budget)
        alone = _sum_all([states[v].without for v in children], q, budget)
        rooted: Dict[int, VectorSet] = {}
        for cls in catalog.rooted:
            if cls.order > size[u] or len(cls.children) > len(children):
                continue
            found = VectorSet(q, budget)
            if not cls.children:
                for vector, realizer in alone.realizers.items():
                    found.add(vector, Realizer((u,), (realizer,)))
            else:
                for chosen in _assignments(cls.children, children, states):
                    picked = dict(zip(chosen, cls.children))
                    parts = [
                        states[v].rooted[picked[pos]] if pos in picked else states[v].without
                        for pos, v in enumerate(children)
                    ]
                    for vector, realizer in _sum_all(parts, q, budget).realizers.items():
                        found.add(vector, Realizer((u,), (realizer,)))
            if len(found) > 0:
                rooted[cls.shape] = found
        inside = VectorSet(q, budget)
        inside.update(without)
        for cls in catalog.rooted:
            if cls.shape in rooted:
                inside.update(rooted[cls.shape].shifted(cls.tree_index))
        states[u] = _VertexState(inside=inside, without=without, rooted=rooted)
        for v in children:
            del states[v]
    return states[root].inside


def that_set(
    forest: Forest, catalog: TreeCatalog, state_budget: Optional[int] = None
) -> VectorSet:
    """Census vectors of every induced subforest of `forest` with small components."""
    rooted = root_components(forest)
    total = VectorSet.zero(catalog.q, state_budget)
    for root in rooted.roots:
        order = rooted.descendants(root)
        part = _component_set(root, rooted.children, order, catalog, state_budget)
        total = vector_sum(total, part)
    logger.debug(
        "census set of a forest of order %d under delta %d: %d vectors",
        forest.order,
        catalog.delta,
        len(total),
    )
    return total


def census(forest: Forest, catalog: TreeCatalog) -> Optional[Vector]:
    """Component counts by catalog tree, or None if a component is too large."""
    counts = [0] * catalog.q
    for part in component_vertex_sets(forest):
        if len(part) > catalog.delta:
            return None
        counts[catalog.index_of(tree_canonical(forest.induced(part)[0]).code)] += 1
    return tuple(counts)


@dataclass(frozen=True)
class StripResult:
    removed: Tuple[int, ...]
    residual: Forest
    back: Tuple[int, ...]


def strip_to_bounded(forest: Forest, delta: int) -> StripResult:
    """Delete deepest vertices with at least `delta` remaining descendants."""
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    rooted = root_components(forest)
    below = [0] * forest.order
    removed = [False] * forest.order
    for v in sorted(rooted.bfs_order, key=lambda x: -rooted.depth[x]):
        below[v] = sum(below[c] + 1 for c in rooted.children[v] if not removed[c])
        if below[v] >= delta:
            removed[v] = True
    keep = [v for v in range(forest.order) if not removed[v]]
    residual, back = forest.induced(keep)
    return StripResult(
        removed=tuple(v for v in range(forest.order) if removed[v]),
        residual=residual,
        back=tuple(back),
    )


@dataclass(frozen=True)
class PtasResult:
    forest: Forest
    embeddings: Tuple[Embedding, ...]
    delta_used: int
    capped: bool
    guarantee: Fraction
    best_vector: Vector
    independent_set_bound: int

    @property
    def order(self) -> int:
        return self.forest.order


def guarantee_for(delta: int) -> Fraction:
    return max(Fraction(0), 1 - Fraction(2, delta))


def delta_for(epsilon: float) -> int:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return max(1, math.ceil(Fraction(2) / Fraction(str(epsilon))))


def _realize(
    host: Forest,
    vertices: List[int],
    catalog: TreeCatalog,
    result_parts: List[Tuple[int, List[int]]],
) -> Embedding:
    """Map each result component onto an equal host component of the realizer."""
    sub, back = host.induced(vertices)
    pool: Dict[bytes, List[List[int]]] = {}
    for part in component_vertex_sets(sub):
        piece, local = sub.induced(part)
        order = canonical_order(piece)
        pool.setdefault(tree_canonical(piece).code, []).append(
            [back[local[v]] for v in order]
        )
    mapping: Dict[int, int] = {}
    for tree_index, result_vertices in result_parts:
        target = pool[catalog.codes[tree_index]].pop()
        for v, h in zip(result_vertices, target):
            mapping[v] = h
    return Embedding.from_dict(mapping, len(mapping))


def ptas_subforest(
    forests: Sequence[Forest],
    epsilon: float = 1.0,
    delta: Optional[int] = None,
    delta_cap: int = 6,
    state_budget: Optional[int] = None,
    strict_cap: bool = False,
) -> PtasResult:
    if not forests:
        raise EmptyInput("the approximation scheme needs at least one forest")
    wanted = delta if delta is not None else delta_for(epsilon)
    capped = wanted > delta_cap
    if capped:
        if strict_cap:
            raise CapExceeded(
                f"delta {wanted} is above the cap {delta_cap}; the capped run "
                f"guarantees only {guarantee_for(delta_cap)}"
            )
        logger.warning(
            "delta %d capped at %d, guarantee drops to %s",
            wanted,
            delta_cap,
            guarantee_for(delta_cap),
        )
    used = min(wanted, delta_cap)
    catalog = build_catalog(used, cap=delta_cap)

    sets = [that_set(f, catalog, state_budget) for f in forests]
    common = set(sets[0].vectors())
    for s in sets[1:]:
        common &= s.vectors()
    candidates = sorted(common)
    scores = np.array(candidates, dtype=np.int64).reshape(len(candidates), catalog.q) @ np.array(
        catalog.orders, dtype=np.int64
    )
    best = candidates[int(np.argmax(scores))]

    parts: List[Forest] = []
    result_parts: List[Tuple[int, List[int]]] = []
    offset = 0
    for tree_index, count in enumerate(best):
        tree = catalog.trees[tree_index]
        for _ in range(count):
            parts.append(tree)
            order = canonical_order(tree)
            result_parts.append((tree_index, [offset + v for v in order]))
            offset += tree.order
    result = disjoint_union(parts)

    embeddings = []
    for i, (f, s) in enumerate(zip(forests, sets)):
        embedding = _realize(f, s.realizer(best).collect(), catalog, result_parts)
        if not verify_embedding(result, f, embedding):
            raise VerificationFailed(f"approximate subforest does not embed into input {i}")
        embeddings.append(embedding)

    logger.info(
        "approximate common subforest of order %d with delta %d over %d common vectors",
        result.order,
        used,
        len(candidates),
    )
    return PtasResult(
        forest=result,
        embeddings=tuple(embeddings),
        delta_used=used,
        capped=capped,
        guarantee=guarantee_for(used),
        best_vector=best,
        independent_set_bound=min(len(max_independent_set(f)) for f in forests),
    )


def export_vector_set_csv(vectors: VectorSet, catalog: TreeCatalog) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"t{i + 1}" for i in range(catalog.q)] + ["order"])
    for vector in sorted(vectors):
        writer.writerow(list(vector) + [sum(c * n for c, n in zip(vector, catalog.orders))])
    return out.getvalue()
