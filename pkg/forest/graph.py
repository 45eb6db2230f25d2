from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from forest.errors import BadRoots, InvalidInstance, NotAForest, ParseError

Edge = Tuple[int, int]

_HEADER = re.compile(r"^forest\s+(\d+)$")
_EDGE = re.compile(r"^(-?\d+)\s+(-?\d+)$")


@dataclass(frozen=True)
class Forest:
    """An undirected acyclic graph on the vertices 0..order-1.

    Build instances with `Forest.from_edges`, which validates; the plain
    constructor trusts its input and is used internally on already
    validated adjacency.
    """

    adjacency: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Edge]) -> Forest:
        if order < 0:
            raise ParseError(f"negative order {order}")
        neighbors: List[List[int]] = [[] for _ in range(order)]
        roots = list(range(order))

        def find(x: int) -> int:
            while roots[x] != x:
                roots[x] = roots[roots[x]]
                x = roots[x]
            return x

        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ParseError(f"edge {u} {v} out of range for order {order}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise NotAForest(f"edge {u} {v} closes a cycle")
            roots[ru] = rv
            neighbors[u].append(v)
            neighbors[v].append(u)
        return cls(tuple(tuple(sorted(n)) for n in neighbors))

    @classmethod
    def empty(cls, order: int = 0) -> Forest:
        return cls(tuple(() for _ in range(order)))

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(
            (u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v
        )

    @property
    def edge_count(self) -> int:
        return len(self.edge_set)

    def edges(self) -> List[Edge]:
        return sorted(self.edge_set)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(n) for n in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    @cached_property
    def component_count(self) -> int:
        return self.order - self.edge_count

    def is_tree(self) -> bool:
        return self.order > 0 and self.component_count == 1

    def induced(self, vertices: Sequence[int]) -> Tuple[Forest, List[int]]:
        """Subforest induced by `vertices`, relabeled in the given order.

        Returns the subforest and the map new id -> old id.
        """
        index = {v: i for i, v in enumerate(vertices)}
        adjacency = tuple(
            tuple(sorted(index[w] for w in self.adjacency[v] if w in index))
            for v in vertices
        )
        return Forest(adjacency), list(vertices)


def path(order: int) -> Forest:
    return Forest.from_edges(order, [(i, i + 1) for i in range(order - 1)])


def star(leaves: int) -> Forest:
    return Forest.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(forests: Sequence[Forest]) -> Forest:
    edges: List[Edge] = []
    offset = 0
    for f in forests:
        edges.extend((u + offset, v + offset) for u, v in f.edges())
        offset += f.order
    return Forest.from_edges(offset, edges)


def component_vertex_sets(forest: Forest) -> List[List[int]]:
    """Vertex lists of the components, ordered by smallest vertex."""
    seen = [False] * forest.order
    result: List[List[int]] = []
    for start in range(forest.order):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        part: List[int] = []
        while queue:
            u = queue.popleft()
            part.append(u)
            for w in forest.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        result.append(sorted(part))
    return result


def components(forest: Forest) -> List[Forest]:
    return [forest.induced(part)[0] for part in component_vertex_sets(forest)]


@dataclass(frozen=True)
class RootedForest:
    base: Forest
    roots: Tuple[int, ...]
    parent: Tuple[Optional[int], ...]
    depth: Tuple[int, ...]
    subtree_size: Tuple[int, ...]
    children: Tuple[Tuple[int, ...], ...]
    bfs_order: Tuple[int, ...]

    def descendants(self, v: int) -> List[int]:
        """`v` followed by all its descendants in breadth-first order."""
        result = [v]
        i = 0
        while i < len(result):
            result.extend(self.children[result[i]])
            i += 1
        return result

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]


def root_at(forest: Forest, roots: Sequence[int]) -> RootedForest:
    parent: List[Optional[int]] = [None] * forest.order
    depth = [-1] * forest.order
    order: List[int] = []
    for r in roots:
        if not 0 <= r < forest.order:
            raise BadRoots(f"root {r} is not a vertex")
        if depth[r] != -1:
            raise BadRoots(f"root {r} shares a component with an earlier root")
        depth[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in forest.adjacency[u]:
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
    if len(order) != forest.order:
        raise BadRoots(
            f"{len(roots)} roots cover {len(order)} of {forest.order} vertices"
        )

    children: List[List[int]] = [[] for _ in range(forest.order)]
    for v in order:
        p = parent[v]
        if p is not None:
            children[p].append(v)
    size = [1] * forest.order
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            size[p] += size[v]
    return RootedForest(
        base=forest,
        roots=tuple(roots),
        parent=tuple(parent),
        depth=tuple(depth),
        subtree_size=tuple(size),
        children=tuple(tuple(c) for c in children),
        bfs_order=tuple(order),
    )


def root_components(forest: Forest) -> RootedForest:
    """Root every component at its smallest vertex."""
    return root_at(forest, [part[0] for part in component_vertex_sets(forest)])


def parse_forests(text: str) -> List[Forest]:
    blocks: List[Tuple[int, List[Edge]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = _HEADER.match(line)
        if header:
            blocks.append((int(header.group(1)), []))
            continue
        edge = _EDGE.match(line)
        if not edge:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
        if not blocks:
            raise ParseError(f"line {lineno}: edge before any 'forest' header")
        blocks[-1][1].append((int(edge.group(1)), int(edge.group(2))))
    return [Forest.from_edges(order, edges) for order, edges in blocks]


def parse_forest(text: str) -> Forest:
    forests = parse_forests(text)
    if len(forests) != 1:
        raise ParseError(f"expected one forest, found {len(forests)}")
    return forests[0]


def serialize_forest(forest: Forest, comment: Optional[str] = None) -> str:
    lines: List[str] = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"forest {forest.order}")
    lines.extend(f"{u} {v}" for u, v in forest.edges())
    return "\n".join(lines) + "\n"


def serialize_forests(forests: Sequence[Forest]) -> str:
    return "".join(serialize_forest(f) for f in forests)


def to_networkx(forest: Forest) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(forest.order))
    graph.add_edges_from(forest.edges())
    return graph


def from_networkx(graph: nx.Graph) -> Forest:
    index: Dict[object, int] = {v: i for i, v in enumerate(sorted(graph.nodes))}
    return Forest.from_edges(
        len(index), [(index[u], index[v]) for u, v in graph.edges]
    )


def to_dot(forest: Forest, name: str = "F") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(forest.order) if not forest.adjacency[v])
    lines.extend(f"  {u} -- {v};" for u, v in forest.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def _uniform_tree_edges(size: int, rng: np.random.Generator) -> List[Edge]:
    if size < 2:
        return []
    sequence = [int(x) for x in rng.integers(size, size=size - 2)]
    return [(int(u), int(v)) for u, v in nx.from_prufer_sequence(sequence).edges()]


def _bounded_tree_edges(
    size: int, max_degree: int, rng: np.random.Generator
) -> List[Edge]:
    degree = [0] * size
    edges: List[Edge] = []
    for v in range(1, size):
        candidates = [u for u in range(v) if degree[u] < max_degree]
        u = candidates[int(rng.integers(len(candidates)))]
        degree[u] += 1
        degree[v] += 1
        edges.append((u, v))
    return edges


def random_forest(
    seed: int,
    order: int,
    profile: Optional[Sequence[int]] = None,
    max_degree: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> Forest:
    """Random forest with component orders given by `profile`.

    Without `max_degree` each component is a uniform random labeled tree,
    decoded from a random Prüfer sequence. With it, components are grown
    from a random parent array restricted to unsaturated vertices, which is
    not uniform. Vertex ids are shuffled afterwards.
    """
    if profile is None:
        profile = [order] if order > 0 else []
    if sum(profile) != order or any(p <= 0 for p in profile):
        raise InvalidInstance(f"profile {list(profile)} does not split order {order}")
    if max_degree is not None:
        if max_degree < 1 and any(p > 1 for p in profile):
            raise InvalidInstance(f"max_degree {max_degree} cannot hold an edge")
        if max_degree < 2 and any(p > 2 for p in profile):
            raise InvalidInstance(
                f"max_degree {max_degree} cannot hold a component above 2"
            )
    if rng is None:
        rng = np.random.default_rng(seed)

    edges: List[Edge] = []
    offset = 0
    for size in profile:
        if max_degree is None:
            part = _uniform_tree_edges(size, rng)
        else:
            part = _bounded_tree_edges(size, max_degree, rng)
        edges.extend((u + offset, v + offset) for u, v in part)
        offset += size
    relabel = [int(x) for x in rng.permutation(order)]
    return Forest.from_edges(order, [(relabel[u], relabel[v]) for u, v in edges])


def max_independent_set(forest: Forest) -> List[int]:
    """A maximum independent set, taking leaves greedily from the bottom up."""
    rooted = root_components(forest)
    taken = [False] * forest.order
    for v in reversed(rooted.bfs_order):
        taken[v] = not any(taken[c] for c in rooted.children[v])
    return [v for v in range(forest.order) if taken[v]]
