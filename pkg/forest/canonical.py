from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from forest.errors import NotConnected
from forest.graph import Forest, RootedForest, component_vertex_sets

NO_PARENT = -1


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """AHU parenthesis code. Codes compare lexicographically by bytes."""

    code: bytes
    order: int


def codes_below(
    adjacency: Sequence[Sequence[int]], root: int, parent: int = NO_PARENT
) -> Dict[int, bytes]:
    """AHU codes of every vertex in the subtree hanging from `root`."""
    order: List[Tuple[int, int]] = [(root, parent)]
    i = 0
    while i < len(order):
        u, p = order[i]
        order.extend((w, u) for w in adjacency[u] if w != p)
        i += 1
    codes: Dict[int, bytes] = {}
    for u, p in reversed(order):
        kids = sorted(codes[w] for w in adjacency[u] if w != p)
        codes[u] = b"(" + b"".join(kids) + b")"
    return codes


def rooted_canonical(forest: RootedForest, v: int) -> CanonicalCode:
    if not 0 <= v < forest.base.order:
        raise ValueError(f"vertex {v} not in forest of order {forest.base.order}")
    parent = forest.parent[v]
    codes = codes_below(
        forest.base.adjacency, v, NO_PARENT if parent is None else parent
    )
    return CanonicalCode(codes[v], forest.subtree_size[v])


def tree_centers(tree: Forest) -> List[int]:
    n = tree.order
    if n <= 2:
        return list(range(n))
    degree = [len(nbrs) for nbrs in tree.adjacency]
    leaves = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        fresh: List[int] = []
        for u in leaves:
            degree[u] = 0
            for w in tree.adjacency[u]:
                if degree[w] > 0:
                    degree[w] -= 1
                    if degree[w] == 1:
                        fresh.append(w)
        leaves = fresh
    return sorted(leaves)


def best_center(tree: Forest) -> Tuple[int, Dict[int, bytes]]:
    if tree.order == 0 or tree.component_count != 1:
        raise NotConnected(f"expected a tree, got {tree.component_count} components")
    best: Optional[Tuple[bytes, int, Dict[int, bytes]]] = None
    for c in tree_centers(tree):
        codes = codes_below(tree.adjacency, c)
        if best is None or codes[c] < best[0]:
            best = (codes[c], c, codes)
    assert best is not None
    return best[1], best[2]


def tree_canonical(tree: Forest) -> CanonicalCode:
    center, codes = best_center(tree)
    return CanonicalCode(codes[center], tree.order)


def canonical_order(tree: Forest) -> List[int]:
    """Vertices in canonical breadth-first order.

    Two trees with equal `tree_canonical` codes are mapped onto each other
    by pairing their canonical orders position by position.
    """
    center, codes = best_center(tree)
    result: List[int] = []
    queue = deque([(center, NO_PARENT)])
    while queue:
        u, p = queue.popleft()
        result.append(u)
        kids = sorted((w for w in tree.adjacency[u] if w != p), key=lambda w: codes[w])
        queue.extend((w, u) for w in kids)
    return result


def forest_canonical(forest: Forest) -> Tuple[bytes, ...]:
    """Sorted component codes; equal iff the forests are isomorphic."""
    return tuple(
        sorted(tree_canonical(forest.induced(part)[0]).code
               for part in component_vertex_sets(forest))
    )


class ShapeTable:
    """Interns rooted tree shapes as small integers.

    A shape is identified by the sorted tuple of its children's shape ids.
    Children are always interned before their parent, so ids increase
    bottom-up. Ids are only comparable within one table.
    """

    def __init__(self) -> None:
        self._ids: Dict[Tuple[int, ...], int] = {}
        self.children: List[Tuple[int, ...]] = []
        self.size: List[int] = []
        self.leaf = self.intern(())

    def __len__(self) -> int:
        return len(self.children)

    def intern(self, kids: Tuple[int, ...]) -> int:
        found = self._ids.get(kids)
        if found is not None:
            return found
        new_id = len(self.children)
        self._ids[kids] = new_id
        self.children.append(kids)
        self.size.append(1 + sum(self.size[k] for k in kids))
        return new_id


class ShapeIndex:
    """Shapes of the rooted subtrees of one forest, keyed by directed edge.

    `shape(p, v)` is the shape of the component of `forest - p` containing
    `v`, rooted at `v`; `p == NO_PARENT` means the whole component rooted
    at `v`.
    """

    def __init__(self, forest: Forest, table: ShapeTable) -> None:
        self.forest = forest
        self.table = table
        self._memo: Dict[Tuple[int, int], int] = {}

    def shape(self, p: int, v: int) -> int:
        memo = self._memo
        found = memo.get((p, v))
        if found is not None:
            return found
        adjacency = self.forest.adjacency
        stack = [(p, v)]
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            q, u = key
            pending = [(u, w) for w in adjacency[u] if w != q and (u, w) not in memo]
            if pending:
                stack.extend(pending)
                continue
            kids = tuple(sorted(memo[(u, w)] for w in adjacency[u] if w != q))
            memo[key] = self.table.intern(kids)
            stack.pop()
        return memo[(p, v)]

    def children(self, p: int, v: int) -> List[int]:
        """Children of `v` away from `p`, sorted by shape then vertex id."""
        return sorted(
            (w for w in self.forest.adjacency[v] if w != p),
            key=lambda w: (self.shape(v, w), w),
        )

    def subtree(self, p: int, v: int) -> List[int]:
        """`v` and everything below it, in breadth-first order."""
        result = [v]
        parents = [p]
        i = 0
        while i < len(result):
            u, q = result[i], parents[i]
            for w in self.forest.adjacency[u]:
                if w != q:
                    result.append(w)
                    parents.append(u)
            i += 1
        return result
