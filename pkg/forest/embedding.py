from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from forest.canonical import best_center
from forest.errors import BudgetExceeded
from forest.graph import Forest, component_vertex_sets

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Embedding:
    """Injective map from pattern vertex ids to host vertex ids."""

    mapping: Tuple[int, ...]

    @classmethod
    def from_dict(cls, mapping: Dict[int, int], order: int) -> Embedding:
        return cls(tuple(mapping[v] for v in range(order)))

    @classmethod
    def identity(cls, order: int) -> Embedding:
        return cls(tuple(range(order)))

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def compose(self, outer: Embedding) -> Embedding:
        """`outer` after `self`: pattern -> host -> outer host."""
        return Embedding(tuple(outer.mapping[h] for h in self.mapping))

    def inverse(self) -> Dict[int, int]:
        return {h: v for v, h in enumerate(self.mapping)}


def verify_embedding(pattern: Forest, host: Forest, embedding: Embedding) -> bool:
    """Independent check of the induced condition in both directions."""
    image = embedding.mapping
    if len(image) != pattern.order:
        return False
    if any(not 0 <= h < host.order for h in image):
        return False
    if len(set(image)) != len(image):
        return False
    for u, v in pattern.edge_set:
        if not host.has_edge(image[u], image[v]):
            return False
    inside = set(image)
    host_edges = sum(1 for h in image for w in host.adjacency[h] if w in inside) // 2
    return host_edges == pattern.edge_count


class _Search:
    """Backtracking placement of pattern vertices into the host.

    Pattern components are placed one after another, largest first, each
    in breadth-first order from its canonical root. `blocked[h]` counts the
    placed host vertices adjacent to `h`.
    """

    def __init__(self, pattern: Forest, host: Forest, node_budget: Optional[int]):
        self.pattern = pattern
        self.host = host
        self.node_budget = node_budget
        self.nodes = 0
        self.steps: List[Tuple[int, int, int]] = []
        self._plan()
        self.mapping = [-1] * pattern.order
        self.used = [False] * host.order
        self.blocked = [0] * host.order

    def _plan(self) -> None:
        planned: List[Tuple[int, bytes, List[Tuple[int, int]]]] = []
        for part in component_vertex_sets(self.pattern):
            sub, back = self.pattern.induced(part)
            center, codes = best_center(sub)
            seq = [(center, -1)]
            i = 0
            while i < len(seq):
                u, p = seq[i]
                kids = sorted(
                    (w for w in sub.adjacency[u] if w != p), key=lambda w: codes[w]
                )
                seq.extend((w, u) for w in kids)
                i += 1
            steps = [(back[u], back[p] if p >= 0 else -1) for u, p in seq]
            planned.append((len(part), codes[center], steps))
        planned.sort(key=lambda item: (-item[0], item[1]))

        # step = (pattern vertex, pattern parent or -1, index of the root
        # step of the previous isomorphic component or -1)
        previous_code: Optional[bytes] = None
        previous_root = -1
        for _, code, seq in planned:
            twin = previous_root if code == previous_code else -1
            previous_code, previous_root = code, len(self.steps)
            for k, (v, p) in enumerate(seq):
                self.steps.append((v, p, twin if k == 0 else -1))

    def _place(self, v: int, h: int) -> None:
        self.mapping[v] = h
        self.used[h] = True
        for w in self.host.adjacency[h]:
            self.blocked[w] += 1

    def _unplace(self, v: int, h: int) -> None:
        self.mapping[v] = -1
        self.used[h] = False
        for w in self.host.adjacency[h]:
            self.blocked[w] -= 1

    def _candidates(self, step: int) -> List[int]:
        v, p, twin = self.steps[step]
        need = self.pattern.degree(v)
        if p >= 0:
            pool: Sequence[int] = self.host.adjacency[self.mapping[p]]
            allowed = 1
        else:
            low = self.mapping[self.steps[twin][0]] + 1 if twin >= 0 else 0
            pool = range(low, self.host.order)
            allowed = 0
        return [
            h
            for h in pool
            if not self.used[h]
            and self.blocked[h] == allowed
            and len(self.host.adjacency[h]) >= need
        ]

    def run(self, step: int = 0) -> bool:
        if step == len(self.steps):
            return True
        v = self.steps[step][0]
        for h in self._candidates(step):
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise BudgetExceeded(
                    f"induced search exceeded {self.node_budget} node expansions"
                )
            self._place(v, h)
            if self.run(step + 1):
                return True
            self._unplace(v, h)
        return False


def _tree_into_forest(pattern: Forest, host: Forest) -> Optional[Embedding]:
    # pairwise builds on this module
    from solver.pairwise import mcs_trees

    for part in component_vertex_sets(host):
        if len(part) < pattern.order:
            continue
        sub, back = host.induced(part)
        result = mcs_trees(pattern, sub)
        if result.size == pattern.order:
            into_pattern = result.embed1.inverse()
            return Embedding(
                tuple(back[result.embed2(into_pattern[v])] for v in range(pattern.order))
            )
    return None


def _degrees_fit(pattern: Forest, host: Forest) -> bool:
    # the i-th largest pattern degree needs i host vertices at least that large
    mine = sorted((len(n) for n in pattern.adjacency), reverse=True)
    theirs = sorted((len(n) for n in host.adjacency), reverse=True)
    return all(a <= b for a, b in zip(mine, theirs))


def contains_induced(
    pattern: Forest, host: Forest, node_budget: Optional[int] = None
) -> Optional[Embedding]:
    """Witness that `pattern` is isomorphic to an induced subforest of `host`.

    Connected patterns go through the polynomial common-subtree check;
    anything else is a budgeted backtracking search.
    """
    if pattern.order == 0:
        return Embedding(())
    if pattern.order > host.order or pattern.edge_count > host.edge_count:
        return None
    if not _degrees_fit(pattern, host):
        return None
    if pattern.is_tree():
        return _tree_into_forest(pattern, host)

    search = _Search(pattern, host, node_budget)
    found = search.run()
    logger.debug(
        "induced search %d into %d: %s after %d nodes",
        pattern.order,
        host.order,
        "found" if found else "none",
        search.nodes,
    )
    if not found:
        return None
    return Embedding(tuple(search.mapping))
