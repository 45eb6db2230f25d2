from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import networkx as nx

from schema import WeightMatrix

# Above this many items per side the grouped problem is solved as a
# min-cost flow over the groups instead of an expanded assignment.
EXPANSION_LIMIT = 24

_INF = 1 << 62

Pairing = List[Tuple[int, int]]


def hungarian(weights: Sequence[Sequence[int]]) -> Tuple[int, Pairing]:
    """Maximum total weight of a matching in a nonnegative integer matrix.

    Kuhn-Munkres with potentials on the zero-padded square matrix. Pairs of
    weight zero are left out of the returned pairing.
    """
    rows = len(weights)
    cols = len(weights[0]) if rows else 0
    n = max(rows, cols)
    if n == 0:
        return 0, []
    top = max(max(r) for r in weights) if cols else 0

    def cost(i: int, j: int) -> int:
        if i < rows and j < cols:
            return top - weights[i][j]
        return top

    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = _INF
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost(i0 - 1, j - 1) - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while True:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
            if j0 == 0:
                break

    pairing = sorted(
        (match[j] - 1, j - 1)
        for j in range(1, n + 1)
        if match[j] - 1 < rows and j - 1 < cols and weights[match[j] - 1][j - 1] > 0
    )
    return sum(weights[i][j] for i, j in pairing), pairing


def max_weight_matching(matrix: WeightMatrix) -> Tuple[int, Pairing]:
    return hungarian(matrix.w)


def _transport_by_flow(
    row_counts: Sequence[int], col_counts: Sequence[int], weights: Sequence[Sequence[int]]
) -> Tuple[int, Dict[Tuple[int, int], int]]:
    supply = sum(row_counts)
    graph = nx.DiGraph()
    graph.add_node("source", demand=-supply)
    graph.add_node("sink", demand=supply)
    graph.add_edge("source", "sink", capacity=supply, weight=0)
    for i, count in enumerate(row_counts):
        graph.add_edge("source", ("row", i), capacity=count, weight=0)
    for j, count in enumerate(col_counts):
        graph.add_edge(("col", j), "sink", capacity=count, weight=0)
    for i, row in enumerate(weights):
        for j, w in enumerate(row):
            if w > 0:
                graph.add_edge(
                    ("row", i),
                    ("col", j),
                    capacity=min(row_counts[i], col_counts[j]),
                    weight=-w,
                )
    flow = nx.min_cost_flow(graph)
    amounts = {
        (i, j): flow[("row", i)][("col", j)]
        for i, row in enumerate(weights)
        for j, w in enumerate(row)
        if w > 0 and flow[("row", i)][("col", j)] > 0
    }
    return sum(weights[i][j] * f for (i, j), f in amounts.items()), amounts


def max_weight_transport(
    row_counts: Sequence[int], col_counts: Sequence[int], weights: Sequence[Sequence[int]]
) -> Tuple[int, Dict[Tuple[int, int], int]]:
    """Maximum weight matching between groups of interchangeable items.

    Row group `i` holds `row_counts[i]` identical items, and likewise for
    columns; matching an item of row group `i` to one of column group `j`
    earns `weights[i][j]`. Returns the value and how many pairs each
    (row group, column group) receives.
    """
    if not row_counts or not col_counts:
        return 0, {}
    if max(sum(row_counts), sum(col_counts)) > EXPANSION_LIMIT:
        return _transport_by_flow(row_counts, col_counts, weights)

    row_group = [i for i, c in enumerate(row_counts) for _ in range(c)]
    col_group = [j for j, c in enumerate(col_counts) for _ in range(c)]
    expanded = [[weights[i][j] for j in col_group] for i in row_group]
    value, pairing = hungarian(expanded)
    amounts: Dict[Tuple[int, int], int] = {}
    for r, c in pairing:
        key = (row_group[r], col_group[c])
        amounts[key] = amounts.get(key, 0) + 1
    return value, amounts
