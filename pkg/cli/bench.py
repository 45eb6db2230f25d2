"""Greedy supertree ratio sweeps, written as CSV."""
import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from forest.graph import random_forest
from instances.families import gen_tightness
from schema import OracleBudget, TightnessParams
from solver.greedy import greedy_supertree
from solver.oracle import oracle_min_superforest

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioRow:
    label: str
    k: int
    greedy_order: int
    reference_order: int
    bound: Fraction

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.greedy_order, self.reference_order)


def tightness_sweep(a_values: Sequence[int], b: int = 2, c: int = 1) -> List[RatioRow]:
    """Greedy against the known supertree of each tightness instance."""
    rows = []
    for a in a_values:
        family = gen_tightness(TightnessParams(a=a, b=b, c=c))
        result, trace = greedy_supertree(list(family.trees))
        rows.append(
            RatioRow(
                label=f"tightness a={a} b={b} c={c}",
                k=3,
                greedy_order=result.order,
                reference_order=family.known.order,
                bound=trace.bound,
            )
        )
        logger.info("a=%d: greedy %d, known %d", a, result.order, family.known.order)
    return rows


def random_sweep(
    seed: int,
    count: int,
    k_values: Sequence[int] = (2, 3, 4),
    max_order: int = 7,
    budget: Optional[OracleBudget] = None,
) -> List[RatioRow]:
    """Greedy against the oracle optimum on random small tree sets."""
    budget = budget or OracleBudget()
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(count):
        k = int(k_values[i % len(k_values)])
        trees = []
        for _ in range(k):
            order = int(rng.integers(1, max_order + 1))
            trees.append(random_forest(seed, order, rng=rng))
        result, trace = greedy_supertree(trees)
        optimum = oracle_min_superforest(trees, budget)
        rows.append(
            RatioRow(
                label=f"random {i}",
                k=k,
                greedy_order=result.order,
                reference_order=optimum.order,
                bound=trace.bound,
            )
        )
    return rows


def rows_to_csv(rows: Sequence[RatioRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["instance", "k", "greedy", "reference", "ratio", "ratio_float", "bound"])
    for row in rows:
        writer.writerow(
            [
                row.label,
                row.k,
                row.greedy_order,
                row.reference_order,
                str(row.ratio),
                f"{float(row.ratio):.6f}",
                str(row.bound),
            ]
        )
    return out.getvalue()
