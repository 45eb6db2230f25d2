"""`gen` subcommand: instance files plus JSON metadata sidecars."""
import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from forest.graph import Forest, random_forest, serialize_forest, to_dot
from instances.families import caterpillar, caterpillar_meta, gen_tightness, gen_tradeoff
from instances.reductions import gen_prop1, gen_thm1
from schema import (
    InstanceSidecar,
    ReportRecord,
    RunConfig,
    ThreeDmInstance,
    ThreePartitionInstance,
    TightnessParams,
)

logger = logging.getLogger(__name__)

# one generated file: (file stem, forests, sidecar)
Generated = Tuple[str, List[Forest], InstanceSidecar]


def _caterpillar(params: Dict[str, Any]) -> List[Generated]:
    counts = [int(n) for n in params.get("counts", [0])]
    tree = caterpillar(counts)
    sidecar = InstanceSidecar(
        family="caterpillar",
        params={"counts": counts},
        trees={"T": caterpillar_meta(counts).dict()},
    )
    return [("caterpillar", [tree], sidecar)]


def _tightness(params: Dict[str, Any]) -> List[Generated]:
    p = TightnessParams(a=params.get("a", 3), b=params.get("b", 2), c=params.get("c", 1))
    family = gen_tightness(p)
    values = p.dict()
    sidecar = InstanceSidecar(
        family="tightness",
        params={**values, "known_order": family.known.order},
        trees={
            "known_embeddings": {
                f"T{i + 1}": list(e.mapping) for i, e in enumerate(family.embeddings)
            }
        },
    )
    known = InstanceSidecar(family="tightness", params=values)
    return [
        ("tightness", list(family.trees), sidecar),
        ("tightness_known", [family.known], known),
    ]


def _prop1(params: Dict[str, Any]) -> List[Generated]:
    inst = ThreePartitionInstance(
        m=params.get("m", 2),
        a=params.get("values", [2, 2, 3, 2, 2, 3]),
        certificate=params.get("certificate"),
    )
    pair = gen_prop1(inst)
    trees: Dict[str, Dict[str, Any]] = {"T1": pair.meta1.dict(), "T2": pair.meta2.dict()}
    if pair.certificate is not None:
        trees["F1_into_F2"] = {"mapping": list(pair.certificate.mapping)}
    sidecar = InstanceSidecar(family="prop1", params=inst.dict(), trees=trees)
    paths = InstanceSidecar(family="prop1", params=inst.dict())
    return [("prop1", [pair.t1, pair.t2], sidecar), ("prop1_paths", [pair.f1, pair.f2], paths)]


def _thm1(params: Dict[str, Any]) -> List[Generated]:
    inst = ThreeDmInstance(
        q=params.get("q", 2),
        triples=params.get("triples", [(1, 1, 1), (2, 2, 2)]),
        matching=params.get("matching"),
    )
    triple = gen_thm1(inst)
    trees = {name: meta.dict() for name, meta in triple.meta.items()}
    sidecar = InstanceSidecar(family="thm1", params=inst.dict(), trees=trees)
    result = [("thm1", [triple.tx, triple.ty, triple.tz], sidecar)]
    if triple.witness is not None and triple.witness_embeddings is not None:
        witness = InstanceSidecar(
            family="thm1",
            params=inst.dict(),
            trees={
                "embeddings": {
                    name: list(e.mapping)
                    for name, e in zip(("tx", "ty", "tz"), triple.witness_embeddings)
                }
            },
        )
        result.append(("thm1_witness", [triple.witness], witness))
    return result


def _random(params: Dict[str, Any], seed: int) -> List[Generated]:
    rng = np.random.default_rng(seed)
    count = int(params.get("count", 1))
    order = int(params.get("order", 8))
    k = int(params.get("k", 2))
    max_degree = params.get("max_degree")
    result: List[Generated] = []
    for i in range(count):
        forests = [
            random_forest(seed, order, max_degree=max_degree, rng=rng) for _ in range(k)
        ]
        sidecar = InstanceSidecar(
            family="random", params={"seed": seed, "index": i, "order": order, "k": k}
        )
        result.append((f"random_{i:03d}", forests, sidecar))
    return result


def _tradeoff(params: Dict[str, Any]) -> List[Generated]:
    a, k = int(params.get("a", 3)), int(params.get("k", 2))
    sidecar = InstanceSidecar(family="tradeoff", params={"a": a, "k": k})
    return [("tradeoff", gen_tradeoff(a, k), sidecar)]


def generate(run: RunConfig) -> List[Generated]:
    family, params = run.family, run.params
    if family == "caterpillar":
        return _caterpillar(params)
    if family == "tightness":
        return _tightness(params)
    if family == "prop1":
        return _prop1(params)
    if family == "thm1":
        return _thm1(params)
    if family == "random":
        return _random(params, run.seed)
    return _tradeoff(params)


def render(stem: str, forests: List[Forest], fmt: str) -> str:
    if fmt == "dot":
        return "".join(to_dot(f, f"{stem}_{i}") for i, f in enumerate(forests))
    return "".join(serialize_forest(f, comment=f"{stem} {i}") for i, f in enumerate(forests))


def records_for(generated: List[Generated]) -> List[ReportRecord]:
    return [
        ReportRecord(
            instance=stem,
            algorithm=f"gen:{sidecar.family}",
            order=max(f.order for f in forests) if forests else 0,
            verification="pass",
            details={"orders": [f.order for f in forests]},
        )
        for stem, forests, sidecar in generated
    ]
