"""Tree pairs and triples built from 3-PARTITION and 3DM instances.

The pair from a 3-PARTITION instance has a common subforest of order
n(T1) - 1 exactly on yes-instances; the triple from a 3DM instance has a
supertree of order 10q^2 + 3q + 1 exactly on yes-instances. Neither
problem is solved here: certificates are taken as input and only checked.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from forest.embedding import Embedding, contains_induced, verify_embedding
from forest.errors import InvalidInstance, VerificationFailed
from forest.graph import Forest
from instances.families import subdivided_star
from schema.instance import (
    BranchMeta,
    RootedFamilyMeta,
    SubdividedStarMeta,
    ThreeDmInstance,
    ThreePartitionInstance,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Prop1Pair:
    t1: Forest
    t2: Forest
    f1: Forest
    f2: Forest
    meta1: SubdividedStarMeta
    meta2: SubdividedStarMeta
    certificate: Optional[Embedding] = None
    """Embedding of f1 into f2 derived from the instance's certificate."""


def _check_three_partition(inst: ThreePartitionInstance) -> int:
    if len(inst.a) != 3 * inst.m:
        raise InvalidInstance(f"expected {3 * inst.m} integers, got {len(inst.a)}")
    if any(x <= 0 for x in inst.a):
        raise InvalidInstance("all integers must be positive")
    total = sum(inst.a)
    if total % inst.m:
        raise InvalidInstance(f"sum {total} is not divisible by m={inst.m}")
    target = total // inst.m
    for x in inst.a:
        if not (4 * x > target and 2 * x < target):
            raise InvalidInstance(f"{x} is not strictly between A/4 and A/2 for A={target}")
    return target


def _certificate_embedding(
    inst: ThreePartitionInstance, target: int, f1: Forest, f2: Forest
) -> Embedding:
    assert inst.certificate is not None
    used = sorted(i for triple in inst.certificate for i in triple)
    if len(inst.certificate) != inst.m or used != list(range(3 * inst.m)):
        raise InvalidInstance("certificate is not a partition of the indices into m triples")
    start = [sum(inst.a[:i]) for i in range(len(inst.a))]
    mapping: Dict[int, int] = {}
    for bin_index, triple in enumerate(inst.certificate):
        if sum(inst.a[i] for i in triple) != target:
            raise InvalidInstance(f"certificate triple {triple} does not sum to {target}")
        position = bin_index * (target + 2)
        for i in triple:
            for offset in range(inst.a[i]):
                mapping[start[i] + offset] = position + offset
            position += inst.a[i] + 1
    embedding = Embedding.from_dict(mapping, f1.order)
    if not verify_embedding(f1, f2, embedding):
        raise VerificationFailed("certificate does not give an induced copy of F1 in F2")
    return embedding


def gen_prop1(inst: ThreePartitionInstance) -> Prop1Pair:
    target = _check_three_partition(inst)
    t1, meta1 = subdivided_star(inst.a)
    t2, meta2 = subdivided_star([target + 2] * inst.m)
    f1, _ = t1.induced(range(1, t1.order))
    f2, _ = t2.induced(range(1, t2.order))
    certificate = None
    if inst.certificate is not None:
        certificate = _certificate_embedding(inst, target, f1, f2)
    logger.debug("3-partition pair: orders %d and %d", t1.order, t2.order)
    return Prop1Pair(
        t1=t1, t2=t2, f1=f1, f2=f2, meta1=meta1, meta2=meta2, certificate=certificate
    )


class _Builder:
    def __init__(self) -> None:
        self.count = 0
        self.edges: List[Tuple[int, int]] = []

    def vertex(self, parent: Optional[int] = None) -> int:
        v = self.count
        self.count += 1
        if parent is not None:
            self.edges.append((parent, v))
        return v

    def branch(self, parent: int, q: int) -> Tuple[int, List[List[int]]]:
        """r joined to one end of each of three paths of order 2q."""
        root = self.vertex(parent)
        paths = []
        for _ in range(3):
            path = [self.vertex(root)]
            for _ in range(2 * q - 1):
                path.append(self.vertex(path[-1]))
            paths.append(path)
        return root, paths

    def pendants(self, vertices: Sequence[int]) -> None:
        for v in vertices:
            self.vertex(v)

    def build(self) -> Forest:
        return Forest.from_edges(self.count, self.edges)


@dataclass(frozen=True)
class Thm1Triple:
    tx: Forest
    ty: Forest
    tz: Forest
    meta: Dict[str, RootedFamilyMeta]
    witness: Optional[Forest] = None
    witness_embeddings: Optional[Tuple[Embedding, Embedding, Embedding]] = None


def _check_three_dm(inst: ThreeDmInstance) -> None:
    q = inst.q
    if len(set(inst.triples)) != len(inst.triples):
        raise InvalidInstance("duplicate triples")
    for triple in inst.triples:
        if any(not 1 <= e <= q for e in triple):
            raise InvalidInstance(f"triple {triple} has an element outside 1..{q}")
    for axis, name in enumerate("xyz"):
        counts = Counter(t[axis] for t in inst.triples)
        for e in range(1, q + 1):
            if not 1 <= counts[e] <= 3:
                raise InvalidInstance(f"{name}{e} occurs in {counts[e]} triples, need 1 to 3")


def check_3dm_matching(inst: ThreeDmInstance, chosen: Sequence[int]) -> bool:
    """Whether `chosen` indexes q triples covering every element exactly once."""
    if len(chosen) != inst.q or len(set(chosen)) != inst.q:
        return False
    if any(not 0 <= i < len(inst.triples) for i in chosen):
        return False
    picked = [inst.triples[i] for i in chosen]
    everyone = list(range(1, inst.q + 1))
    return all(sorted(t[axis] for t in picked) == everyone for axis in range(3))


def _side_tree(
    inst: ThreeDmInstance, axis: int, matching: Optional[Sequence[int]] = None
) -> Tuple[Forest, RootedFamilyMeta]:
    """T_y (axis 1) or T_z (axis 2); with a matching, the yes-witness on T_y."""
    q = inst.q
    builder = _Builder()
    root = builder.vertex()
    branches = []
    partner: Dict[int, int] = {}
    if matching is not None:
        partner = {inst.triples[i][1]: inst.triples[i][2] for i in matching}
    for e in range(1, q + 1):
        r, paths = builder.branch(root, q)
        builder.pendants(paths[0] + paths[1])
        distance = e if axis == 1 else q + e
        builder.pendants([paths[2][distance - 1]])
        if e in partner:
            builder.pendants([paths[2][q + partner[e] - 1]])
        branches.append(BranchMeta(root=r, paths=paths, relevant=2))
    return builder.build(), RootedFamilyMeta(root=root, branches=branches)


def _x_tree(inst: ThreeDmInstance) -> Tuple[Forest, RootedFamilyMeta]:
    q = inst.q
    builder = _Builder()
    root = builder.vertex()
    branches = []
    for i in range(1, q + 1):
        r, paths = builder.branch(root, q)
        carried = [k for k, t in enumerate(inst.triples) if t[0] == i]
        labels: List[Optional[int]] = []
        for ell, path in enumerate(paths):
            if ell < len(carried):
                _, j, k = inst.triples[carried[ell]]
                builder.pendants([path[j - 1], path[q + k - 1]])
                labels.append(carried[ell])
            else:
                builder.pendants(path)
                labels.append(None)
        branches.append(BranchMeta(root=r, paths=paths, triples=labels))
    return builder.build(), RootedFamilyMeta(root=root, branches=branches)


def gen_thm1(inst: ThreeDmInstance) -> Thm1Triple:
    _check_three_dm(inst)
    tx, meta_x = _x_tree(inst)
    ty, meta_y = _side_tree(inst, 1)
    tz, meta_z = _side_tree(inst, 2)
    meta = {"tx": meta_x, "ty": meta_y, "tz": meta_z}
    if inst.matching is None:
        return Thm1Triple(tx=tx, ty=ty, tz=tz, meta=meta)

    if not check_3dm_matching(inst, inst.matching):
        raise InvalidInstance(f"{inst.matching} is not a perfect matching")
    witness, _ = _side_tree(inst, 1, inst.matching)
    embeddings = []
    for name, tree in (("tx", tx), ("ty", ty), ("tz", tz)):
        found = contains_induced(tree, witness)
        if found is None:
            raise VerificationFailed(f"{name} is not inside the matching witness")
        embeddings.append(found)
    logger.info(
        "3DM triple q=%d: orders %d %d %d, witness %d",
        inst.q,
        tx.order,
        ty.order,
        tz.order,
        witness.order,
    )
    return Thm1Triple(
        tx=tx,
        ty=ty,
        tz=tz,
        meta=meta,
        witness=witness,
        witness_embeddings=(embeddings[0], embeddings[1], embeddings[2]),
    )
