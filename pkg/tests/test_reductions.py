import pytest

from forest.embedding import contains_induced, verify_embedding
from forest.errors import InvalidInstance
from forest.graph import components
from instances.reductions import check_3dm_matching, gen_prop1, gen_thm1
from schema import ThreeDmInstance, ThreePartitionInstance

YES_PARTITION = ThreePartitionInstance(
    m=2, a=[2, 2, 3, 2, 2, 3], certificate=[(0, 1, 2), (3, 4, 5)]
)

# x1 occurs in three triples; the first four form a perfect matching.
MATCHING_TRIPLES = [(1, 1, 1), (2, 2, 2), (3, 3, 3), (4, 4, 4), (1, 2, 3), (1, 3, 4)]


def test_partition_pair_orders_and_degrees():
    pair = gen_prop1(YES_PARTITION)
    assert (pair.t1.order, pair.t2.order) == (15, 19)
    assert pair.t1.degree(pair.meta1.center) == 6
    assert pair.t2.degree(pair.meta2.center) == 2
    assert pair.f2.order == pair.f1.order + 2 * YES_PARTITION.m
    assert sorted(c.order for c in components(pair.f1)) == [2, 2, 2, 2, 3, 3]


def test_partition_certificate_embeds():
    pair = gen_prop1(YES_PARTITION)
    assert pair.certificate is not None
    assert verify_embedding(pair.f1, pair.f2, pair.certificate)
    assert contains_induced(pair.f1, pair.f2) is not None


@pytest.mark.parametrize(
    "m,a",
    [
        (1, [1, 1, 2]),
        (2, [2, 2, 3, 2, 2]),
        (2, [1, 2, 3, 2, 2, 4]),
        (1, [0, 2, 2]),
    ],
)
def test_partition_rejects_invalid(m, a):
    with pytest.raises(InvalidInstance):
        gen_prop1(ThreePartitionInstance(m=m, a=a))


def test_partition_rejects_bad_certificate():
    inst = ThreePartitionInstance(
        m=2, a=[2, 2, 3, 2, 2, 3], certificate=[(0, 1, 3), (2, 4, 5)]
    )
    with pytest.raises(InvalidInstance):
        gen_prop1(inst)


def test_matching_triple_orders():
    q = 4
    triple = gen_thm1(ThreeDmInstance(q=q, triples=MATCHING_TRIPLES))
    assert triple.ty.order == triple.tz.order == 10 * q * q + 2 * q + 1 == 169
    assert triple.witness is None
    for name, tree in (("tx", triple.tx), ("ty", triple.ty), ("tz", triple.tz)):
        root = triple.meta[name].root
        assert tree.degree(root) == q


def test_x_branch_with_three_triples():
    triple = gen_thm1(ThreeDmInstance(q=4, triples=MATCHING_TRIPLES))
    meta = triple.meta["tx"]
    rest, _ = triple.tx.induced([v for v in range(triple.tx.order) if v != meta.root])
    sizes = {}
    for part in components(rest):
        sizes[part.order] = sizes.get(part.order, 0) + 1
    assert sizes == {31: 1, 43: 3}
    assert meta.branches[0].triples == [0, 4, 5]
    assert meta.branches[1].triples == [1, None, None]


def test_matching_witness():
    q = 4
    inst = ThreeDmInstance(q=q, triples=MATCHING_TRIPLES, matching=[0, 1, 2, 3])
    triple = gen_thm1(inst)
    assert triple.witness is not None
    assert triple.witness.order == 10 * q * q + 3 * q + 1 == 173
    assert triple.witness_embeddings is not None
    for tree, embedding in zip((triple.tx, triple.ty, triple.tz), triple.witness_embeddings):
        assert verify_embedding(tree, triple.witness, embedding)


def test_check_matching():
    inst = ThreeDmInstance(q=4, triples=MATCHING_TRIPLES)
    assert check_3dm_matching(inst, [0, 1, 2, 3])
    assert not check_3dm_matching(inst, [4, 1, 2, 3])
    assert not check_3dm_matching(inst, [0, 1, 2])
    assert not check_3dm_matching(inst, [0, 0, 2, 3])
    assert not check_3dm_matching(inst, [0, 1, 2, 9])


@pytest.mark.parametrize(
    "q,triples",
    [
        (2, [(1, 1, 1)]),
        (2, [(1, 1, 1), (2, 2, 2), (1, 1, 1)]),
        (2, [(1, 1, 1), (2, 2, 3)]),
        (2, [(1, 1, 1), (1, 2, 2), (1, 1, 2), (1, 2, 1), (2, 2, 2)]),
    ],
)
def test_3dm_rejects_invalid(q, triples):
    with pytest.raises(InvalidInstance):
        gen_thm1(ThreeDmInstance(q=q, triples=triples))


def test_3dm_rejects_non_matching():
    inst = ThreeDmInstance(q=4, triples=MATCHING_TRIPLES, matching=[4, 1, 2, 3])
    with pytest.raises(InvalidInstance):
        gen_thm1(inst)
