import os

from cli.util.io import (
    expand_inputs,
    load_forests_from_path,
    load_instances,
    load_sidecar,
    sidecar_path,
    write_text,
)
from forest.canonical import tree_canonical

script_dir = os.path.dirname(__file__)
data_dir = os.path.join(script_dir, "example_data")


def test_load_forests_from_file():
    first, second = load_forests_from_path(os.path.join(data_dir, "identical.forest"))
    assert first.order == second.order == 5
    assert first != second
    assert tree_canonical(first) == tree_canonical(second)


def test_expand_directory():
    found = expand_inputs([data_dir])
    assert [os.path.basename(p) for p in found] == [
        "identical.forest",
        "path4.forest",
        "triple.forest",
    ]
    single = os.path.join(data_dir, "path4.forest")
    assert expand_inputs([single]) == [single]


def test_sidecars():
    triple = os.path.join(data_dir, "triple.forest")
    assert sidecar_path(triple) == os.path.join(data_dir, "triple.meta.json")
    sidecar = load_sidecar(triple)
    assert sidecar is not None
    assert sidecar.params["known_order"] == 4
    assert load_sidecar(os.path.join(data_dir, "path4.forest")) is None


def test_load_instances():
    instances = load_instances([data_dir])
    assert [len(forests) for _, forests, _ in instances] == [2, 1, 3]
    assert [meta is not None for _, _, meta in instances] == [False, False, True]


def test_write_text(tmp_path):
    assert write_text(None, "x.txt", "hello") == "hello"
    out = os.path.join(tmp_path, "nested")
    assert write_text(out, "x.txt", "hello") is None
    with open(os.path.join(out, "x.txt")) as f:
        assert f.read() == "hello"
