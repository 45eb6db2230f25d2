import os
from glob import glob
from typing import List, Optional, Tuple

from forest.graph import Forest, parse_forests
from schema import InstanceSidecar

FOREST_SUFFIX = ".forest"
SIDECAR_SUFFIX = ".meta.json"


def load_forests_from_path(path: str) -> List[Forest]:
    with open(path, "r") as f:
        text = f.read()
    return parse_forests(text)


def sidecar_path(path: str) -> str:
    root, _ = os.path.splitext(path)
    return root + SIDECAR_SUFFIX


def load_sidecar(path: str) -> Optional[InstanceSidecar]:
    meta = sidecar_path(path)
    if not os.path.exists(meta):
        return None
    with open(meta, "r") as f:
        return InstanceSidecar.parse_raw(f.read())


def expand_inputs(paths: List[str]) -> List[str]:
    """Files as given; directories contribute their *.forest files, sorted."""
    result: List[str] = []
    for path in paths:
        if os.path.isdir(path):
            found = glob(os.path.join(path, "*" + FOREST_SUFFIX))
            found.sort()
            result.extend(found)
        else:
            result.append(path)
    return result


def load_instances(
    paths: List[str],
) -> List[Tuple[str, List[Forest], Optional[InstanceSidecar]]]:
    return [
        (path, load_forests_from_path(path), load_sidecar(path))
        for path in expand_inputs(paths)
    ]


def write_text(out: Optional[str], name: str, text: str) -> Optional[str]:
    """Write into directory `out`, or return the text for stdout if no `out`."""
    if out is None:
        return text
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, name), "w") as f:
        f.write(text)
    return None
