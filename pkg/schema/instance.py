from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

__all__ = [
    "ThreePartitionInstance",
    "ThreeDmInstance",
    "TightnessParams",
    "CaterpillarMeta",
    "SubdividedStarMeta",
    "BranchMeta",
    "RootedFamilyMeta",
    "InstanceSidecar",
]


class ThreePartitionInstance(BaseModel):
    m: int = Field(..., ge=1)
    a: List[int]
    """3m positive integers; each should lie strictly between A/4 and A/2."""

    certificate: Optional[List[Tuple[int, int, int]]] = None
    """Zero-based indices into `a`, one triple per target bin, if known."""

    @property
    def target(self) -> Fraction:
        return Fraction(sum(self.a), self.m)


class ThreeDmInstance(BaseModel):
    q: int = Field(..., ge=1)
    triples: List[Tuple[int, int, int]]
    """One-based (x, y, z) element indices."""

    matching: Optional[List[int]] = None
    """Indices into `triples` forming a perfect matching, if known."""


class TightnessParams(BaseModel):
    a: int
    b: int
    c: int


class CaterpillarMeta(BaseModel):
    counts: List[int]
    spine: List[int]


class SubdividedStarMeta(BaseModel):
    center: int
    legs: List[List[int]]
    """Vertex ids of each leg, from the neighbor of the center outward."""


class BranchMeta(BaseModel):
    root: int
    """r(x_i), r(y_j) or r(z_k)."""

    paths: List[List[int]]
    """The three paths, each listed by distance 1..2q from `root`."""

    relevant: Optional[int] = None
    """Index into `paths` of the relevant branch, for the y and z trees."""

    triples: List[Optional[int]] = Field(default_factory=list)
    """For x trees: triple index carried by each path, None for a full path."""


class RootedFamilyMeta(BaseModel):
    root: int
    """r_x, r_y or r_z: the unique vertex of degree q."""

    branches: List[BranchMeta]


class InstanceSidecar(BaseModel):
    family: Literal["prop1", "thm1", "tightness", "caterpillar", "random", "tradeoff"]
    params: Dict[str, Any] = Field(default_factory=dict)
    trees: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    """Vertex-role metadata per emitted file name."""
