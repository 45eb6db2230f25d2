from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field, root_validator, validator

__all__ = ["WeightMatrix", "OracleBudget", "SolverConfig"]


class WeightMatrix(BaseModel):
    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    w: List[List[int]]

    @root_validator(skip_on_failure=True)
    def _shape_and_sign(cls, values):  # type: ignore
        rows, cols, w = values["rows"], values["cols"], values["w"]
        if len(w) != rows or any(len(r) != cols for r in w):
            raise ValueError(f"weights are not a {rows}x{cols} matrix")
        if any(x < 0 for r in w for x in r):
            raise ValueError("weights must be nonnegative")
        return values

    @classmethod
    def of(cls, w: List[List[int]]) -> WeightMatrix:
        return cls(rows=len(w), cols=len(w[0]) if w else 0, w=w)


class OracleBudget(BaseModel):
    """Limits for the exhaustive solvers. Hitting one means "unknown"."""

    max_host_order: int = Field(16, gt=0)
    """Largest superforest order the superforest oracle will try."""

    max_subset_order: int = Field(16, gt=0)
    """Largest input whose vertex subsets the subforest oracle enumerates."""

    node_budget: int = Field(2_000_000, gt=0)
    """Node expansions allowed per induced-containment search."""


class SolverConfig(BaseModel):
    partition_cap: int = Field(12, gt=0)
    """Largest ground set U1 ∪ U2 ∪ U3 the exact three-tree DP enumerates."""

    delta_cap: int = Field(6, ge=1)
    """Largest component order the approximation scheme catalogs."""

    state_budget: int = Field(200_000, gt=0)
    """Largest vector set the approximation scheme keeps for one state."""

    strict_cap: bool = False
    """Raise instead of silently lowering delta to the cap."""

    oracle: OracleBudget = Field(default_factory=OracleBudget)

    @validator("delta_cap")
    def _catalog_fits(cls, v: int) -> int:
        if v > 10:
            raise ValueError("delta_cap above 10 is beyond desk scale")
        return v
