from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, root_validator

__all__ = [
    "SUBCOMMANDS",
    "GEN_FAMILIES",
    "RunConfig",
    "ReportRecord",
    "Report",
]

SUBCOMMANDS = (
    "mcs2",
    "super2",
    "greedy",
    "exact3",
    "ptas",
    "oracle-sub",
    "oracle-super",
    "gen",
    "bench",
)
GEN_FAMILIES = ("prop1", "thm1", "tightness", "caterpillar", "random", "tradeoff")


class RunConfig(BaseModel):
    subcommand: Literal[
        "mcs2",
        "super2",
        "greedy",
        "exact3",
        "ptas",
        "oracle-sub",
        "oracle-super",
        "gen",
        "bench",
    ]
    inputs: List[str] = Field(default_factory=list)
    """Forest files. Each file is one instance; its forests are the inputs."""

    epsilon: Optional[float] = Field(None, gt=0)
    delta: Optional[int] = Field(None, ge=1)
    budget_nodes: Optional[int] = Field(None, gt=0)
    seed: int = 0
    format: Literal["json", "dot", "edges"] = "json"
    jobs: int = Field(1, ge=1)
    out: Optional[str] = None
    timings: bool = False

    family: Optional[str] = None
    """Generator family for `gen`."""

    params: Dict[str, Any] = Field(default_factory=dict)
    """Generator or sweep parameters, e.g. a, b, c, counts, q, triples."""

    @root_validator(skip_on_failure=True)
    def _subcommand_needs(cls, values):  # type: ignore
        sub = values["subcommand"]
        if sub == "ptas" and values["epsilon"] is None and values["delta"] is None:
            raise ValueError("ptas needs --epsilon or --delta")
        if sub == "gen" and values["family"] not in GEN_FAMILIES:
            raise ValueError(f"gen needs a family from {', '.join(GEN_FAMILIES)}")
        if sub not in ("gen", "bench") and not values["inputs"]:
            raise ValueError(f"{sub} needs at least one --input file")
        return values


class ReportRecord(BaseModel):
    instance: str
    algorithm: str
    order: Optional[int] = None
    bound: Optional[str] = None
    """Guarantee or ratio bound as an exact fraction, e.g. "7/6"."""

    wall_time: Optional[float] = None
    verification: Literal["pass", "fail", "skipped"]
    """Result of re-checking the embeddings, never taken from the solver."""

    details: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    seed: int
    config: RunConfig
    records: List[ReportRecord] = Field(default_factory=list)
