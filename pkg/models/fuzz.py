from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from models.report import Violation


class FuzzSettings(BaseModel):
    seed: int = Field(ge=0, lt=2**64)
    trials: int = Field(ge=1)
    dims: tuple[int, int] = (2, 6)
    outcomes: tuple[int, int] = (2, 5)
    rank_one: bool = False
    jobs: int = Field(default=1, ge=1)
    alphas: tuple[float, ...] = (0.6, 0.75, 1.0, 1.5, 2.0, 4.0)
    orders: tuple[float, ...] = (0.3, 0.5, 1.0, 2.0, 3.0, 10.0)

    @model_validator(mode="after")
    def _ranges(self) -> "FuzzSettings":
        for name, (lo, hi) in (("dims", self.dims), ("outcomes", self.outcomes)):
            if lo < 1 or hi < lo:
                raise ValueError(f"invalid {name} range {lo}..{hi}")
        return self


class TrialResult(BaseModel):
    index: int
    seed: int
    dim: int
    outcomes: tuple[int, int]
    state_rank: int
    rank_one: bool
    relation1_bound: Optional[float] = None
    uncoupled_bound: Optional[float] = None
    sharper: Optional[Literal["relation1", "uncoupled", "tie"]] = None
    min_slack: dict[str, float] = {}
    violations: list[Violation] = []
    saturation_gap: Optional[float] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return bool(self.violations) or self.error is not None


class FailedTrial(BaseModel):
    index: int
    seed: int
    reason: str


class FuzzSummary(BaseModel):
    """Order-independent reduction over all trials"""

    seed: int
    trials: int
    violations: int
    saturation_checked: int
    saturation_failures: int
    max_saturation_gap: Optional[float] = None
    errors: int
    min_slack: dict[str, float]
    relation1_sharper: int
    uncoupled_sharper: int
    relation1_sharper_seed: Optional[int] = None
    uncoupled_sharper_seed: Optional[int] = None
    failed: list[FailedTrial]

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.saturation_failures == 0 and self.errors == 0

    @property
    def independence_exhibited(self) -> bool:
        return self.relation1_sharper > 0 and self.uncoupled_sharper > 0
