from pydantic import BaseModel, ConfigDict, Field, model_validator


class SampleConfig(BaseModel):
    """Everything a sampler needs; identical configs give identical samples"""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2**64)
    dim: int = Field(ge=1)
    n_outcomes: int = Field(default=2, ge=1)
    rank_one_only: bool = False
    state_rank: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _rank_fits(self) -> "SampleConfig":
        if self.state_rank > self.dim:
            raise ValueError(f"state_rank {self.state_rank} exceeds dim {self.dim}")
        return self
