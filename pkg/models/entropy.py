import math

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from core.config import numerics_config
from core.errors import InvalidOrder, OutOfRange


class RenyiOrder(BaseModel):
    """Renyi order alpha > 0; exactly 1.0 is the Shannon marker"""

    model_config = ConfigDict(frozen=True)

    value: float

    @field_validator("value")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not math.isfinite(value) or value <= 0:
            raise InvalidOrder(value)
        return value

    @property
    def is_shannon(self) -> bool:
        return self.value == 1.0

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return "shannon" if self.is_shannon else f"{self.value:g}"


SHANNON = RenyiOrder(value=1.0)


class ConjugatePair(BaseModel):
    """Orders (alpha, beta) with 1/alpha + 1/beta = 2, both above 1/2"""

    model_config = ConfigDict(frozen=True)

    alpha: RenyiOrder
    beta: RenyiOrder

    @field_validator("alpha", "beta", mode="before")
    @classmethod
    def _wrap_float(cls, value):
        if isinstance(value, (int, float)):
            return RenyiOrder(value=float(value))
        return value

    @model_validator(mode="after")
    def _conjugate(self) -> "ConjugatePair":
        for order in (self.alpha, self.beta):
            if order.value <= 0.5:
                raise OutOfRange(order.value)
        if self.alpha.is_shannon != self.beta.is_shannon:
            raise OutOfRange(self.alpha.value if not self.alpha.is_shannon else self.beta.value)
        gap = abs(1 / self.alpha.value + 1 / self.beta.value - 2)
        if gap > numerics_config.CONJUGACY_TOL:
            raise ValueError(
                f"orders ({self.alpha}, {self.beta}) are not conjugate: "
                f"1/a + 1/b - 2 = {gap:.3e}"
            )
        return self

    def swapped(self) -> "ConjugatePair":
        return ConjugatePair(alpha=self.beta, beta=self.alpha)

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"
