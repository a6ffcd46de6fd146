from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.entropy import ConjugatePair
from models.quantum import DensityMatrix, Ket, Povm

# Комплексное число как [re, im]
ComplexNumber = tuple[float, float]
ComplexVectorJson = list[ComplexNumber]
ComplexMatrixJson = list[list[ComplexNumber]]


class StateSpec(BaseModel):
    """Exactly one of a pure state ``ket`` or a density matrix ``rho``"""

    ket: Optional[ComplexVectorJson] = None
    rho: Optional[ComplexMatrixJson] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "StateSpec":
        if (self.ket is None) == (self.rho is None):
            raise ValueError("state needs exactly one of 'ket' or 'rho'")
        return self


class InstanceFile(BaseModel):
    """On-disk description of one bound-checking instance"""

    dim: int = Field(ge=1)
    state: StateSpec
    povms: dict[str, list[ComplexMatrixJson]]
    orders: Optional[list[float]] = None
    pair: Optional[tuple[float, float]] = None

    @model_validator(mode="after")
    def _consistent_dims(self) -> "InstanceFile":
        d = self.dim
        if self.state.ket is not None and len(self.state.ket) != d:
            raise ValueError(f"ket has {len(self.state.ket)} amplitudes, dim is {d}")
        if self.state.rho is not None and not _is_square(self.state.rho, d):
            raise ValueError(f"rho is not {d}x{d}")
        if not 1 <= len(self.povms) <= 2:
            raise ValueError(f"expected one or two POVMs, got {len(self.povms)}")
        for name, elements in self.povms.items():
            if not elements:
                raise ValueError(f"POVM '{name}' has no elements")
            for k, element in enumerate(elements):
                if not _is_square(element, d):
                    raise ValueError(f"element {k} of POVM '{name}' is not {d}x{d}")
        return self


def _is_square(rows: ComplexMatrixJson, d: int) -> bool:
    return len(rows) == d and all(len(row) == d for row in rows)


class LoadedInstance(BaseModel):
    """Validated objects decoded from an InstanceFile"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    state: Union[Ket, DensityMatrix]
    povms: dict[str, Povm]
    orders: list[float] = []
    pair: Optional[ConjugatePair] = None
