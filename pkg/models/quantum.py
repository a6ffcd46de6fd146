from functools import cached_property
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationInfo, field_validator, model_validator

from core.config import numerics_config
from core.errors import (
    DimensionMismatch,
    Incomplete,
    InvalidDistribution,
    NonHermitian,
    NotFinite,
    NotHermitian,
    NotNormalized,
    NotPositive,
)
from core.linalg import as_complex_matrix, dagger, hermiticity_defect, psd_sqrt


class Ket(BaseModel):
    """Unit state vector |psi>"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _coerce(cls, value) -> np.ndarray:
        v = np.asarray(value, dtype=np.complex128)
        if v.ndim != 1 or v.shape[0] == 0:
            raise NotNormalized(f"ket must be a non-empty vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise NotFinite("ket has NaN or infinite amplitudes")
        norm = float(np.linalg.norm(v))
        if abs(norm * norm - 1.0) > numerics_config.UNIT_NORM_TOL:
            raise NotNormalized(f"ket norm^2 is {norm * norm!r}, expected 1")
        return v

    @classmethod
    def from_amplitudes(cls, values, normalize: bool = False) -> "Ket":
        v = np.asarray(values, dtype=np.complex128)
        if normalize:
            v = v / np.linalg.norm(v)
        return cls(amplitudes=v)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def inner(self, other: "Ket") -> complex:
        """<self|other>"""
        if other.dim != self.dim:
            raise DimensionMismatch(self.dim, other.dim, "kets")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


class DensityMatrix(BaseModel):
    """Unit-trace positive semidefinite operator rho"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _validate_state(cls, value) -> np.ndarray:
        m = as_complex_matrix(value)
        defect = hermiticity_defect(m)
        if defect > numerics_config.HERMITIAN_TOL:
            raise NonHermitian(defect, numerics_config.HERMITIAN_TOL)
        m = (m + dagger(m)) / 2
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > numerics_config.TRACE_TOL:
            raise NotNormalized(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(m)[0])
        if smallest < -numerics_config.POSITIVITY_TOL:
            raise NotPositive(None, smallest)
        return m

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def purity(self) -> float:
        """tr(rho^2)"""
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)


def check_povm_elements(elements, tolerance: Optional[float] = None) -> np.ndarray:
    """
    Validate candidate POVM elements and return them stacked as (n, d, d).

    Hermiticity and positivity use the fixed 1e-10 tolerances; completeness
    uses ``tolerance`` (``COMPLETENESS_TOL`` by default).

    Raises:
        NotHermitian, NotPositive, Incomplete, DimensionMismatch
    """
    tol = numerics_config.COMPLETENESS_TOL if tolerance is None else tolerance
    matrices = [as_complex_matrix(e) for e in elements]
    if not matrices:
        raise Incomplete(1.0, tol)
    dim = matrices[0].shape[0]
    for m in matrices[1:]:
        if m.shape[0] != dim:
            raise DimensionMismatch(dim, m.shape[0], "POVM elements")

    stack = np.stack(matrices)
    for i, m in enumerate(stack):
        defect = hermiticity_defect(m)
        if defect > numerics_config.HERMITIAN_TOL:
            raise NotHermitian(i, defect)
        smallest = float(np.linalg.eigvalsh((m + dagger(m)) / 2)[0])
        if smallest < -numerics_config.POSITIVITY_TOL:
            raise NotPositive(i, smallest)

    deviation = float(np.max(np.abs(stack.sum(axis=0) - np.eye(dim))))
    if deviation > tol:
        raise Incomplete(deviation, tol)
    return stack


class Povm(BaseModel):
    """Ordered positive operators summing to the identity"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    elements: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    @field_validator("elements", mode="before")
    @classmethod
    def _validate_elements(cls, value, info: ValidationInfo) -> np.ndarray:
        return check_povm_elements(value, (info.context or {}).get("tolerance"))

    @model_validator(mode="after")
    def _validate_labels(self) -> "Povm":
        if self.labels is not None and len(self.labels) != len(self.elements):
            raise DimensionMismatch(
                len(self.elements), len(self.labels), "POVM elements and labels"
            )
        return self

    @property
    def dim(self) -> int:
        return int(self.elements.shape[1])

    @property
    def n_outcomes(self) -> int:
        return int(self.elements.shape[0])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"{i + 1}"

    @cached_property
    def sqrt_elements(self) -> np.ndarray:
        """M_i^{1/2} for every element, stacked"""
        return np.stack([psd_sqrt(m) for m in self.elements])

    def is_rank_one(self, cutoff: Optional[float] = None) -> bool:
        cut = numerics_config.EIGEN_CUTOFF if cutoff is None else cutoff
        spectra = np.linalg.eigvalsh((self.elements + dagger(self.elements)) / 2)
        return bool(np.all(np.sum(spectra > cut, axis=1) <= 1))

    def is_projective(self, tolerance: Optional[float] = None) -> bool:
        tol = numerics_config.COMPLETENESS_TOL if tolerance is None else tolerance
        squares = self.elements @ self.elements
        return bool(np.max(np.abs(squares - self.elements)) <= tol)


class ProbabilityDistribution(BaseModel):
    """Outcome probabilities p_i; round-off negatives are clamped to zero"""

    model_config = ConfigDict(frozen=True)

    probabilities: tuple[float, ...]

    @field_validator("probabilities", mode="before")
    @classmethod
    def _validate_probabilities(cls, value) -> tuple[float, ...]:
        p = np.asarray(value, dtype=np.float64).ravel()
        if p.size == 0:
            raise InvalidDistribution("distribution must have at least one entry")
        if not np.all(np.isfinite(p)):
            raise InvalidDistribution("distribution has NaN or infinite entries")
        floor = numerics_config.PROBABILITY_FLOOR
        if np.min(p) < -floor:
            raise InvalidDistribution(f"negative probability {float(np.min(p))!r}")
        p = np.clip(p, 0.0, None)
        total = float(p.sum())
        if abs(total - 1.0) > numerics_config.DISTRIBUTION_TOL:
            raise InvalidDistribution(f"probabilities sum to {total!r}, expected 1")
        return tuple(float(x) for x in p)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.probabilities, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.probabilities)
