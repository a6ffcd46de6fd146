"""States, POVMs and outcome statistics"""

import logging
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from core.config import numerics_config
from core.errors import DimensionMismatch, NumericalResidueError
from core.linalg import hermitian_eig, outer
from models.linalg import ComplexMatrix
from models.quantum import (
    DensityMatrix,
    Ket,
    Povm,
    ProbabilityDistribution,
    check_povm_elements,
)

logger = logging.getLogger(__name__)

State = Union[Ket, DensityMatrix]

SQRT_HALF = 1 / np.sqrt(2)


def ket_0() -> Ket:
    return Ket(amplitudes=[1.0, 0.0])


def ket_1() -> Ket:
    return Ket(amplitudes=[0.0, 1.0])


def ket_plus() -> Ket:
    return Ket(amplitudes=[SQRT_HALF, SQRT_HALF])


def ket_minus() -> Ket:
    return Ket(amplitudes=[SQRT_HALF, -SQRT_HALF])


def validate_povm(
    elements: Iterable,
    tolerance: Optional[float] = None,
    labels: Optional[Sequence[str]] = None,
) -> Povm:
    """
    Check Hermiticity, positivity and completeness (sum M_i = 1) of the
    candidate elements and wrap them as a Povm.

    Raises:
        NotHermitian: element i is not Hermitian
        NotPositive: element i has an eigenvalue below -1e-10
        Incomplete: the elements do not sum to the identity within ``tolerance``
    """
    stack = check_povm_elements(list(elements), tolerance)
    povm_labels = tuple(labels) if labels is not None else None
    if povm_labels is not None and len(povm_labels) != len(stack):
        raise DimensionMismatch(len(stack), len(povm_labels), "POVM elements and labels")
    logger.debug(f"Validated POVM: {len(stack)} outcomes, dim {stack.shape[1]}")
    return Povm.model_construct(elements=stack, labels=povm_labels)


def pvm_from_basis(vectors: Sequence[Ket], labels: Optional[Sequence[str]] = None) -> Povm:
    """Rank-one PVM {|v_k><v_k|} of an orthonormal basis"""
    return validate_povm([outer(v.amplitudes) for v in vectors], labels=labels)


def basis_pvm(dim: int) -> Povm:
    """Computational-basis measurement"""
    return pvm_from_basis([Ket(amplitudes=np.eye(dim)[k]) for k in range(dim)])


def permute(povm: Povm, order: Sequence[int]) -> Povm:
    """Relabel outcomes: element k of the result is element order[k] of ``povm``"""
    idx = list(order)
    if sorted(idx) != list(range(povm.n_outcomes)):
        raise DimensionMismatch(povm.n_outcomes, len(idx), "POVM and permutation")
    labels = tuple(povm.labels[i] for i in idx) if povm.labels else None
    return Povm.model_construct(elements=povm.elements[idx], labels=labels)


def pure_density(psi: Ket) -> DensityMatrix:
    """|psi><psi|"""
    return DensityMatrix(matrix=outer(psi.amplitudes))


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(matrix=np.eye(dim) / dim)


def as_density(state: State) -> DensityMatrix:
    if isinstance(state, Ket):
        return pure_density(state)
    return state


def outcome_distribution(povm: Povm, state: State) -> ProbabilityDistribution:
    """
    p_i = tr{M_i rho}.

    Raises:
        DimensionMismatch: POVM and state act on different spaces
        NumericalResidueError: some tr{M_i rho} has imaginary part above 1e-10
    """
    rho = as_density(state)
    if povm.dim != rho.dim:
        raise DimensionMismatch(povm.dim, rho.dim, "POVM and state")

    values = np.einsum("kij,ji->k", povm.elements, rho.matrix)
    residue = float(np.max(np.abs(values.imag)))
    if residue > numerics_config.IMAGINARY_TOL:
        logger.error(f"Outcome probabilities carry imaginary residue {residue:.3e}")
        raise NumericalResidueError(
            f"tr(M_i rho) has imaginary residue {residue:.3e}"
        )
    return ProbabilityDistribution(probabilities=values.real)


def spectral_decompose(
    rho: DensityMatrix, cutoff: Optional[float] = None
) -> list[tuple[float, Ket]]:
    """
    rho = sum_lambda lambda |psi_lambda><psi_lambda|, keeping only weights
    above ``cutoff`` (``EIGEN_CUTOFF`` by default), largest first.
    """
    cut = numerics_config.EIGEN_CUTOFF if cutoff is None else cutoff
    eig = hermitian_eig(rho.matrix)
    terms = [
        (float(weight), Ket(amplitudes=eig.eigenvectors[:, k]))
        for k, weight in enumerate(eig.eigenvalues)
        if weight > cut
    ]
    logger.debug(f"Spectral decomposition kept {len(terms)} of {rho.dim} eigenpairs")
    return terms


def reconstruct(terms: Sequence[tuple[float, Ket]]) -> ComplexMatrix:
    """Inverse of spectral_decompose"""
    return sum(weight * outer(psi.amplitudes) for weight, psi in terms)
