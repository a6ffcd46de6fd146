"""Dense complex linear algebra kernel.

Hermitian eigendecomposition, PSD square roots, spectral norms and traces of
small dense matrices. All functions are pure; inputs are never modified.
"""

import logging
from typing import Optional

import numpy as np

from core.config import numerics_config
from core.errors import (
    DimensionMismatch,
    NoConvergence,
    NonHermitian,
    NotFinite,
    NotPositive,
    NotSquare,
)
from models.linalg import ComplexMatrix, EigenDecomposition

logger = logging.getLogger(__name__)


def as_complex_matrix(a) -> ComplexMatrix:
    """Coerce to a finite square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotFinite("matrix has NaN or infinite entries")
    return m


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_defect(a: ComplexMatrix) -> float:
    """Max |A - A^H| entry"""
    return float(np.max(np.abs(a - dagger(a)), initial=0.0))


def is_hermitian(a, tolerance: Optional[float] = None) -> bool:
    tol = numerics_config.HERMITIAN_TOL if tolerance is None else tolerance
    return hermiticity_defect(as_complex_matrix(a)) <= tol


def outer(vector) -> ComplexMatrix:
    """|v><v|"""
    v = np.asarray(vector, dtype=np.complex128)
    return np.outer(v, v.conj())


def _normalize_phases(vectors: ComplexMatrix, cutoff: float) -> ComplexMatrix:
    # Первая компонента с модулем > cutoff становится вещественной положительной
    moduli = np.abs(vectors)
    pivot_rows = np.argmax(moduli > cutoff, axis=0)
    pivots = vectors[pivot_rows, np.arange(vectors.shape[1])]
    phases = np.ones_like(pivots)
    nonzero = np.abs(pivots) > 0
    phases[nonzero] = pivots[nonzero].conj() / np.abs(pivots[nonzero])
    return vectors * phases[None, :]


def hermitian_eig(a, tolerance: Optional[float] = None) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in descending order; each eigenvector's first
    component with modulus above ``PHASE_CUTOFF`` is made real positive so
    identical input always yields identical output.

    Raises:
        NonHermitian: max |A - A^H| entry exceeds the tolerance
        NoConvergence: LAPACK failed to converge
    """
    m = as_complex_matrix(a)
    tol = numerics_config.HERMITIAN_TOL if tolerance is None else tolerance
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NonHermitian(defect, tol)

    h = (m + dagger(m)) / 2
    try:
        values, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as e:
        logger.error(f"Hermitian eigensolver failed for dim {m.shape[0]}: {e}")
        raise NoConvergence(f"eigensolver did not converge: {e}") from e

    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = _normalize_phases(vectors[:, order], numerics_config.PHASE_CUTOFF)
    return EigenDecomposition(eigenvalues=values, eigenvectors=vectors)


def _clamped_spectrum(a, tolerance: Optional[float]) -> EigenDecomposition:
    tol = numerics_config.POSITIVITY_TOL if tolerance is None else tolerance
    eig = hermitian_eig(a)
    smallest = float(eig.eigenvalues[-1])
    if smallest < -tol:
        raise NotPositive(None, smallest)
    if smallest < 0:
        logger.debug(f"Clamping eigenvalue {smallest:.3e} to zero")
    return EigenDecomposition(
        eigenvalues=np.clip(eig.eigenvalues, 0.0, None),
        eigenvectors=eig.eigenvectors,
    )


def psd_sqrt(a, tolerance: Optional[float] = None) -> ComplexMatrix:
    """Unique PSD square root; eigenvalues in [-tolerance, 0) are clamped to zero."""
    eig = _clamped_spectrum(a, tolerance)
    v = eig.eigenvectors
    return (v * np.sqrt(eig.eigenvalues)[None, :]) @ v.conj().T


def psd_inverse_sqrt(a, tolerance: Optional[float] = None) -> ComplexMatrix:
    """A^{-1/2} for positive definite A"""
    eig = _clamped_spectrum(a, tolerance)
    if eig.eigenvalues[-1] <= 0:
        raise NotPositive(None, float(eig.eigenvalues[-1]))
    v = eig.eigenvectors
    return (v / np.sqrt(eig.eigenvalues)[None, :]) @ v.conj().T


def operator_norm(q) -> float:
    """Spectral norm max_{|u|=1} |Q u|, the square root of the top eigenvalue of Q^H Q."""
    m = as_complex_matrix(q)
    top = np.linalg.eigvalsh(dagger(m) @ m)[-1]
    return float(np.sqrt(max(float(top), 0.0)))


def operator_norms(stack: np.ndarray) -> np.ndarray:
    """Spectral norms of a stack of matrices with shape (..., d, d)"""
    stack = np.asarray(stack, dtype=np.complex128)
    if not np.all(np.isfinite(stack)):
        raise NotFinite("matrix stack has NaN or infinite entries")
    top = np.linalg.eigvalsh(dagger(stack) @ stack)[..., -1]
    return np.sqrt(np.clip(top, 0.0, None))


def trace_product(a, b) -> complex:
    """tr(A B) without forming the product"""
    x = np.asarray(a, dtype=np.complex128)
    y = np.asarray(b, dtype=np.complex128)
    if x.ndim != 2 or y.ndim != 2 or x.shape[1] != y.shape[0] or x.shape[0] != y.shape[1]:
        raise DimensionMismatch(x.shape, y.shape, "trace product operands")
    return complex(np.einsum("ij,ji->", x, y))
