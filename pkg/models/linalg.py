import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]


class EigenDecomposition(BaseModel):
    """Eigenvalues sorted descending, column k of ``eigenvectors`` paired with value k"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> ComplexMatrix:
        """V diag(lambda) V^H"""
        v = self.eigenvectors
        return (v * self.eigenvalues[None, :]) @ v.conj().T
