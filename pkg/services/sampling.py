"""
Seeded random states and POVMs.

Every sampler builds its own ``numpy.random.Generator`` on the counter-based
Philox bit generator keyed by ``SeedSequence([seed, stream])``, so a sample
is a pure function of its SampleConfig.
"""

import logging

import numpy as np

from core.config import numerics_config
from core.errors import DegenerateSample, InputError
from core.linalg import dagger, operator_norm, psd_inverse_sqrt
from models.quantum import DensityMatrix, Ket, Povm
from models.sampling import SampleConfig
from services.quantum import validate_povm

logger = logging.getLogger(__name__)

STREAM_KET = 0
STREAM_DENSITY = 1
STREAM_POVM = 2


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream])))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_pure_state(config: SampleConfig) -> Ket:
    """Haar-random ket: normalised complex Gaussian vector, first component real positive"""
    rng = generator(config.seed, STREAM_KET)
    g = _complex_gaussian(rng, config.dim)
    g = g / np.linalg.norm(g)
    pivot = g[np.argmax(np.abs(g) > numerics_config.PHASE_CUTOFF)]
    g = g * (np.conj(pivot) / abs(pivot))
    return Ket(amplitudes=g)


def random_density_matrix(config: SampleConfig) -> DensityMatrix:
    """rho = G G^H / tr(G G^H) with G of shape dim x state_rank"""
    rng = generator(config.seed, STREAM_DENSITY)
    g = _complex_gaussian(rng, (config.dim, config.state_rank))
    a = g @ dagger(g)
    return DensityMatrix(matrix=a / np.trace(a).real)


def _draw_positive_operators(rng: np.random.Generator, config: SampleConfig) -> np.ndarray:
    if config.rank_one_only:
        g = _complex_gaussian(rng, (config.n_outcomes, config.dim, 1))
    else:
        g = _complex_gaussian(rng, (config.n_outcomes, config.dim, config.dim))
    return g @ dagger(g)


def random_povm(config: SampleConfig) -> Povm:
    """
    M_i = S^{-1/2} A_i S^{-1/2} with S = sum A_i, so completeness holds by
    construction. A near-singular S gets eps*I (eps = REGULARIZATION * ||S||)
    spread evenly over the A_i, which keeps the elements summing to one; a
    second normalisation pass removes the round-off of the ill-conditioned first.

    Raises:
        DegenerateSample: MAX_RESAMPLES draws all failed validation
    """
    rng = generator(config.seed, STREAM_POVM)
    identity = np.eye(config.dim)

    for attempt in range(numerics_config.MAX_RESAMPLES):
        ops = _draw_positive_operators(rng, config)
        s = ops.sum(axis=0)
        eps = numerics_config.REGULARIZATION * operator_norm(s)
        if np.linalg.eigvalsh(s)[0] <= eps:
            logger.warning(
                f"Singular POVM sum (seed={config.seed}, dim={config.dim}, "
                f"outcomes={config.n_outcomes}); regularizing with eps={eps:.3e}"
            )
            ops = ops + (eps / config.n_outcomes) * identity
            s = ops.sum(axis=0)
        try:
            root = psd_inverse_sqrt(s)
            elements = root @ ops @ root
            # Второй проход: сумма отличается от единицы на cond(S) * машинный эпсилон
            root = psd_inverse_sqrt(elements.sum(axis=0))
            elements = root @ elements @ root
            return validate_povm((elements + dagger(elements)) / 2)
        except InputError as e:
            logger.warning(f"Rejected POVM sample on attempt {attempt + 1}: {e}")

    raise DegenerateSample(
        f"no valid POVM after {numerics_config.MAX_RESAMPLES} attempts (seed={config.seed})"
    )
