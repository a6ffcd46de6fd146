"""Renyi and Shannon entropies of outcome distributions, in bits"""

import logging
import math
from typing import Union

import numpy as np

from core.config import numerics_config
from core.errors import InvalidOrder, OutOfRange
from models.entropy import SHANNON, ConjugatePair, RenyiOrder
from models.quantum import ProbabilityDistribution

logger = logging.getLogger(__name__)

Order = Union[RenyiOrder, float]


def as_order(alpha: Order) -> RenyiOrder:
    if isinstance(alpha, RenyiOrder):
        return alpha
    value = float(alpha)
    if not math.isfinite(value) or value <= 0:
        raise InvalidOrder(value)
    return RenyiOrder(value=value)


def _support(p: ProbabilityDistribution) -> np.ndarray:
    values = p.array
    return values[values > numerics_config.POWER_SUM_FLOOR]


def shannon_entropy(p: ProbabilityDistribution) -> float:
    """-sum p_i log2 p_i with 0 log 0 = 0"""
    q = _support(p)
    return max(0.0, float(-np.sum(q * np.log2(q))))


def renyi_entropy(p: ProbabilityDistribution, alpha: Order) -> float:
    """
    H_alpha = log2(sum p_i^alpha) / (1 - alpha); Shannon entropy for the
    marker order 1. Zero-probability outcomes never contribute.

    The largest probability is factored out of the power sum, so large
    finite orders do not underflow to log2(0).

    Raises:
        InvalidOrder: alpha <= 0
    """
    order = as_order(alpha)
    if order.is_shannon:
        return shannon_entropy(p)
    q = _support(p)
    a = order.value
    q_max = float(np.max(q))
    # Слагаемое с q_max равно 1, поэтому сумма >= 1
    log_sum = a * math.log2(q_max) + float(np.log2(np.sum((q / q_max) ** a)))
    value = log_sum / (1.0 - a)
    return max(0.0, value)


def min_entropy(p: ProbabilityDistribution) -> float:
    """-log2 max p_i, the limit of H_alpha as alpha grows"""
    return max(0.0, -math.log2(max(p.probabilities)))


def collision_entropy(p: ProbabilityDistribution) -> float:
    return renyi_entropy(p, 2.0)


def conjugate_order(alpha: Order) -> RenyiOrder:
    """
    beta = alpha / (2 alpha - 1), so that 1/alpha + 1/beta = 2.

    Raises:
        OutOfRange: alpha <= 1/2 has no finite conjugate
    """
    order = as_order(alpha)
    if order.is_shannon:
        return SHANNON
    if order.value <= 0.5:
        raise OutOfRange(order.value)
    beta = order.value / (2.0 * order.value - 1.0)
    if not math.isfinite(beta):
        raise OutOfRange(order.value)
    return RenyiOrder(value=beta)


def conjugate_pair(alpha: Order) -> ConjugatePair:
    order = as_order(alpha)
    return ConjugatePair(alpha=order, beta=conjugate_order(order))
