"""
Entropic lower bounds for one or two POVMs measured on a state.

Every bound is in bits. The f functional is evaluated in the factored form
|<a|M_i^{1/2} N_j^{1/2}|b>| with a, b the normalised vectors M_i^{1/2}|psi>,
N_j^{1/2}|psi>, which equals the defining ratio and stays bounded by the
operator norm under round-off.
"""

import logging
import math
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from core.config import numerics_config
from core.errors import DimensionMismatch, NumericalResidueError
from core.linalg import operator_norms
from models.entropy import SHANNON, ConjugatePair, RenyiOrder
from models.quantum import DensityMatrix, Ket, Povm
from models.report import (
    BoundReport,
    EntropyValue,
    MeasurementReport,
    PairCheck,
    Violation,
)
from services.entropy import Order, as_order, renyi_entropy
from services.quantum import State, as_density, outcome_distribution, spectral_decompose

logger = logging.getLogger(__name__)


def _bits(x: float) -> float:
    """-log2 x clamped at zero (x <= 1 up to round-off)"""
    return max(0.0, -math.log2(x))


def _check_pair(m: Povm, n: Povm, dim: Optional[int] = None) -> None:
    if m.dim != n.dim:
        raise DimensionMismatch(m.dim, n.dim, "POVMs")
    if dim is not None and dim != m.dim:
        raise DimensionMismatch(m.dim, dim, "POVMs and state")


def cross_products(m: Povm, n: Povm) -> np.ndarray:
    """Stack of M_i^{1/2} N_j^{1/2}, shape (|M|, |N|, d, d)"""
    _check_pair(m, n)
    return np.einsum("iab,jbc->ijac", m.sqrt_elements, n.sqrt_elements)


def f_pure(m: Povm, n: Povm, psi: Ket, cutoff: Optional[float] = None) -> float:
    """
    max_ij |<psi|M_i N_j|psi>| / (||M_i^{1/2} psi|| ||N_j^{1/2} psi||) over
    pairs whose denominator exceeds ``cutoff`` (``DENOMINATOR_CUTOFF``).
    """
    _check_pair(m, n, psi.dim)
    cut = numerics_config.DENOMINATOR_CUTOFF if cutoff is None else cutoff

    v = psi.amplitudes
    a = m.sqrt_elements @ v
    b = n.sqrt_elements @ v
    a_norm = np.linalg.norm(a, axis=1)
    b_norm = np.linalg.norm(b, axis=1)
    mask = np.outer(a_norm, b_norm) > cut
    if not mask.any():
        # Из полноты следует p_i > 0 хотя бы для одного исхода, значит это ошибка округления
        raise NumericalResidueError("no outcome pair with nonzero denominator")

    a_hat = a / np.where(a_norm > 0, a_norm, 1.0)[:, None]
    b_hat = b / np.where(b_norm > 0, b_norm, 1.0)[:, None]
    ratios = np.abs(np.einsum("ia,ijac,jc->ij", a_hat.conj(), cross_products(m, n), b_hat))

    value = float(np.max(ratios[mask]))
    if value > 1.0 + numerics_config.VIOLATION_TOL:
        logger.error(f"f functional {value!r} exceeds 1")
        raise NumericalResidueError(f"f functional {value!r} exceeds 1")
    return value


def f_mixed(m: Povm, n: Povm, state: State) -> float:
    """max of f_pure over the eigenvectors of rho with positive weight"""
    rho = as_density(state)
    _check_pair(m, n, rho.dim)
    return max(f_pure(m, n, psi) for _, psi in spectral_decompose(rho))


def phi(m: Povm, state: State) -> float:
    """Largest outcome probability max_i tr{M_i rho}"""
    return max(outcome_distribution(m, state).probabilities)


def bound_relation1(m: Povm, n: Povm, state: State) -> float:
    """-2 log2 f(M, N | rho), valid for conjugate orders"""
    return 2.0 * _bits(f_mixed(m, n, state))


def bound_relation2(m: Povm, state: State) -> float:
    """-log2 phi(M | rho), valid for every order alpha > 0"""
    return _bits(phi(m, state))


def bound_uncoupled(m: Povm, n: Povm, state: State) -> float:
    """-log2 [phi(M|rho) phi(N|rho)], valid for arbitrary alpha, beta > 0"""
    _check_pair(m, n, as_density(state).dim)
    return bound_relation2(m, state) + bound_relation2(n, state)


def pair_norm_max(m: Povm, n: Povm) -> float:
    """max_ij ||M_i^{1/2} N_j^{1/2}||"""
    return float(np.max(operator_norms(cross_products(m, n))))


def state_independent_pair_bound(m: Povm, n: Povm) -> float:
    return 2.0 * _bits(pair_norm_max(m, n))


def state_independent_single_bound(m: Povm) -> float:
    """-log2 max_i ||M_i||; zero for every PVM"""
    return _bits(float(np.max(operator_norms(m.elements))))


def _unique_orders(orders: Iterable[RenyiOrder]) -> list[RenyiOrder]:
    seen: dict[float, RenyiOrder] = {}
    for order in orders:
        seen.setdefault(order.value, order)
    return list(seen.values()) or [SHANNON]


def _measurement_report(
    name: str, povm: Povm, rho: DensityMatrix, orders: list[RenyiOrder]
) -> MeasurementReport:
    p = outcome_distribution(povm, rho)
    phi_value = max(p.probabilities)
    entropies = [EntropyValue(order=o.value, bits=renyi_entropy(p, o)) for o in orders]
    smallest = min(e.bits for e in entropies)
    relation2 = _bits(phi_value)
    single = state_independent_single_bound(povm)
    return MeasurementReport(
        name=name,
        probabilities=list(p.probabilities),
        phi=phi_value,
        entropies=entropies,
        relation2_bound=relation2,
        relation2_slack=smallest - relation2,
        state_independent_single_bound=single,
        state_independent_single_slack=smallest - single,
    )


def check_instance(
    m: Povm,
    n: Optional[Povm],
    state: State,
    pair: Optional[ConjugatePair] = None,
    extra_orders: Sequence[Order] = (),
    extra_pairs: Sequence[ConjugatePair] = (),
    names: tuple[str, str] = ("M", "N"),
) -> BoundReport:
    """
    Evaluate every applicable bound on (M, N, rho) and flag any slack below
    -VIOLATION_TOL. Entropies are always recomputed from the outcome
    distributions. Relation 1 fields need at least one conjugate pair.
    """
    rho = as_density(state)
    if m.dim != rho.dim:
        raise DimensionMismatch(m.dim, rho.dim, "POVM and state")
    if n is not None:
        _check_pair(m, n, rho.dim)

    tol = numerics_config.VIOLATION_TOL
    pairs = [p for p in (pair, *extra_pairs) if p is not None]
    common = [as_order(o) for o in extra_orders]
    orders_m = _unique_orders([*common, *(p.alpha for p in pairs)])
    orders_n = _unique_orders([*common, *(p.beta for p in pairs)])

    violations: list[Violation] = []
    reports = [_measurement_report(names[0], m, rho, orders_m)]
    if n is not None:
        reports.append(_measurement_report(names[1], n, rho, orders_n))

    for r in reports:
        if r.relation2_slack < -tol:
            violations.append(Violation(bound="relation2", slack=r.relation2_slack, measurement=r.name))
        if r.state_independent_single_slack < -tol:
            violations.append(
                Violation(
                    bound="state_independent_single",
                    slack=r.state_independent_single_slack,
                    measurement=r.name,
                )
            )
        dominance = r.relation2_bound - r.state_independent_single_bound
        if dominance < -tol:
            violations.append(Violation(bound="single_dominance", slack=dominance, measurement=r.name))

    report = BoundReport(dim=rho.dim, measurements=reports)
    if n is None:
        report.violations = violations
        _log_violations(report)
        return report

    f_value = f_mixed(m, n, rho)
    f_swapped = f_mixed(n, m, rho)
    norm_max = pair_norm_max(m, n)
    relation1 = 2.0 * _bits(f_value)
    pair_bound = 2.0 * _bits(norm_max)
    uncoupled = reports[0].relation2_bound + reports[1].relation2_bound
    uncoupled_slack = (
        min(e.bits for e in reports[0].entropies)
        + min(e.bits for e in reports[1].entropies)
        - uncoupled
    )
    if uncoupled_slack < -tol:
        violations.append(Violation(bound="uncoupled", slack=uncoupled_slack))
    if f_value - norm_max > tol:
        violations.append(Violation(bound="norm_ordering", slack=norm_max - f_value))

    checks: list[PairCheck] = []
    for p in pairs:
        lhs = reports[0].entropy(p.alpha.value) + reports[1].entropy(p.beta.value)
        check = PairCheck(
            alpha=p.alpha.value,
            beta=p.beta.value,
            lhs_entropy_sum=lhs,
            relation1_slack=lhs - relation1,
            state_independent_pair_slack=lhs - pair_bound,
        )
        checks.append(check)
        for bound, slack in (
            ("relation1", check.relation1_slack),
            ("state_independent_pair", check.state_independent_pair_slack),
        ):
            if slack < -tol:
                violations.append(Violation(bound=bound, slack=slack, alpha=check.alpha, beta=check.beta))

    report = BoundReport(
        dim=rho.dim,
        measurements=reports,
        f_value=f_value,
        f_value_swapped=f_swapped,
        norm_max=norm_max,
        relation1_bound=relation1 if pairs else None,
        uncoupled_bound=uncoupled,
        uncoupled_slack=uncoupled_slack,
        state_independent_pair_bound=pair_bound,
        pair_checks=checks,
        violations=violations,
    )
    logger.debug(
        f"f={f_value:.12f} norm_max={norm_max:.12f} relation1={relation1:.9f} "
        f"uncoupled={uncoupled:.9f}"
    )
    _log_violations(report)
    return report


def _log_violations(report: BoundReport) -> None:
    for v in report.violations:
        logger.warning(f"Bound violated: {v.bound} slack={v.slack:.3e} ({v.measurement or 'pair'})")


def compare_relations(report: BoundReport) -> Literal["relation1", "uncoupled", "tie"]:
    """Which of the coupled (Relation 1) and uncoupled bounds is sharper"""
    if report.relation1_bound is None or report.uncoupled_bound is None:
        raise ValueError("report carries no pair bounds")
    gap = report.relation1_bound - report.uncoupled_bound
    if gap > numerics_config.VIOLATION_TOL:
        return "relation1"
    if gap < -numerics_config.VIOLATION_TOL:
        return "uncoupled"
    return "tie"
