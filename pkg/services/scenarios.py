"""
Discrimination of |psi_1> = |0> and |psi_2> = |+>: the minimum-error
(Helstrom) PVM against the unambiguous three-outcome POVM, with every
quantity of the worked example checked against its closed form.
"""

import logging
import math
from pathlib import Path
from typing import Optional, Union

import numpy as np

from core.config import app_config, numerics_config
from core.linalg import operator_norm, outer
from models.entropy import ConjugatePair
from models.instance import InstanceFile
from models.quantum import Ket, Povm
from models.scenario import DiscriminationScenario, ExampleReport, ExampleRow
from services.bounds import bound_relation1, check_instance, f_mixed, phi
from services.entropy import conjugate_pair
from services.instance_io import dump_instance, instance_from_objects
from services.quantum import (
    ket_0,
    ket_1,
    ket_minus,
    ket_plus,
    maximally_mixed,
    outcome_distribution,
    pvm_from_basis,
    validate_povm,
)

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


def build_helstrom_pvm() -> Povm:
    """N_1 = |x><x|, N_2 = |y><y| with |x> = cos(pi/8)|0> - sin(pi/8)|1>"""
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    x = Ket(amplitudes=[c, -s])
    y = Ket(amplitudes=[s, c])
    return pvm_from_basis([x, y], labels=("N1", "N2"))


def build_unambiguous_povm() -> Povm:
    """M_1 = sqrt2/(sqrt2+1) |-><-|, M_2 = sqrt2/(sqrt2+1) |1><1|, M_3 = 1 - M_1 - M_2"""
    weight = SQRT2 / (SQRT2 + 1.0)
    m1 = weight * outer(ket_minus().amplitudes)
    m2 = weight * outer(ket_1().amplitudes)
    m3 = np.eye(2) - m1 - m2
    return validate_povm([m1, m2, m3], labels=("M1", "M2", "M3"))


def build_scenario() -> DiscriminationScenario:
    psi1, psi2 = ket_0(), ket_plus()
    return DiscriminationScenario(
        psi1=psi1,
        psi2=psi2,
        helstrom=build_helstrom_pvm(),
        unambiguous=build_unambiguous_povm(),
        overlap=abs(psi1.inner(psi2)),
    )


def helstrom_error_probability(scenario: DiscriminationScenario) -> float:
    """(1/2) {<psi_1|N_2|psi_1> + <psi_2|N_1|psi_2>}"""
    p1 = outcome_distribution(scenario.helstrom, scenario.psi1).probabilities
    p2 = outcome_distribution(scenario.helstrom, scenario.psi2).probabilities
    return 0.5 * (p1[1] + p2[0])


def inconclusive_probabilities(scenario: DiscriminationScenario) -> tuple[float, float]:
    """<psi_k|M_3|psi_k> for both states"""
    p1 = outcome_distribution(scenario.unambiguous, scenario.psi1).probabilities
    p2 = outcome_distribution(scenario.unambiguous, scenario.psi2).probabilities
    return p1[2], p2[2]


def discrimination_instance(pair: Optional[ConjugatePair] = None) -> InstanceFile:
    """The example as an instance file: M unambiguous, N Helstrom, state |psi_1>"""
    sc = build_scenario()
    return instance_from_objects(
        sc.psi1,
        {"M": sc.unambiguous, "N": sc.helstrom},
        pair=pair or conjugate_pair(app_config.DEFAULT_ALPHA),
    )


def dump_discrimination_instance(path: Union[str, Path], pair: Optional[ConjugatePair] = None) -> None:
    dump_instance(path, discrimination_instance(pair))


def discrimination_example_report(
    pair: Optional[ConjugatePair] = None, tolerance: Optional[float] = None
) -> ExampleReport:
    """
    Run the bound checker on (unambiguous POVM, Helstrom PVM, |psi_1>) and
    compare each quantity of the example with its closed form.
    """
    tol = numerics_config.VIOLATION_TOL if tolerance is None else tolerance
    pair = pair or conjugate_pair(app_config.DEFAULT_ALPHA)
    sc = build_scenario()
    m, n = sc.unambiguous, sc.helstrom
    logger.info(f"Running discrimination example with orders {pair}")

    report = check_instance(m, n, sc.psi1, pair=pair)
    r_m, r_n = report.measurements
    error = helstrom_error_probability(sc)
    inconclusive1, inconclusive2 = inconclusive_probabilities(sc)
    log_silver = math.log2(SQRT2 + 1.0)

    # (имя, вычислено, замкнутая форма)
    values = [
        ("f_squared", report.f_value**2, 0.5),
        ("norm_M1_N1_squared", operator_norm(m.sqrt_elements[0] @ n.elements[0]) ** 2, 0.5),
        ("norm_M2_N2_squared", operator_norm(m.sqrt_elements[1] @ n.elements[1]) ** 2, 0.5),
        ("f_maximally_mixed", f_mixed(m, n, maximally_mixed(2)), math.sqrt(0.5)),
        ("relation1_bound", report.relation1_bound, 1.0),
        ("relation1_bound_psi2", bound_relation1(m, n, sc.psi2), 1.0),
        ("state_independent_pair_bound", report.state_independent_pair_bound, 1.0),
        ("phi_M_psi1", r_m.phi, 2**-0.5),
        ("phi_N_psi1", r_n.phi, 2**-1.5 * (SQRT2 + 1.0)),
        ("phi_M_psi2", phi(m, sc.psi2), 2**-0.5),
        ("uncoupled_bound", report.uncoupled_bound, 2.0 - log_silver),
        ("relation1_minus_uncoupled", report.relation1_bound - report.uncoupled_bound, log_silver - 1.0),
        ("relation2_bound_M", r_m.relation2_bound, 0.5),
        ("relation2_bound_N", r_n.relation2_bound, 1.5 - log_silver),
        ("single_bound_M", r_m.state_independent_single_bound, log_silver - 1.0),
        ("single_bound_N", r_n.state_independent_single_bound, 0.0),
        ("norm_M3", operator_norm(m.elements[2]), 2.0 * (SQRT2 - 1.0)),
        ("helstrom_error_probability", error, (SQRT2 - 1.0) * 2**-1.5),
        ("helstrom_minimum_error", error, (1.0 - math.sqrt(1.0 - sc.overlap**2)) / 2.0),
        ("inconclusive_probability_psi1", inconclusive1, 1.0 / SQRT2),
        ("inconclusive_probability_psi2", inconclusive2, 1.0 / SQRT2),
        ("misidentification_M2_psi1", outcome_distribution(m, sc.psi1).probabilities[1], 0.0),
        ("misidentification_M1_psi2", outcome_distribution(m, sc.psi2).probabilities[0], 0.0),
        ("overlap", sc.overlap, 1.0 / SQRT2),
    ]

    rows = []
    for name, computed, expected in values:
        passed = abs(computed - expected) <= tol
        if not passed:
            logger.error(f"{name}: computed {computed!r}, expected {expected!r}")
        rows.append(ExampleRow(name=name, computed=computed, expected=expected, passed=passed))

    return ExampleReport(
        alpha=pair.alpha.value, beta=pair.beta.value, tolerance=tol, rows=rows, report=report
    )
