import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import DimensionMismatch
from models.sampling import SampleConfig
from services import bounds
from services.bounds import (
    bound_relation1,
    bound_relation2,
    bound_uncoupled,
    check_instance,
    compare_relations,
    f_mixed,
    f_pure,
    pair_norm_max,
    phi,
    state_independent_pair_bound,
    state_independent_single_bound,
)
from services.entropy import conjugate_pair, renyi_entropy
from services.quantum import (
    basis_pvm,
    ket_0,
    ket_minus,
    ket_plus,
    maximally_mixed,
    outcome_distribution,
    permute,
    pvm_from_basis,
    spectral_decompose,
    validate_povm,
)
from services.sampling import random_density_matrix, random_povm, random_pure_state
from services.scenarios import build_helstrom_pvm, build_unambiguous_povm

LOG_SILVER = math.log2(math.sqrt(2) + 1)
ALPHAS = [0.6, 0.75, 1.0, 1.5, 2.0, 4.0]


def hadamard_pvm():
    return pvm_from_basis([ket_plus(), ket_minus()])


def f_direct(m, n, psi) -> float:
    """f from its defining ratio, without the factored form"""
    v = psi.amplitudes
    best = 0.0
    for mi in m.elements:
        for nj in n.elements:
            denom = math.sqrt(max(np.vdot(v, mi @ v).real, 0) * max(np.vdot(v, nj @ v).real, 0))
            if denom > 1e-12:
                best = max(best, abs(np.vdot(v, mi @ nj @ v)) / denom)
    return best


def random_instance(seed: int, dim: int, rank_one: bool = False, state_rank: int = 1):
    n_outcomes = dim + 1 if rank_one else 3
    m = random_povm(SampleConfig(seed=seed, dim=dim, n_outcomes=n_outcomes, rank_one_only=rank_one))
    n = random_povm(SampleConfig(seed=seed + 10_000, dim=dim, n_outcomes=n_outcomes, rank_one_only=rank_one))
    rho = random_density_matrix(SampleConfig(seed=seed, dim=dim, state_rank=state_rank))
    return m, n, rho


class TestFunctionalF:
    """Тесты для функционала f"""

    def test_same_pvm_eigenstate(self):
        """Тест: одна и та же PVM на собственном векторе дает f = 1"""
        assert f_pure(basis_pvm(2), basis_pvm(2), ket_0()) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_discrimination_pair_constant(self, seed):
        """Тест: f^2 = 1/2 для пары из примера различения на любом состоянии"""
        m, n = build_unambiguous_povm(), build_helstrom_pvm()
        for psi in (ket_0(), ket_plus(), random_pure_state(SampleConfig(seed=seed, dim=2))):
            assert f_pure(m, n, psi) ** 2 == pytest.approx(0.5, abs=1e-9)

    def test_rank_one_saturation(self):
        """Тест: для POVM ранга один f равен max ||M_i^1/2 N_j^1/2||"""
        for seed in range(10):
            m, n, _ = random_instance(seed, 3, rank_one=True)
            psi = random_pure_state(SampleConfig(seed=seed, dim=3))
            assert abs(f_pure(m, n, psi) - pair_norm_max(m, n)) <= 1e-9

    def test_matches_defining_ratio(self):
        """Тест совпадения с определением через отношение"""
        for seed in range(10):
            m, n, _ = random_instance(seed, 4)
            psi = random_pure_state(SampleConfig(seed=seed, dim=4))
            assert abs(f_pure(m, n, psi) - f_direct(m, n, psi)) <= 1e-9

    def test_mixed_on_pure_state(self):
        """Тест: f для чистого rho совпадает с f_pure"""
        m, n = build_unambiguous_povm(), build_helstrom_pvm()
        assert f_mixed(m, n, ket_plus()) == pytest.approx(f_pure(m, n, ket_plus()), abs=1e-12)

    def test_mixed_maximally_mixed(self):
        """Тест f на максимально смешанном состоянии"""
        m, n = build_unambiguous_povm(), build_helstrom_pvm()
        assert f_mixed(m, n, maximally_mixed(2)) == pytest.approx(math.sqrt(0.5), abs=1e-9)

    def test_mixed_is_max_over_eigenvectors(self):
        """Тест: f(rho) равен максимуму по собственным векторам"""
        m, n, rho = random_instance(5, 4, state_rank=3)
        expected = max(f_direct(m, n, psi) for _, psi in spectral_decompose(rho))
        assert abs(f_mixed(m, n, rho) - expected) <= 1e-9

    def test_permutation_invariance(self):
        """Тест инвариантности к перестановке исходов"""
        m, n, rho = random_instance(8, 3)
        value = f_mixed(m, n, rho)
        assert f_mixed(permute(m, [2, 0, 1]), permute(n, [1, 2, 0]), rho) == pytest.approx(value, abs=1e-12)

    def test_dimension_mismatch(self):
        """Тест ошибки несовпадения размерностей"""
        with pytest.raises(DimensionMismatch):
            f_pure(basis_pvm(2), basis_pvm(3), ket_0())

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 5), state_rank=st.integers(1, 2))
    def test_norm_ordering(self, seed, dim, state_rank):
        """Свойство: f(M, N | rho) <= max ||M_i^1/2 N_j^1/2|| <= 1"""
        m, n, rho = random_instance(seed, dim, state_rank=state_rank)
        f = f_mixed(m, n, rho)
        norm = pair_norm_max(m, n)
        assert 0.0 <= f <= norm + 1e-9
        assert norm <= 1.0 + 1e-9


class TestPhi:
    """Тесты для функционала phi"""

    def test_discrimination_values(self):
        """Тест значений phi из примера различения"""
        assert phi(build_unambiguous_povm(), ket_0()) == pytest.approx(2**-0.5, abs=1e-12)
        assert phi(build_helstrom_pvm(), ket_0()) == pytest.approx(math.cos(math.pi / 8) ** 2, abs=1e-12)

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_pvm_on_maximally_mixed(self, dim):
        """Тест phi = 1/d для PVM на максимально смешанном состоянии"""
        assert phi(basis_pvm(dim), maximally_mixed(dim)) == pytest.approx(1 / dim)


class TestBounds:
    """Тесты для нижних границ"""

    def test_relation1_discrimination(self):
        """Тест: граница через f равна 1 бит для примера"""
        assert bound_relation1(build_unambiguous_povm(), build_helstrom_pvm(), ket_0()) == pytest.approx(1.0, abs=1e-9)

    def test_relation1_same_pvm(self):
        """Тест: одна PVM на собственном векторе дает нулевую границу"""
        assert bound_relation1(basis_pvm(2), basis_pvm(2), ket_0()) == 0.0

    def test_relation1_holds_random(self):
        """Тест выполнения границы через f для случайных пар порядков"""
        for seed in range(30):
            m, n, rho = random_instance(seed, 3, state_rank=1 + seed % 3)
            bound = bound_relation1(m, n, rho)
            pm, pn = outcome_distribution(m, rho), outcome_distribution(n, rho)
            for alpha in ALPHAS:
                pair = conjugate_pair(alpha)
                lhs = renyi_entropy(pm, pair.alpha) + renyi_entropy(pn, pair.beta)
                assert lhs >= bound - 1e-9

    def test_relation2_discrimination(self):
        """Тест границы для одного измерения"""
        assert bound_relation2(build_unambiguous_povm(), ket_0()) == pytest.approx(0.5, abs=1e-12)
        assert bound_relation2(basis_pvm(2), ket_0()) == 0.0

    def test_relation2_holds_every_order(self):
        """Тест: граница для одного измерения верна для всех порядков"""
        for seed in range(30):
            m, _, rho = random_instance(seed, 4, state_rank=2)
            bound = bound_relation2(m, rho)
            p = outcome_distribution(m, rho)
            for alpha in (0.3, 0.5, 1.0, 2.0, 10.0):
                assert renyi_entropy(p, alpha) >= bound - 1e-9

    def test_uncoupled_discrimination(self):
        """Тест несвязанной границы и разности с границей через f"""
        m, n = build_unambiguous_povm(), build_helstrom_pvm()
        uncoupled = bound_uncoupled(m, n, ket_0())
        assert uncoupled == pytest.approx(2 - LOG_SILVER, abs=1e-12)
        assert uncoupled == pytest.approx(0.728, abs=5e-4)
        assert 1.0 - uncoupled == pytest.approx(0.272, abs=5e-4)

    def test_uncoupled_deterministic(self):
        """Тест: два вычислительных базиса на |0> дают ноль"""
        assert bound_uncoupled(basis_pvm(2), basis_pvm(2), ket_0()) == 0.0

    def test_pair_bound_discrimination(self):
        """Тест независимой от состояния границы для примера"""
        assert state_independent_pair_bound(build_unambiguous_povm(), build_helstrom_pvm()) == pytest.approx(1.0, abs=1e-9)

    def test_pair_bound_mutually_unbiased(self):
        """Тест: взаимно несмещенные базисы кубита дают 1 бит"""
        assert state_independent_pair_bound(basis_pvm(2), hadamard_pvm()) == pytest.approx(1.0, abs=1e-12)

    def test_pair_bound_same_povm(self):
        """Тест: для M = N граница равна удвоенной границе одного измерения"""
        m = random_povm(SampleConfig(seed=4, dim=3, n_outcomes=4))
        assert state_independent_pair_bound(m, m) == pytest.approx(
            2 * state_independent_single_bound(m), abs=1e-9
        )

    def test_single_bound(self):
        """Тест границы через максимальную норму"""
        assert state_independent_single_bound(build_unambiguous_povm()) == pytest.approx(LOG_SILVER - 1, abs=1e-12)
        assert state_independent_single_bound(basis_pvm(3)) == 0.0
        trivial = validate_povm([np.eye(2) / 2, np.eye(2) / 2])
        assert state_independent_single_bound(trivial) == pytest.approx(1.0)

    def test_dominance(self):
        """Тест: граница через phi не слабее границы через норму"""
        for seed in range(20):
            m, n, rho = random_instance(seed, 3, state_rank=2)
            assert bound_relation2(m, rho) >= state_independent_single_bound(m) - 1e-9
            assert bound_relation1(m, n, rho) >= state_independent_pair_bound(m, n) - 1e-9


class TestCheckInstance:
    """Тесты для полной проверки экземпляра"""

    def test_discrimination_instance(self):
        """Тест отчета для примера различения"""
        report = check_instance(
            build_unambiguous_povm(), build_helstrom_pvm(), ket_0(), pair=conjugate_pair(2.0)
        )
        assert report.ok
        assert report.dim == 2
        assert report.relation1_bound == pytest.approx(1.0, abs=1e-9)
        assert report.f_value_swapped == pytest.approx(report.f_value, abs=1e-9)
        assert report.pair_checks[0].alpha == 2.0
        assert report.lhs_entropy_sum >= report.relation1_bound
        assert set(report.slacks()) == {
            "relation1",
            "relation2",
            "uncoupled",
            "state_independent_pair",
            "state_independent_single",
        }

    def test_single_measurement(self):
        """Тест отчета для одного измерения"""
        report = check_instance(build_unambiguous_povm(), None, ket_0(), extra_orders=[2.0])
        assert report.ok
        assert report.f_value is None
        assert report.relation1_bound is None
        assert len(report.measurements) == 1
        assert report.measurements[0].entropy(2.0) >= report.measurements[0].relation2_bound

    def test_random_instances_hold(self):
        """Тест: на 100 случайных экземплярах нет нарушений"""
        pairs = [conjugate_pair(a) for a in ALPHAS]
        for seed in range(100):
            dim = 2 + seed % 4
            m, n, rho = random_instance(seed, dim, rank_one=seed % 2 == 0, state_rank=1 + seed % dim)
            report = check_instance(
                m, n, rho, pair=pairs[0], extra_orders=(0.3, 10.0), extra_pairs=pairs[1:]
            )
            assert report.ok, report.violations
            assert report.min_slack >= -1e-9

    def test_violation_is_reported(self, monkeypatch):
        """Тест: заниженная энтропия попадает в список нарушений"""
        monkeypatch.setattr(bounds, "renyi_entropy", lambda p, order: 0.0)
        report = check_instance(
            build_unambiguous_povm(), build_helstrom_pvm(), ket_0(), pair=conjugate_pair(2.0)
        )
        assert not report.ok
        names = {v.bound for v in report.violations}
        assert {"relation1", "relation2", "uncoupled", "state_independent_pair"} <= names

    def test_dimension_mismatch(self):
        """Тест ошибки несовпадения размерностей"""
        with pytest.raises(DimensionMismatch):
            check_instance(basis_pvm(3), None, ket_0())


class TestCompareRelations:
    """Тесты сравнения связанной и несвязанной границ"""

    def test_relation1_sharper(self):
        """Тест: в примере различения граница через f сильнее"""
        report = check_instance(
            build_unambiguous_povm(), build_helstrom_pvm(), ket_0(), pair=conjugate_pair(2.0)
        )
        assert compare_relations(report) == "relation1"

    def test_uncoupled_sharper(self):
        """Тест: для M = N на |+> несвязанная граница сильнее"""
        report = check_instance(basis_pvm(2), basis_pvm(2), ket_plus(), pair=conjugate_pair(1.0))
        assert report.relation1_bound == pytest.approx(0.0, abs=1e-12)
        assert report.uncoupled_bound == pytest.approx(2.0)
        assert compare_relations(report) == "uncoupled"

    def test_tie(self):
        """Тест равенства границ"""
        report = check_instance(basis_pvm(2), basis_pvm(2), ket_0(), pair=conjugate_pair(1.0))
        assert compare_relations(report) == "tie"

    def test_requires_pair(self):
        """Тест ошибки для отчета без второго измерения"""
        with pytest.raises(ValueError):
            compare_relations(check_instance(basis_pvm(2), None, ket_0()))
