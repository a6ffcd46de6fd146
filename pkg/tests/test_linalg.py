import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import DimensionMismatch, NonHermitian, NotPositive, NotSquare
from core.linalg import (
    hermitian_eig,
    is_hermitian,
    operator_norm,
    operator_norms,
    outer,
    psd_sqrt,
    trace_product,
)


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = random_complex(rng, (dim, dim))
    return (g + g.conj().T) / 2


def random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = random_complex(rng, (dim, dim))
    a = g @ g.conj().T
    return a / np.trace(a).real


class TestHermitianEig:
    """Тесты для разложения эрмитовых матриц"""

    def test_identity(self):
        """Тест единичной матрицы"""
        eig = hermitian_eig(np.eye(3))
        np.testing.assert_allclose(eig.eigenvalues, [1.0, 1.0, 1.0], atol=1e-12)

    def test_pauli_x(self):
        """Тест спектра матрицы Паули X"""
        eig = hermitian_eig([[0, 1], [1, 0]])
        np.testing.assert_allclose(eig.eigenvalues, [1.0, -1.0], atol=1e-12)

    def test_reconstruction_random(self):
        """Тест восстановления V diag(l) V^H для случайной матрицы"""
        a = random_hermitian(np.random.default_rng(6), 6)
        eig = hermitian_eig(a)
        assert np.max(np.abs(eig.reconstruct() - a)) <= 1e-10

        v = eig.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(6))) <= 1e-10
        assert np.all(np.diff(eig.eigenvalues) <= 0)

    def test_phase_convention(self):
        """Тест нормировки фазы: первая значимая компонента вещественна и положительна"""
        eig = hermitian_eig(random_hermitian(np.random.default_rng(1), 4))
        for k in range(4):
            column = eig.eigenvectors[:, k]
            pivot = column[np.argmax(np.abs(column) > 1e-8)]
            assert abs(pivot.imag) <= 1e-12
            assert pivot.real > 0

    def test_deterministic(self):
        """Тест детерминированности результата"""
        a = random_hermitian(np.random.default_rng(3), 5)
        first, second = hermitian_eig(a), hermitian_eig(a.copy())
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_non_hermitian(self):
        """Тест ошибки для неэрмитовой матрицы"""
        with pytest.raises(NonHermitian):
            hermitian_eig([[0, 1], [0, 0]])

    def test_is_hermitian(self):
        """Тест проверки эрмитовости с допуском"""
        assert is_hermitian([[1, 1j], [-1j, 2]])
        assert not is_hermitian([[0, 1], [0, 0]])
        assert is_hermitian([[0, 1e-6], [0, 0]], tolerance=1e-5)

    def test_not_square(self):
        """Тест ошибки для неквадратной матрицы"""
        with pytest.raises(NotSquare):
            hermitian_eig(np.zeros((2, 3)))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
    def test_eigenvalues_sum_to_trace(self, seed, dim):
        """Свойство: сумма собственных значений равна следу"""
        a = random_hermitian(np.random.default_rng(seed), dim)
        eig = hermitian_eig(a)
        assert abs(eig.eigenvalues.sum() - np.trace(a).real) <= 1e-10
        assert np.all(np.diff(eig.eigenvalues) <= 0)


class TestPsdSqrt:
    """Тесты для квадратного корня положительных операторов"""

    def test_identity(self):
        """Тест корня из единичной матрицы"""
        np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-12)

    def test_diagonal(self):
        """Тест диагональной матрицы"""
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)

    def test_rank_one_projector(self):
        """Тест масштабированного проектора c|-><-|"""
        c = np.sqrt(2) / (np.sqrt(2) + 1)
        minus = outer(np.array([1, -1]) / np.sqrt(2))
        s = psd_sqrt(c * minus)
        np.testing.assert_allclose(s, np.sqrt(c) * minus, atol=1e-12)
        np.testing.assert_allclose(s @ s, c * minus, atol=1e-9)

    def test_small_negative_clamped(self):
        """Тест обнуления малых отрицательных собственных значений"""
        s = psd_sqrt(np.diag([1.0, -1e-12]))
        np.testing.assert_allclose(s, np.diag([1.0, 0.0]), atol=1e-12)

    def test_not_positive(self):
        """Тест ошибки для отрицательного собственного значения"""
        with pytest.raises(NotPositive):
            psd_sqrt(np.diag([1.0, -1e-6]))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
    def test_fourth_root_chain(self, seed, dim):
        """Свойство: (sqrt(sqrt(A)))^4 = A"""
        a = random_psd(np.random.default_rng(seed), dim)
        r = psd_sqrt(psd_sqrt(a))
        assert np.max(np.abs(np.linalg.matrix_power(r, 4) - a)) <= 1e-8

        s = psd_sqrt(a)
        assert np.max(np.abs(s - s.conj().T)) <= 1e-12
        assert np.min(np.linalg.eigvalsh(s)) >= -1e-10


class TestOperatorNorm:
    """Тесты для операторной нормы"""

    @pytest.mark.parametrize("dim", [1, 2, 5])
    def test_identity(self, dim):
        """Тест нормы единичной матрицы"""
        assert operator_norm(np.eye(dim)) == pytest.approx(1.0, abs=1e-12)

    def test_random_vectors_never_exceed(self):
        """Тест: случайные единичные векторы не превышают норму"""
        rng = np.random.default_rng(5)
        q = random_complex(rng, (5, 5))
        norm = operator_norm(q)

        u = random_complex(rng, (5, 10_000))
        u /= np.linalg.norm(u, axis=0)
        attained = np.max(np.linalg.norm(q @ u, axis=0))
        assert attained <= norm + 1e-6

        # Старший правый сингулярный вектор достигает нормы
        _, _, vh = np.linalg.svd(q)
        assert np.linalg.norm(q @ vh[0].conj()) == pytest.approx(norm, abs=1e-10)

    def test_psd_norm_is_top_eigenvalue(self):
        """Тест: норма PSD матрицы равна наибольшему собственному значению"""
        a = random_psd(np.random.default_rng(8), 6)
        assert abs(operator_norm(a) - np.linalg.eigvalsh(a)[-1]) <= 1e-10

    def test_stack(self):
        """Тест пакетного вычисления норм"""
        rng = np.random.default_rng(9)
        stack = random_complex(rng, (3, 2, 4, 4))
        norms = operator_norms(stack)
        assert norms.shape == (3, 2)
        assert norms[1, 0] == pytest.approx(operator_norm(stack[1, 0]), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
    def test_submultiplicative(self, seed, dim):
        """Свойство: ||AB|| <= ||A|| ||B||"""
        rng = np.random.default_rng(seed)
        a, b = random_complex(rng, (dim, dim)), random_complex(rng, (dim, dim))
        assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-9


class TestTraceProduct:
    """Тесты для следа произведения"""

    def test_identity(self):
        """Тест tr(I I) = dim"""
        assert trace_product(np.eye(4), np.eye(4)) == pytest.approx(4.0)

    def test_orthogonal_projectors(self):
        """Тест ортогональных проекторов"""
        assert trace_product(np.diag([1, 0]), np.diag([0, 1])) == 0

    def test_matches_explicit_product(self):
        """Тест совпадения с явным произведением"""
        rng = np.random.default_rng(4)
        a, b = random_complex(rng, (4, 4)), random_complex(rng, (4, 4))
        assert abs(trace_product(a, b) - np.trace(a @ b)) <= 1e-12

    def test_dimension_mismatch(self):
        """Тест ошибки несовпадения размерностей"""
        with pytest.raises(DimensionMismatch):
            trace_product(np.eye(2), np.eye(3))
