import numpy as np
import pytest

from quatcomp import (conj_transpose, frobenius_norm, hadamard_mask, matmul,
                      qconj, qeye, qmod, qmul, quat)
from quatcomp.linalg import to_complex_adjoint

from conftest import random_qmatrix

ONE = quat(1, 0, 0, 0)
I = quat(0, 1, 0, 0)
J = quat(0, 0, 1, 0)
K = quat(0, 0, 0, 1)


class TestQmul:
    def test_ij_is_k(self):
        np.testing.assert_array_equal(qmul(I, J), K)

    def test_ji_is_minus_k(self):
        np.testing.assert_array_equal(qmul(J, I), -K)

    def test_identity(self, rng):
        q = random_qmatrix(rng, 1, 1)[0, 0]
        np.testing.assert_array_equal(qmul(ONE, q), q)
        np.testing.assert_array_equal(qmul(q, ONE), q)

    def test_hand_expanded_product(self):
        # (1 + i)(1 + j) = 1 + j + i + ij = 1 + i + j + k
        np.testing.assert_allclose(qmul(quat(1, 1, 0, 0), quat(1, 0, 1, 0)),
                                   quat(1, 1, 1, 1))

    def test_modulus_multiplicative(self, rng):
        a = random_qmatrix(rng, 40, 1)[:, 0]
        b = random_qmatrix(rng, 40, 1)[:, 0]
        np.testing.assert_allclose(qmod(qmul(a, b)), qmod(a) * qmod(b),
                                   rtol=1e-12)

    def test_associative(self, rng):
        a, b, c = (random_qmatrix(rng, 30, 1)[:, 0] for _ in range(3))
        lhs = qmul(qmul(a, b), c)
        rhs = qmul(a, qmul(b, c))
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


class TestConjMod:
    def test_conjugate_flips_imaginary(self):
        np.testing.assert_array_equal(qconj(quat(1, 2, 3, 4)), quat(1, -2, -3, -4))

    def test_modulus_value(self):
        assert qmod(quat(1, 1, 1, 1)) == pytest.approx(2.0)

    def test_modulus_conj_symmetric(self, rng):
        q = random_qmatrix(rng, 50, 1)[:, 0]
        np.testing.assert_array_equal(qmod(q), qmod(qconj(q)))

    def test_conj_reverses_products(self, rng):
        a = random_qmatrix(rng, 1, 1)[0, 0]
        b = random_qmatrix(rng, 1, 1)[0, 0]
        np.testing.assert_allclose(qconj(qmul(a, b)), qmul(qconj(b), qconj(a)),
                                   rtol=1e-12, atol=1e-12)


class TestMatmul:
    def test_identity(self, rng):
        A = random_qmatrix(rng, 4, 6)
        np.testing.assert_allclose(matmul(A, qeye(6)), A, atol=1e-15)
        np.testing.assert_allclose(matmul(qeye(4), A), A, atol=1e-15)

    def test_one_by_one_reduces_to_qmul(self, rng):
        a = random_qmatrix(rng, 1, 1)
        b = random_qmatrix(rng, 1, 1)
        np.testing.assert_allclose(matmul(a, b)[0, 0], qmul(a[0, 0], b[0, 0]))

    def test_matches_complex_embedding(self, rng):
        A = random_qmatrix(rng, 3, 3)
        B = random_qmatrix(rng, 3, 3)
        lhs = to_complex_adjoint(matmul(A, B))
        rhs = to_complex_adjoint(A) @ to_complex_adjoint(B)
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_associative(self, rng):
        A = random_qmatrix(rng, 5, 7)
        B = random_qmatrix(rng, 7, 4)
        C = random_qmatrix(rng, 4, 6)
        lhs = matmul(matmul(A, B), C)
        rhs = matmul(A, matmul(B, C))
        np.testing.assert_allclose(lhs, rhs, rtol=1e-9, atol=1e-9)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            matmul(random_qmatrix(rng, 3, 4), random_qmatrix(rng, 5, 2))


class TestElementwise:
    def test_conj_transpose_involution(self, rng):
        A = random_qmatrix(rng, 5, 3)
        np.testing.assert_array_equal(conj_transpose(conj_transpose(A)), A)

    def test_conj_transpose_entries(self, rng):
        A = random_qmatrix(rng, 4, 2)
        At = conj_transpose(A)
        np.testing.assert_array_equal(At[1, 3], qconj(A[3, 1]))

    def test_all_ones_mask_is_identity(self, rng):
        A = random_qmatrix(rng, 6, 5)
        np.testing.assert_array_equal(hadamard_mask(np.ones((6, 5)), A), A)

    def test_mask_zeroes_missing(self, rng):
        A = random_qmatrix(rng, 3, 3)
        W = np.zeros((3, 3))
        W[1, 2] = 1.0
        masked = hadamard_mask(W, A)
        np.testing.assert_array_equal(masked[1, 2], A[1, 2])
        assert np.all(masked[W == 0] == 0.0)

    def test_mask_shape_mismatch(self, rng):
        with pytest.raises(ValueError):
            hadamard_mask(np.ones((2, 2)), random_qmatrix(rng, 3, 3))

    def test_frobenius_single_entry(self):
        A = quat(1, 1, 1, 1).reshape(1, 1, 4)
        assert frobenius_norm(A) == pytest.approx(2.0)

    def test_frobenius_matches_modulus_sum(self, rng):
        A = random_qmatrix(rng, 8, 7)
        expected = np.sqrt(np.sum(qmod(A) ** 2))
        assert frobenius_norm(A) == pytest.approx(expected, rel=1e-10)

    def test_frobenius_zero_iff_zero(self):
        assert frobenius_norm(np.zeros((3, 4, 4))) == 0.0
