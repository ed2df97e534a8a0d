import math

import numpy as np
import pytest

from quatcomp import (conj_transpose, frobenius_norm, log_norm, matmul,
                      nuclear_norm, qeye, qmod, qrank, qsvd, quat, quat_norm,
                      qzeros, to_complex_adjoint, truncated_log_norm)
from quatcomp.linalg import from_complex_adjoint

from conftest import random_qmatrix


def reconstruct(U, sigma, V):
    k = sigma.size
    return matmul(U[:, :k] * sigma[None, :, None], conj_transpose(V[:, :k]))


class TestComplexAdjoint:
    def test_real_matrix_block_diagonal(self, rng):
        A0 = rng.standard_normal((3, 4))
        A = np.zeros((3, 4, 4))
        A[..., 0] = A0
        C = to_complex_adjoint(A)
        np.testing.assert_array_equal(C[:3, :4], A0)
        np.testing.assert_array_equal(C[3:, 4:], A0)
        assert np.all(C[:3, 4:] == 0) and np.all(C[3:, :4] == 0)

    def test_round_trip_exact(self, rng):
        A = random_qmatrix(rng, 5, 7)
        np.testing.assert_array_equal(from_complex_adjoint(to_complex_adjoint(A)), A)

    def test_product_homomorphism(self, rng):
        A = random_qmatrix(rng, 3, 3)
        B = random_qmatrix(rng, 3, 3)
        np.testing.assert_allclose(to_complex_adjoint(matmul(A, B)),
                                   to_complex_adjoint(A) @ to_complex_adjoint(B),
                                   atol=1e-10)

    def test_conj_transpose_commutes_exactly(self, rng):
        A = random_qmatrix(rng, 4, 6)
        np.testing.assert_array_equal(to_complex_adjoint(conj_transpose(A)),
                                      to_complex_adjoint(A).conj().T)


class TestQsvd:
    def test_identity_matrix(self):
        U, sigma, V = qsvd(qeye(4))
        np.testing.assert_allclose(sigma, np.ones(4), atol=1e-14)
        np.testing.assert_allclose(reconstruct(U, sigma, V), qeye(4), atol=1e-12)

    def test_diagonal_example(self):
        # diag(1 + i, 2j) has singular values (2, sqrt(2)), the entry moduli.
        A = qzeros(2, 2)
        A[0, 0] = quat(1, 1, 0, 0)
        A[1, 1] = quat(0, 0, 2, 0)
        sigma = qsvd(A).sigma
        np.testing.assert_allclose(sigma, [2.0, math.sqrt(2.0)], atol=1e-12)

    def test_reconstruction_and_unitarity(self, rng):
        for m, n in [(5, 5), (8, 3), (3, 8), (20, 17)]:
            A = random_qmatrix(rng, m, n)
            U, sigma, V = qsvd(A)
            assert U.shape == (m, m, 4) and V.shape == (n, n, 4)
            assert sigma.shape == (min(m, n),)
            assert np.all(np.diff(sigma) <= 0) and np.all(sigma >= 0)
            err = frobenius_norm(reconstruct(U, sigma, V) - A)
            assert err / max(1.0, frobenius_norm(A)) <= 1e-8
            assert frobenius_norm(matmul(conj_transpose(U), U) - qeye(m)) <= 1e-8
            assert frobenius_norm(matmul(conj_transpose(V), V) - qeye(n)) <= 1e-8

    def test_economy_reconstruction(self, rng):
        A = random_qmatrix(rng, 9, 4)
        U, sigma, V = qsvd(A, full_matrices=False)
        assert U.shape == (9, 4, 4) and V.shape == (4, 4, 4)
        assert frobenius_norm(reconstruct(U, sigma, V) - A) <= 1e-8

    def test_paired_spectrum(self, rng):
        A = random_qmatrix(rng, 6, 5)
        s_embed = np.linalg.svd(to_complex_adjoint(A), compute_uv=False)
        np.testing.assert_allclose(s_embed[0::2], s_embed[1::2], atol=1e-9)
        np.testing.assert_allclose(qsvd(A).sigma, s_embed[0::2], atol=1e-9)

    def test_zero_matrix(self):
        U, sigma, V = qsvd(qzeros(3, 4))
        np.testing.assert_array_equal(sigma, np.zeros(3))
        np.testing.assert_array_equal(reconstruct(U, sigma, V), qzeros(3, 4))


class TestQrank:
    def test_zero_matrix(self):
        assert qrank(qzeros(4, 4)) == 0

    def test_outer_product_rank_one(self, rng):
        u = random_qmatrix(rng, 6, 1)
        v = random_qmatrix(rng, 5, 1)
        assert qrank(matmul(u, conj_transpose(v))) == 1

    def test_identity_full_rank(self):
        assert qrank(qeye(5)) == 5

    def test_low_rank_product(self, rng):
        A = matmul(random_qmatrix(rng, 10, 3), random_qmatrix(rng, 3, 8))
        assert qrank(A) == 3

    def test_negative_tol_rejected(self):
        with pytest.raises(ValueError):
            qrank(qeye(2), tol=-1.0)


class TestNorms:
    def test_zero_matrix_log_norm(self):
        # All singular values vanish, so every term is log(eps) for any p.
        for p in (0.0, 0.5, 1.0):
            value = log_norm(qzeros(3, 5), p=p, epsilon=0.2)
            assert value == pytest.approx(3 * math.log(0.2), rel=1e-12)

    def test_log_norm_of_known_spectrum(self):
        A = qzeros(2, 2)
        A[0, 0] = quat(1, 1, 0, 0)
        A[1, 1] = quat(0, 0, 2, 0)
        expected = math.log(2.0 + 0.1) + math.log(math.sqrt(2.0) + 0.1)
        assert log_norm(A, p=1.0, epsilon=0.1) == pytest.approx(expected, abs=1e-10)

    def test_truncated_log_single_term(self, rng):
        A = random_qmatrix(rng, 4, 56)
        sigma = qsvd(A).sigma
        expected = math.log(sigma[-1] + 0.1)
        got = truncated_log_norm(A, r=3, p=1.0, epsilon=0.1)
        assert got == pytest.approx(expected, abs=1e-9)

    def test_nuclear_norm(self, rng):
        A = random_qmatrix(rng, 6, 6)
        assert nuclear_norm(A) == pytest.approx(qsvd(A).sigma.sum(), rel=1e-12)

    def test_invalid_truncation(self, rng):
        A = random_qmatrix(rng, 3, 3)
        with pytest.raises(ValueError):
            truncated_log_norm(A, r=3)
        with pytest.raises(ValueError):
            truncated_log_norm(A, r=-1)

    def test_dispatcher(self, rng):
        A = random_qmatrix(rng, 4, 4)
        assert quat_norm(A, "nuclear") == nuclear_norm(A)
        assert quat_norm(A, "log", p=0.5, epsilon=0.3) == log_norm(A, 0.5, 0.3)
        assert quat_norm(A, "truncated_log", r=1) == truncated_log_norm(A, 1)
        with pytest.raises(ValueError):
            quat_norm(A, "spectral")


class TestFactorizationTheorems:
    def test_double_frobenius_equals_nuclear(self, rng):
        # Balanced factors U sqrt(S), V sqrt(S) realize the nuclear norm.
        A = random_qmatrix(rng, 7, 5)
        U, sigma, V = qsvd(A, full_matrices=False)
        scale = np.sqrt(sigma)[None, :, None]
        Ub, Vb = U * scale, V * scale
        dfn = 0.5 * (frobenius_norm(Ub) ** 2 + frobenius_norm(Vb) ** 2)
        assert dfn == pytest.approx(nuclear_norm(A), abs=1e-8)

    def test_balanced_factors_attain_half_power_log_norm(self, rng):
        A = random_qmatrix(rng, 6, 5)
        U, sigma, V = qsvd(A, full_matrices=False)
        scale = np.sqrt(sigma)[None, :, None]
        Ub, Vb = U * scale, V * scale
        lhs = 0.5 * (log_norm(Ub, p=1.0, epsilon=0.1) + log_norm(Vb, p=1.0, epsilon=0.1))
        assert lhs == pytest.approx(log_norm(A, p=0.5, epsilon=0.1), abs=1e-8)

    def test_alternative_factorizations_bounded_below(self, rng):
        # Any factorization's mean log norm stays above the p=1/2 log norm.
        A = random_qmatrix(rng, 5, 4)
        U, sigma, V = qsvd(A, full_matrices=False)
        scale = np.sqrt(sigma)[None, :, None]
        Ub, Vb = U * scale, V * scale
        target = log_norm(A, p=0.5, epsilon=0.1)
        d = sigma.size
        for _ in range(20):
            Q = qsvd(random_qmatrix(rng, d, d)).U
            s = np.exp(rng.uniform(-1.0, 1.0, size=d))
            Ua = matmul(Ub * s[None, :, None], Q)
            Va = matmul(Vb / s[None, :, None], Q)
            np.testing.assert_allclose(
                matmul(Ua, conj_transpose(Va)), A, atol=1e-8)
            value = 0.5 * (log_norm(Ua, p=1.0, epsilon=0.1)
                           + log_norm(Va, p=1.0, epsilon=0.1))
            assert value >= target - 1e-9

    def test_trace_inequality(self, rng):
        # |tr(A X B^H)| <= sum of the top-r singular values for semi-unitary
        # A, B, with equality at the truncated QSVD factors.
        from quatcomp import quaternion_trace_abs  # noqa: F401  (sanity: not provided)
