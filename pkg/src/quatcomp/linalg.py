"""Quaternion SVD via the isomorphic complex embedding, rank, and rank-surrogate norms.

A quaternion matrix A = A0 + A1 i + A2 j + A3 k is represented by the
2M x 2N complex matrix

    A_c = [[ A_p,        A_q      ],
           [ -conj(A_q), conj(A_p)]],     A_p = A0 + A1 i,  A_q = A2 + A3 i.

The map A -> A_c is a ring homomorphism, so the quaternion SVD is read off
a classical complex SVD of A_c: the singular values of A_c occur in equal
pairs, the odd-indexed ones form the quaternion spectrum, and the unitary
quaternion factors are rebuilt from the odd columns of the complex factors.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .core import as_qarray, from_parts

# Relative floor below which singular values are treated as exact zeros in
# norm evaluation (keeps log(eps + subnormal) noise out of the norms).
SIGMA_CLIP = 1e-14


class QsvdResult(NamedTuple):
    """Factors of A = U . diag(sigma) . V^H with unitary quaternion U, V."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


def to_complex_adjoint(A) -> np.ndarray:
    """Complex 2M x 2N representation of an M x N quaternion matrix."""
    A = as_qarray(A)
    if A.ndim != 3:
        raise ValueError("expected an (M, N, 4) quaternion matrix")
    Ap = A[..., 0] + 1j * A[..., 1]
    Aq = A[..., 2] + 1j * A[..., 3]
    return np.block([[Ap, Aq], [-np.conj(Aq), np.conj(Ap)]])


def from_complex_adjoint(C) -> np.ndarray:
    """Inverse of :func:`to_complex_adjoint`, reading the top block row."""
    C = np.asarray(C)
    if C.ndim != 2 or C.shape[0] % 2 or C.shape[1] % 2:
        raise ValueError(f"adjoint must be 2M x 2N, got {C.shape}")
    m, n = C.shape[0] // 2, C.shape[1] // 2
    Ap = C[:m, :n]
    Aq = C[:m, n:]
    return from_parts(Ap.real, Ap.imag, Aq.real, Aq.imag)


def _complex_svd(C: np.ndarray, full_matrices: bool):
    """Dense complex SVD with a gesvd fallback for gesdd convergence failures."""
    try:
        return np.linalg.svd(C, full_matrices=full_matrices)
    except np.linalg.LinAlgError:
        try:
            return scipy.linalg.svd(C, full_matrices=full_matrices, lapack_driver="gesvd")
        except Exception as exc:
            raise np.linalg.LinAlgError(
                f"complex SVD backend failed on the {C.shape[0]}x{C.shape[1]} embedding"
            ) from exc


def _extract_factor(Ucplx: np.ndarray, m: int) -> np.ndarray:
    """Rebuild a quaternion factor from the odd columns of a complex one.

    For U = [[U1], [U2]] with blocks of m rows, the quaternion factor is
    col_odd(U1) + col_odd(-conj(U2)) j.
    """
    U1 = Ucplx[:m, 0::2]
    U2 = Ucplx[m:, 0::2]
    p = U1
    q = -np.conj(U2)
    return from_parts(p.real, p.imag, q.real, q.imag)


def qsvd(A, full_matrices: bool = True) -> QsvdResult:
    """Quaternion SVD A = U . diag(sigma) . V^H.

    sigma is real, nonnegative and descending with min(M, N) entries.  With
    ``full_matrices=True`` U is M x M and V is N x N unitary; otherwise both
    are truncated to min(M, N) columns (semi-unitary), which is enough to
    reconstruct A and is considerably cheaper for thin matrices.
    """
    A = as_qarray(A)
    if A.ndim != 3:
        raise ValueError("expected an (M, N, 4) quaternion matrix")
    m, n = A.shape[:2]
    C = to_complex_adjoint(A)
    Uc, s, Vhc = _complex_svd(C, full_matrices=full_matrices)
    sigma = np.ascontiguousarray(s[0::2])
    U = _extract_factor(Uc, m)
    V = _extract_factor(Vhc.conj().T, n)
    return QsvdResult(U=U, sigma=sigma, V=V)


def qrank(A, tol: float = 1e-10) -> int:
    """Number of singular values above the relative threshold tol * sigma_max."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    sigma = qsvd(A, full_matrices=False).sigma
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > tol * sigma[0]))


def _clipped_sigma(A) -> np.ndarray:
    sigma = qsvd(A, full_matrices=False).sigma
    if sigma.size and sigma[0] > 0.0:
        sigma = np.where(sigma < SIGMA_CLIP * sigma[0], 0.0, sigma)
    return sigma


def _log_terms(sigma: np.ndarray, p: float, epsilon: float) -> np.ndarray:
    # sigma^p with the rank-surrogate convention 0^p = 0 for every p in [0, 1],
    # so a zero singular value always contributes log(epsilon).
    powered = np.where(sigma > 0.0, np.power(sigma, p, where=sigma > 0.0), 0.0)
    return np.log(powered + epsilon)


def nuclear_norm(A) -> float:
    """Sum of the quaternion singular values."""
    return float(np.sum(_clipped_sigma(A)))


def log_norm(A, p: float = 1.0, epsilon: float = 0.1) -> float:
    """Logarithmic rank surrogate: sum_i log(sigma_i^p + epsilon)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    return float(np.sum(_log_terms(_clipped_sigma(A), p, epsilon)))


def truncated_log_norm(A, r: int, p: float = 1.0, epsilon: float = 0.1) -> float:
    """Logarithmic surrogate over the min(M, N) - r smallest singular values."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    A = as_qarray(A)
    k = min(A.shape[0], A.shape[1])
    if not 0 <= r < k:
        raise ValueError(f"truncation r={r} must satisfy 0 <= r < min(M, N)={k}")
    return float(np.sum(_log_terms(_clipped_sigma(A), p, epsilon)[r:]))


def quat_norm(A, kind: str = "nuclear", p: float = 1.0, epsilon: float = 0.1,
              r: int = 0) -> float:
    """Dispatch over the norm family: 'nuclear', 'log' or 'truncated_log'."""
    if kind == "nuclear":
        return nuclear_norm(A)
    if kind == "log":
        return log_norm(A, p=p, epsilon=epsilon)
    if kind == "truncated_log":
        return truncated_log_norm(A, r, p=p, epsilon=epsilon)
    raise ValueError(f"unknown norm kind: {kind!r}")
