"""Dense quaternion scalar and matrix arithmetic.

A quaternion a0 + a1*i + a2*j + a3*k is stored as a length-4 float array;
a quaternion matrix as an (M, N, 4) float64 array with the components on
the last axis.  All operations are pure functions over immutable inputs.
"""

import numpy as np


def quat(a0=0.0, a1=0.0, a2=0.0, a3=0.0) -> np.ndarray:
    """Build a single quaternion as a (4,) float array."""
    return np.array([a0, a1, a2, a3], dtype=np.float64)


def as_qarray(a) -> np.ndarray:
    """Coerce input to a float64 array with a trailing component axis of 4."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim == 0 or a.shape[-1] != 4:
        raise ValueError(f"expected trailing axis of length 4, got shape {a.shape}")
    return a


def qzeros(m: int, n: int) -> np.ndarray:
    """M x N quaternion zero matrix."""
    return np.zeros((m, n, 4), dtype=np.float64)


def qeye(n: int) -> np.ndarray:
    """N x N quaternion identity matrix."""
    out = np.zeros((n, n, 4), dtype=np.float64)
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def from_parts(a0, a1, a2, a3) -> np.ndarray:
    """Assemble a quaternion array from its four real component arrays."""
    return np.stack(np.broadcast_arrays(a0, a1, a2, a3), axis=-1).astype(np.float64)


def qmul(a, b) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes.

    Non-commutative: qmul(a, b) != qmul(b, a) in general (ij = k, ji = -k).
    """
    a = as_qarray(a)
    b = as_qarray(b)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a) -> np.ndarray:
    """Quaternion conjugate: flips the sign of the i, j, k components."""
    a = as_qarray(a)
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def qmod(a) -> np.ndarray:
    """Modulus |a| = sqrt(a0^2 + a1^2 + a2^2 + a3^2), elementwise."""
    a = as_qarray(a)
    return np.sqrt(np.sum(a * a, axis=-1))


def matmul(A, B) -> np.ndarray:
    """Quaternion matrix product C_mn = sum_k A_mk * B_kn (Hamilton products).

    Implemented as 16 real GEMMs on the component planes.
    """
    A = as_qarray(A)
    B = as_qarray(B)
    if A.ndim != 3 or B.ndim != 3:
        raise ValueError("matmul expects (M, K, 4) and (K, N, 4) arrays")
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"inner dimensions disagree: {A.shape[:2]} x {B.shape[:2]}")
    a0, a1, a2, a3 = A[..., 0], A[..., 1], A[..., 2], A[..., 3]
    b0, b1, b2, b3 = B[..., 0], B[..., 1], B[..., 2], B[..., 3]
    return np.stack(
        [
            a0 @ b0 - a1 @ b1 - a2 @ b2 - a3 @ b3,
            a0 @ b1 + a1 @ b0 + a2 @ b3 - a3 @ b2,
            a0 @ b2 - a1 @ b3 + a2 @ b0 + a3 @ b1,
            a0 @ b3 + a1 @ b2 - a2 @ b1 + a3 @ b0,
        ],
        axis=-1,
    )


def conj_transpose(A) -> np.ndarray:
    """Conjugate transpose: (A^H)_mn = conj(A_nm)."""
    A = as_qarray(A)
    if A.ndim != 3:
        raise ValueError("conj_transpose expects an (M, N, 4) array")
    return qconj(np.swapaxes(A, 0, 1))


def hadamard_mask(W, A) -> np.ndarray:
    """Entrywise mask: keeps quaternion entries where W == 1, zeroes the rest.

    W is a real (M, N) 0/1 indicator; one mask value governs the whole
    quaternion entry.
    """
    A = as_qarray(A)
    W = np.asarray(W, dtype=np.float64)
    if A.ndim != 3 or W.shape != A.shape[:2]:
        raise ValueError(f"mask shape {W.shape} does not match matrix {A.shape[:2]}")
    return A * W[:, :, None]


def frobenius_norm(A) -> float:
    """Frobenius norm sqrt(sum |a_mn|^2) over all entries and components."""
    A = as_qarray(A)
    return float(np.sqrt(np.sum(A * A)))
