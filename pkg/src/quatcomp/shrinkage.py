"""Logarithmic singular value thresholding for quaternion matrices.

The scalar rule solves min_{a >= 0} h(a) = (a - x)^2 / 2 + lam * log(a + eps)
in closed form: with delta = (x - eps)^2 - 4 (lam - x * eps) the candidates
are 0 and the larger stationary point (x - eps + sqrt(delta)) / 2, and the
matrix operator applies the rule to the quaternion singular values.
"""

import numpy as np

from . import core
from .linalg import qsvd


def lsvt(x, lam: float, epsilon: float) -> np.ndarray:
    """Vectorized scalar thresholding rule over an array of x >= 0."""
    if lam < 0.0:
        raise ValueError("lam must be nonnegative")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0.0):
        raise ValueError("thresholding is defined for nonnegative inputs only")

    delta = (x - epsilon) ** 2 - 4.0 * (lam - x * epsilon)
    root = 0.5 * (x - epsilon + np.sqrt(np.maximum(delta, 0.0)))
    # Candidate comparison h(root) vs h(0); the root can be negative when
    # x < eps, in which case it falls outside the domain and 0 wins.
    h0 = 0.5 * x**2 + lam * np.log(epsilon)
    safe_root = np.maximum(root, 0.0)
    h_root = 0.5 * (safe_root - x) ** 2 + lam * np.log(safe_root + epsilon)
    take_root = (delta > 0.0) & (root > 0.0) & (h_root <= h0)
    return np.where(take_root, safe_root, 0.0)


def lsvt_scalar(x: float, lam: float, epsilon: float) -> float:
    """Scalar thresholding; output always lies in [0, x]."""
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    return float(lsvt(np.asarray([x]), lam, epsilon)[0])


def qlsvt(Y, lam: float, epsilon: float) -> np.ndarray:
    """Proximal map of lam * ||.||_L^1 at Y: U . diag(lsvt(sigma)) . V^H.

    Minimizer of ||Y - X||_F^2 / 2 + lam * sum_i log(sigma_i(X) + epsilon)
    over quaternion matrices.
    """
    U, sigma, V = qsvd(Y, full_matrices=False)
    shrunk = lsvt(sigma, lam, epsilon)
    Us = U * shrunk[None, :, None]
    return core.matmul(Us, core.conj_transpose(V))
