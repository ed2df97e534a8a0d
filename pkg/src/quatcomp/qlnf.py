"""Factorized log-norm completion by alternating FISTA proximal steps.

Minimizes (lam/2) (||U||_L^1 + ||V||_L^1) + ||W . (U V^H - M)||_F^2 over
factor pairs U (M x d), V (N x d).  Each factor update extrapolates with the
FISTA momentum, takes one masked least-squares gradient step with weight
mu = max(||other factor||_F^2, mu_min), and applies the log-norm proximal
map via qlsvt with threshold lam / (2 mu).
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .core import conj_transpose, frobenius_norm, hadamard_mask, matmul, qzeros
from .linalg import qsvd
from .problem import CompletionProblem, SolveResult
from .shrinkage import qlsvt


@dataclass(frozen=True)
class QlnfConfig:
    """Hyperparameters of the factorized solver.

    lam and mu_min default to the reference setting for pixel-scale data
    (lam = 1.25e-5, mu_min = 0.005); epsilon is the log-norm offset; tol is
    the mean relative factor-change stopping threshold.  seed is reserved
    for randomized factor initialization and is unused by the deterministic
    truncated-QSVD initializer.
    """

    d: int = 10
    lam: float = 1.25e-5
    epsilon: float = 0.1
    mu_min: float = 0.005
    tol: float = 1e-3
    max_iter: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("factor width d must be at least 1")
        if self.lam < 0.0:
            raise ValueError("lam must be nonnegative")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.mu_min <= 0.0:
            raise ValueError("mu_min must be positive")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass
class QlnfState:
    """Current and previous factor iterates plus the momentum scalars."""

    U_prev: np.ndarray
    U_cur: np.ndarray
    V_prev: np.ndarray
    V_cur: np.ndarray
    t_prev: float
    t_cur: float
    iteration: int = 0

    @property
    def omega(self) -> float:
        return (self.t_prev - 1.0) / self.t_cur


def init_factors(problem: CompletionProblem, d: int):
    """Balanced rank-d factors of the zero-filled observation.

    U = U_d sqrt(S_d), V = V_d sqrt(S_d) from the truncated QSVD, so U V^H
    is the best rank-d approximation of M_obs and ||U||_F = ||V||_F.
    """
    m, n = problem.shape
    if not 1 <= d <= min(m, n):
        raise ValueError(f"d={d} must lie in [1, {min(m, n)}]")
    U, sigma, V = qsvd(problem.M_obs, full_matrices=False)
    scale = np.sqrt(sigma[:d])
    return U[:, :d] * scale[None, :, None], V[:, :d] * scale[None, :, None]


def fista_momentum(t_prev: float):
    """One step of the momentum recursion: returns (t_cur, omega)."""
    if t_prev < 1.0:
        raise ValueError("momentum scalar must be >= 1")
    t_cur = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t_prev * t_prev))
    return float(t_cur), float((t_prev - 1.0) / t_cur)


def _masked_residual(problem: CompletionProblem, U, V) -> np.ndarray:
    return hadamard_mask(problem.W, matmul(U, conj_transpose(V)) - problem.M_obs)


def update_factor_u(state: QlnfState, problem: CompletionProblem,
                    config: QlnfConfig) -> np.ndarray:
    """Extrapolated proximal gradient step in U with V held at V_cur."""
    mu = max(frobenius_norm(state.V_cur) ** 2, config.mu_min)
    U_hat = state.U_cur + state.omega * (state.U_cur - state.U_prev)
    R = _masked_residual(problem, U_hat, state.V_cur)
    G = U_hat - matmul(R, state.V_cur) / mu
    return qlsvt(G, config.lam / (2.0 * mu), config.epsilon)


def update_factor_v(state: QlnfState, problem: CompletionProblem,
                    config: QlnfConfig) -> np.ndarray:
    """Mirror step in V; expects state.U_cur to hold the freshly updated U."""
    mu = max(frobenius_norm(state.U_cur) ** 2, config.mu_min)
    V_hat = state.V_cur + state.omega * (state.V_cur - state.V_prev)
    R = _masked_residual(problem, state.U_cur, V_hat)
    G = V_hat - matmul(conj_transpose(R), state.U_cur) / mu
    return qlsvt(G, config.lam / (2.0 * mu), config.epsilon)


def _rel_change(new, old) -> float:
    denom = frobenius_norm(old)
    num = frobenius_norm(new - old)
    if denom == 0.0:
        return 0.0 if num == 0.0 else np.inf
    return num / denom


def solve_qlnf(problem: CompletionProblem, config: QlnfConfig = QlnfConfig()) -> SolveResult:
    """Run the alternating FISTA scheme; returns U V^H at the final iterate.

    Stops when the mean of the relative U and V changes drops below
    config.tol, or after config.max_iter sweeps.
    """
    m, n = problem.shape
    if not 1 <= config.d <= min(m, n):
        raise ValueError(f"d={config.d} must lie in [1, {min(m, n)}]")
    if not problem.W.any():
        warnings.warn("mask has no observed entries; returning the zero matrix")
        return SolveResult(X=qzeros(m, n), iterations=0, converged=True,
                           status="empty-mask")

    U, V = init_factors(problem, config.d)
    state = QlnfState(U_prev=U, U_cur=U, V_prev=V, V_cur=V, t_prev=1.0, t_cur=1.0)

    converged = False
    k = 0
    for k in range(1, config.max_iter + 1):
        t_cur, _ = fista_momentum(state.t_prev)
        state.t_cur = t_cur
        state.iteration = k

        U_next = update_factor_u(state, problem, config)
        state.U_prev, state.U_cur = state.U_cur, U_next
        V_next = update_factor_v(state, problem, config)
        state.V_prev, state.V_cur = state.V_cur, V_next

        if not (np.all(np.isfinite(U_next)) and np.all(np.isfinite(V_next))):
            raise FloatingPointError(f"non-finite factor iterate at iteration {k}")

        du = _rel_change(state.U_cur, state.U_prev)
        dv = _rel_change(state.V_cur, state.V_prev)
        state.t_prev = state.t_cur
        if 0.5 * (du + dv) <= config.tol:
            converged = True
            break

    X = matmul(state.U_cur, conj_transpose(state.V_cur))
    return SolveResult(X=X, iterations=k, converged=converged)
