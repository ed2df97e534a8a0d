"""Truncated log-norm completion: outer truncation loop plus inner ADMM.

Each outer iteration takes the top-r QSVD factors of the current iterate to
build semi-unitary truncation matrices C (r x M) and D (r x N), then solves

    min_X  lam ||X||_L^1 - Re tr(C H D^H)   s.t.  X = H,  H = M on observed

with ADMM: X-update by qlsvt, H-update in closed form followed by an exact
copy of the observed entries, multiplier ascent in Y, and a geometric
penalty schedule beta <- min(rho * beta, beta_max).
"""

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Optional

import numpy as np

from .core import conj_transpose, frobenius_norm, matmul
from .linalg import qsvd
from .problem import CompletionProblem, SolveResult
from .shrinkage import qlsvt


@dataclass(frozen=True)
class TqlnaConfig:
    """Hyperparameters of the two-step solver.

    rho, beta0 and beta_max default to the reference setting (1.5, 0.003,
    1e7); r = 1 is the reference truncation.  lam = None selects a
    data-scaled penalty lam = beta0 * (sigma_1(M_obs) / 3)^2, under which
    the first shrinkage pass zeroes singular values up to two thirds of
    sigma_1 and the penalty relaxes as beta grows.  Both tolerances are
    relative to ||M_obs||_F: the outer loop stops when the iterate change
    drops below outer_tol * ||M_obs||_F, the inner ADMM below
    inner_tol * ||M_obs||_F.
    """

    r: int = 1
    lam: Optional[float] = None
    epsilon: float = 0.1
    rho: float = 1.5
    beta0: float = 0.003
    beta_max: float = 1e7
    inner_tol: float = 1e-4
    outer_tol: float = 1e-3
    inner_max: int = 500
    outer_max: int = 50

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("truncation r must be nonnegative")
        if self.lam is not None and self.lam < 0.0:
            raise ValueError("lam must be nonnegative")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.rho <= 1.0:
            raise ValueError("rho must exceed 1")
        if not 0.0 < self.beta0 <= self.beta_max:
            raise ValueError("need 0 < beta0 <= beta_max")
        if self.inner_tol <= 0.0 or self.outer_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.inner_max < 1 or self.outer_max < 1:
            raise ValueError("iteration caps must be at least 1")


class TruncationPair(NamedTuple):
    """Semi-unitary row matrices C (r x M), D (r x N) from the top-r QSVD."""

    C: np.ndarray
    D: np.ndarray


class AdmmResult(NamedTuple):
    X: np.ndarray
    H: np.ndarray
    Y: np.ndarray
    iterations: int


def truncation_pair(X, r: int) -> TruncationPair:
    """C = (U[:, :r])^H and D = (V[:, :r])^H so Re tr(C X D^H) = sum of top-r sigma."""
    U, sigma, V = qsvd(X, full_matrices=False)
    if not 0 <= r <= sigma.size:
        raise ValueError(f"truncation r={r} must lie in [0, {sigma.size}]")
    return TruncationPair(C=conj_transpose(U[:, :r]), D=conj_transpose(V[:, :r]))


def resolve_lambda(problem: CompletionProblem, config: TqlnaConfig) -> float:
    """Effective penalty weight: config.lam, or the data-scaled default.

    The default makes the initial shrinkage kill radius 2 sqrt(lam / beta0)
    equal to two thirds of the observation's top singular value.
    """
    if config.lam is not None:
        return config.lam
    sigma1 = qsvd(problem.M_obs, full_matrices=False).sigma[0]
    return config.beta0 * (sigma1 / 3.0) ** 2


def admm_inner(problem: CompletionProblem, pair: TruncationPair,
               config: TqlnaConfig, X_init,
               tol: Optional[float] = None,
               callback: Optional[Callable] = None) -> AdmmResult:
    """Inner ADMM for the truncated subproblem, warm-started at X_init.

    tol is the absolute stopping threshold on ||X_{t+1} - X_t||_F; when
    omitted it is taken as config.inner_tol * ||M_obs||_F.  The observed
    entries of H are overwritten with M_obs after every H-update, so data
    fidelity on the mask is exact by construction.  callback, if given, is
    invoked as callback(tau, X, H, Y, beta) after each iteration.
    """
    m, n = problem.shape
    if X_init.shape != problem.M_obs.shape:
        raise ValueError("X_init shape does not match the problem")
    if pair.C.shape[1] != m or pair.D.shape[1] != n:
        raise ValueError("truncation pair dimensions do not match the problem")
    if tol is None:
        tol = config.inner_tol * frobenius_norm(problem.M_obs)
    lam = resolve_lambda(problem, config)

    observed = problem.observed
    M_on_mask = problem.M_obs[observed]
    # C^H D is constant across the inner loop; empty for r = 0.
    CHD = matmul(conj_transpose(pair.C), pair.D)

    X = X_init.copy()
    H = X_init.copy()
    Y = X_init.copy()
    beta = config.beta0

    tau = 0
    for tau in range(1, config.inner_max + 1):
        X_new = qlsvt(H - Y / beta, lam / beta, config.epsilon)
        H = X_new + (CHD + Y) / beta
        H[observed] = M_on_mask
        Y = Y + beta * (X_new - H)
        if not np.all(np.isfinite(X_new)):
            raise FloatingPointError(f"non-finite ADMM iterate at inner step {tau}")
        step = frobenius_norm(X_new - X)
        X = X_new
        beta = min(config.rho * beta, config.beta_max)
        if callback is not None:
            callback(tau, X, H, Y, beta)
        if step <= tol:
            break

    return AdmmResult(X=X, H=H, Y=Y, iterations=tau)


def solve_tqlna(problem: CompletionProblem, config: TqlnaConfig = TqlnaConfig(),
                callback: Optional[Callable] = None) -> SolveResult:
    """Two-step outer loop: truncation factors, then inner ADMM, until the
    relative iterate change drops below config.outer_tol.

    Each inner ADMM restarts from the observation (X_1 = M_obs, with H and Y
    initialized to it and the penalty at beta0), so one outer step is a
    deterministic function of the truncation pair alone and the outer loop
    is a fixed-point iteration on the truncated subspace.

    callback, if given, is invoked as callback(k, X, pair) with the outer
    index, the iterate entering step k, and that step's truncation pair.
    """
    m, n = problem.shape
    if config.r > min(m, n):
        raise ValueError(f"truncation r={config.r} exceeds min(M, N)={min(m, n)}")

    config = replace(config, lam=resolve_lambda(problem, config))
    M_norm = frobenius_norm(problem.M_obs)
    inner_tol_abs = config.inner_tol * M_norm
    X = problem.M_obs.copy()
    total_inner = 0
    converged = False

    for k in range(1, config.outer_max + 1):
        pair = truncation_pair(X, config.r)
        if callback is not None:
            callback(k, X, pair)
        result = admm_inner(problem, pair, config, X_init=problem.M_obs,
                            tol=inner_tol_abs)
        total_inner += result.iterations
        change = frobenius_norm(result.X - X)
        X = result.X
        if change <= config.outer_tol * M_norm:
            converged = True
            break

    return SolveResult(X=X, iterations=total_inner, converged=converged)
