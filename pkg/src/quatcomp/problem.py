"""Shared problem and result containers for the completion solvers."""

from dataclasses import dataclass, field

import numpy as np

from .core import as_qarray, hadamard_mask


@dataclass(frozen=True)
class CompletionProblem:
    """Observed quaternion matrix plus its 0/1 observation mask.

    The observation is normalized on construction: entries where the mask is
    0 are zeroed, so ``M_obs`` always equals the zero-filled observation.
    """

    M_obs: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        M_obs = as_qarray(self.M_obs)
        W = np.asarray(self.W, dtype=np.float64)
        if M_obs.ndim != 3:
            raise ValueError("M_obs must be an (M, N, 4) quaternion matrix")
        if W.shape != M_obs.shape[:2]:
            raise ValueError(f"mask shape {W.shape} does not match data {M_obs.shape[:2]}")
        if not np.all((W == 0.0) | (W == 1.0)):
            raise ValueError("mask entries must be 0 or 1")
        object.__setattr__(self, "M_obs", hadamard_mask(W, M_obs))
        object.__setattr__(self, "W", W)

    @property
    def shape(self):
        return self.M_obs.shape[:2]

    @property
    def observed(self) -> np.ndarray:
        """Boolean index of observed entries."""
        return self.W > 0.0

    @property
    def sampling_rate(self) -> float:
        return float(self.W.mean())


@dataclass
class SolveResult:
    """Recovered matrix with bookkeeping from the solver run."""

    X: np.ndarray
    iterations: int
    converged: bool
    status: str = field(default="ok")
