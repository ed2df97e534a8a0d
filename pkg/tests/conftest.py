import numpy as np
import pytest


def random_qmatrix(rng, m, n, scale=1.0):
    """Random quaternion matrix with N(0, scale^2) components."""
    return scale * rng.standard_normal((m, n, 4))


def random_lowrank(rng, m, n, r, component_rms=80.0):
    """Random rank-r quaternion matrix scaled to pixel-like component RMS."""
    from quatcomp import conj_transpose, matmul

    G = matmul(rng.standard_normal((m, r, 4)),
               conj_transpose(rng.standard_normal((n, r, 4))))
    return G * (component_rms / np.sqrt(np.mean(G**2)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
