import numpy as np
import pytest

from darklattice import ModelParams, SubspaceBasis, SubspaceSpec, assemble_blocks
from darklattice import canonical_occupations


def lower_vector(N: int, n: int, coefficients: dict) -> np.ndarray:
    """Dense lower-basis vector from {occupations: value}; missing states are zero."""
    index = {occ: i for i, occ in enumerate(canonical_occupations(N, n))}
    vector = np.zeros(len(index))
    for occupations, value in coefficients.items():
        vector[index[tuple(occupations)]] = value
    return vector


def same_up_to_sign(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return bool(np.allclose(a, b, rtol=0.0, atol=atol) or np.allclose(a, -b, rtol=0.0, atol=atol))


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    """Seeded generator so that every run draws the same couplings"""
    return np.random.default_rng(20240917)


@pytest.fixture
def draw_couplings(rng):
    """Returns a function drawing N couplings uniformly from [0.5, 2]"""

    def draw(N: int) -> np.ndarray:
        return rng.uniform(0.5, 2.0, size=N)

    return draw


@pytest.fixture
def g3():
    return (0.7, 1.3, 0.9)


@pytest.fixture
def g4():
    return (1.1, 0.6, 1.7, 0.8)


@pytest.fixture
def blocks():
    """Returns a function assembling the rotating-frame blocks of (N, n) for couplings g"""

    def build(N: int, n: int, g, delta: float = 0.0):
        basis = SubspaceBasis.build(SubspaceSpec(N=N, n=n))
        return assemble_blocks(basis, ModelParams.resonant(g, delta=delta))

    return build
