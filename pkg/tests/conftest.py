import numpy as np
import pytest

from graff import AffineFlat, make_flat


def random_flat(rng: np.random.Generator, n: int, k: int) -> AffineFlat:
    """A generic k-flat in R^n with Gaussian basis and displacement."""
    return make_flat(rng.standard_normal((n, k)), rng.standard_normal(n))


def x_axis(n: int = 2) -> AffineFlat:
    A = np.zeros((n, 1))
    A[0, 0] = 1.0
    return AffineFlat(A, np.zeros(n))


def horizontal_line(height: float) -> AffineFlat:
    """The line y = height in R^2."""
    return AffineFlat(np.array([[1.0], [0.0]]), np.array([0.0, height]))


def point_flat(coords) -> AffineFlat:
    coords = np.asarray(coords, dtype=float)
    return AffineFlat(np.zeros((coords.size, 0)), coords)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
