import numpy as np
import pytest

from perronrank.models.comparison import AdditiveMatrix
from perronrank.models.solver import SolverConfig


def skew_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Random skew-symmetric matrix with normal upper triangle."""
    upper = np.triu(scale * rng.standard_normal((n, n)), k=1)
    return upper - upper.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_skew():
    def factory(rng: np.random.Generator, n: int, scale: float = 1.0) -> AdditiveMatrix:
        return AdditiveMatrix(entries=skew_matrix(rng, n, scale), skew=True)
    return factory


@pytest.fixture
def solver_cfg():
    return SolverConfig(tol=1e-12, max_iter=10000)


@pytest.fixture
def ones3_csv(tmp_path):
    path = tmp_path / "ones3.csv"
    path.write_text("1,1,1\n1,1,1\n1,1,1\n")
    return path
