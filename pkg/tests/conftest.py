import numpy as np
import pytest

from comovement import CorrelationMatrix, correlate, normalize


def gaussian_correlation(n: int, t: int, seed: int) -> CorrelationMatrix:
    """Correlation matrix of an i.i.d. Gaussian panel (generic, noisy spectrum)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    raw = rng.standard_normal((n, t))
    return correlate(normalize(raw, [f"A{i:03d}" for i in range(n)]))


def equicorrelated(n: int, rho: float) -> CorrelationMatrix:
    values = np.full((n, n), rho)
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(labels=[f"A{i:03d}" for i in range(n)], values=values)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240817))
