import numpy as np
import pytest

from complementarity.rng import GaussianSource
from complementarity.states import ginibre_matrices


@pytest.fixture
def source():
    return GaussianSource(20240611)


@pytest.fixture(scope="session")
def ginibre_1000():
    return ginibre_matrices(1000, seed=7)


def random_real_pair(source, n):
    """Random real symmetric and real antisymmetric n x n matrices."""
    a = source.normal((n, n))
    b = source.normal((n, n))
    return a + a.T, b - b.T


def kron_pauli(mu, nu):
    """Independent construction of sigma_mu (x) sigma_nu via np.kron."""
    paulis = [
        np.eye(2),
        np.array([[0, 1], [1, 0]]),
        np.array([[0, -1j], [1j, 0]]),
        np.array([[1, 0], [0, -1]]),
    ]
    return np.kron(paulis[mu], paulis[nu]).astype(complex)
