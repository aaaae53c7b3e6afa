"""Shared test helpers: random ensembles and an exponential oracle that does
not go through the eigendecomposition used by the library."""
from __future__ import annotations

import numpy as np
import pytest

from mptrotter import build_spin_hamiltonian


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed diagonal."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2.0


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def taylor_propagator(h: np.ndarray, t: float, pieces: int = 16, terms: int = 40) -> np.ndarray:
    """exp(-i h t) by Taylor series with scaling and squaring; independent of
    the library's eigendecomposition path."""
    a = -1j * (t / pieces) * np.asarray(h, dtype=complex)
    out = np.eye(h.shape[0], dtype=complex)
    term = np.eye(h.shape[0], dtype=complex)
    for n in range(1, terms):
        term = term @ a / n
        out = out + term
    return np.linalg.matrix_power(out, pieces)


@pytest.fixture
def spin_decomp():
    return build_spin_hamiltonian()


@pytest.fixture
def psi0():
    return np.array([np.sqrt(0.3), np.sqrt(0.7), 0.0, 0.0], dtype=complex)
