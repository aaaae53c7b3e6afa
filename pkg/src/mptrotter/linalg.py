"""Dense complex matrix kernel: Hermitian propagators, norms, unitary completion.

Operators are plain square complex ndarrays and state vectors are 1-d complex
ndarrays; nothing here mutates its inputs. Matrix exponentials go through an
eigendecomposition, which is exact to roundoff at the dimensions used here
(<= 64), so no scaling-and-squaring is needed.
"""
from __future__ import annotations

import numpy as np

# Tolerance for algebraic identities (unitarity, hermiticity, reconstruction).
ATOL_ALGEBRAIC = 1e-10
# Tolerance for spectral quantities (norms, eigenvalue-derived checks).
ATOL_SPECTRAL = 1e-9


def as_operator(m) -> np.ndarray:
    """Coerce to a square complex matrix, rejecting anything else."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {a.shape}")
    return a


def as_state(v, *, normalized: bool = False) -> np.ndarray:
    """Coerce to a 1-d complex vector; optionally require unit norm."""
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.size == 0:
        raise ValueError("state vector must be nonempty")
    if normalized:
        n = float(np.linalg.norm(a))
        if abs(n - 1.0) > ATOL_ALGEBRAIC:
            raise ValueError(f"state vector is not normalized: ||v|| = {n!r}")
    return a


def spectral_norm(m) -> float:
    """Largest singular value of m.

    Computed as sqrt of the top eigenvalue of M^dag M rather than by SVD, so
    tests can use an independent SVD oracle. The eigenvalue is clamped at zero
    before the square root; roundoff can push it slightly negative.
    """
    a = as_operator(m)
    w = np.linalg.eigvalsh(a.conj().T @ a)
    return float(np.sqrt(max(float(w[-1]), 0.0)))


def is_hermitian(m, tol: float = ATOL_ALGEBRAIC) -> bool:
    a = as_operator(m)
    return spectral_norm(a - a.conj().T) < tol


def is_unitary(m, tol: float = ATOL_ALGEBRAIC) -> bool:
    a = as_operator(m)
    return spectral_norm(a @ a.conj().T - np.eye(a.shape[0])) < tol


def hermitian_propagator(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, via eigendecomposition.

    Rejects non-Hermitian input; the resulting matrix is unitary to roundoff.
    Negative t gives the inverse propagator.
    """
    a = as_operator(h)
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    dev = spectral_norm(a - a.conj().T)
    if dev >= ATOL_ALGEBRAIC:
        raise ValueError(f"matrix is not Hermitian: ||H - H^dag|| = {dev:.3e}")
    w, vecs = np.linalg.eigh(a)
    phases = np.exp(-1j * w * t)
    return (vecs * phases) @ vecs.conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product, first factor on the slow (most significant) index."""
    return np.kron(as_operator(a), as_operator(b))


def complete_unitary(first: np.ndarray, orientation: str = "column") -> np.ndarray:
    """Deterministic unitary whose first column (or row) equals `first` exactly.

    Built from a single Householder reflection mapping e_1 onto the target, with
    the reflector phase chosen opposite to the first entry so the subtraction
    v - alpha*e_1 never cancels. The first column is then overwritten with the
    input verbatim, which keeps the prescribed entries exact instead of
    exact-to-roundoff. Row orientation returns the transpose of the column
    construction, so a symmetric split m = m' yields C' = C^T.
    """
    v = as_state(first)
    n = v.size
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > ATOL_ALGEBRAIC:
        raise ValueError(f"first column must have unit norm, got ||v|| = {nrm!r}")
    if orientation not in ("column", "row"):
        raise ValueError(f"orientation must be 'column' or 'row', got {orientation!r}")

    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    if np.linalg.norm(v - e1) <= 1e-12:
        u = np.eye(n, dtype=complex)
    else:
        phi = float(np.angle(v[0])) if abs(v[0]) > 0.0 else 0.0
        alpha = -np.exp(1j * phi)
        w = v - alpha * e1
        refl = np.eye(n, dtype=complex) - 2.0 * np.outer(w, w.conj()) / np.vdot(w, w)
        u = alpha * refl
    u[:, 0] = v
    return u.T.copy() if orientation == "row" else u
