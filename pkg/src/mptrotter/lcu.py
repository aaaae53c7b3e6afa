"""Explicit matrix simulation of linear-combination-of-unitaries circuits.

The circuit realizes T = sum_i c_i A_i on a data register by loading amplitudes
m_i on an ancilla register (gate C, first column m), applying A_i conditioned
on ancilla state i-1 (SELECT), unloading with a gate C' whose first row is m',
and post-selecting the ancilla on |0>. The kept branch is

    (<0| (x) I) W (|0> (x) |psi>) = sum_i m_i m'_i A_i |psi>,    W = (C' (x) I) SELECT (C (x) I),

so choosing m_i m'_i proportional to c_i realizes T up to normalization. The
squared norm of the kept branch is the success probability; the best possible
split puts it at 1/(sum|c_i|)^2 when T is unitary.

A Grover-like iterate (-W R W^dag R)^N W, with R the reflection about the
ancilla-|0> subspace, rotates the kept amplitude from sin(theta) to
sin((2N+1) theta) without touching the data state (oblivious amplitude
amplification). With one round and success probability near 1/4 this lands
the probability near 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, sin

import numpy as np

from .linalg import ATOL_ALGEBRAIC, as_operator, as_state, complete_unitary, kron, spectral_norm

# Post-selected amplitudes below this are treated as a degenerate (failed)
# branch rather than renormalized noise.
DEGENERATE_AMPLITUDE = 1e-12


@dataclass(frozen=True)
class LcuCircuit:
    """Assembled circuit data. All arrays are frozen by convention."""

    coeffs: np.ndarray          # real c_i, length k
    m: np.ndarray               # complex, length k, first column of C
    m_prime: np.ndarray         # complex, length k, first row of C'
    c_matrix: np.ndarray        # ancilla_dim x ancilla_dim unitary
    c_prime_matrix: np.ndarray  # ancilla_dim x ancilla_dim unitary
    branch_ops: tuple[np.ndarray, ...]
    w: np.ndarray               # (ancilla_dim * data_dim)^2 assembled circuit
    ancilla_dim: int
    data_dim: int

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def combined_operator(self) -> np.ndarray:
        """sum_i c_i A_i, the operator the post-selected branch implements."""
        out = np.zeros((self.data_dim, self.data_dim), dtype=complex)
        for c, a in zip(self.coeffs, self.branch_ops):
            out = out + c * a
        return out


@dataclass(frozen=True)
class LcuOutcome:
    """Post-selected branch of one circuit application.

    projected_state is the unnormalized kept branch; its squared norm is the
    success probability. renormalized_state is None when the branch vanished.
    """

    projected_state: np.ndarray
    success_probability: float
    renormalized_state: np.ndarray | None
    degenerate: bool = False


@dataclass(frozen=True)
class OaaErrorReport:
    """Amplification-error accounting for one circuit and input state.

    s is the measured post-selection amplitude (s = 0.5 + Delta is the regime
    one round of amplification is designed for), delta the non-unitarity
    ||TT^dag - I|| of the combined operator, and bound = (1/2 + 3 Delta) delta
    the first-order residual estimate, clamped at zero since the expansion is
    only meaningful near s = 1/2. identity_residual is the self-check
    || P A P - (3 PWP - 4 (PWP)(PWP)^dag(PWP)) || with A one amplification
    round; observed_error compares the amplified state against the
    renormalized target sum c_i A_i |psi>.
    """

    s: float
    delta: float
    bound: float
    identity_residual: float
    observed_error: float

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")


def optimal_split(coeffs) -> tuple[np.ndarray, np.ndarray]:
    """Amplitude split maximizing the post-selection probability.

    m_i = m'_i = sqrt(c_i / sum|c|) with the principal branch of the square
    root, so a negative coefficient gives a purely imaginary amplitude and the
    product m_i m'_i stays real with the sign of c_i. Both vectors come out
    unit-norm; probability under this split is ||sum c_i A_i psi||^2/(sum|c|)^2,
    and no feasible split does better.
    """
    c = _as_real_coeffs(coeffs)
    tot = float(np.sum(np.abs(c)))
    if tot == 0.0:
        raise ValueError("all coefficients are zero")
    m = np.sqrt(c.astype(complex) / tot)
    return m, m.copy()


def _as_real_coeffs(coeffs) -> np.ndarray:
    a = np.asarray(coeffs)
    if np.iscomplexobj(a):
        if np.any(np.abs(a.imag) > 0):
            raise ValueError("coefficients must be real")
        a = a.real
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.size == 0:
        raise ValueError("need at least one coefficient")
    return a


def _validate_split(c: np.ndarray, m: np.ndarray, m_prime: np.ndarray) -> None:
    for name, v in (("m", m), ("m_prime", m_prime)):
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > ATOL_ALGEBRAIC:
            raise ValueError(f"split vector {name} must be unit norm, got {n!r}")
    prod = m * m_prime
    # the products must be proportional to the coefficients with one common
    # (complex) factor; anchor the factor on the largest coefficient
    j = int(np.argmax(np.abs(c)))
    if abs(c[j]) == 0.0:
        raise ValueError("all coefficients are zero")
    z = prod[j] / c[j]
    if abs(z) < 1e-300:
        raise ValueError("split vectors give a vanishing amplitude on every branch")
    dev = float(np.max(np.abs(prod - z * c)))
    if dev > 1e-9:
        raise ValueError(
            f"split products m_i * m'_i are not proportional to the coefficients "
            f"(max deviation {dev:.3e})"
        )


def build_lcu(coeffs, branch_ops, split: tuple[np.ndarray, np.ndarray] | None = None) -> LcuCircuit:
    """Assemble the explicit circuit matrix for sum_i c_i A_i.

    branch_ops must share one dimension and match coeffs in count. When the
    branch count is not a power of two the ancilla is padded with zero
    coefficients and identity branches. split overrides the optimal amplitude
    split; it must be two unit-norm vectors whose products track c_i.
    """
    c = _as_real_coeffs(coeffs)
    ops = tuple(as_operator(a) for a in branch_ops)
    if len(ops) != c.size:
        raise ValueError(f"{c.size} coefficients but {len(ops)} branch operators")
    d = ops[0].shape[0]
    for i, a in enumerate(ops):
        if a.shape[0] != d:
            raise ValueError(f"branch operator {i} has dimension {a.shape[0]}, expected {d}")
    if split is None:
        m, m_prime = optimal_split(c)
    else:
        m = as_state(split[0])
        m_prime = as_state(split[1])
        if m.size != c.size or m_prime.size != c.size:
            raise ValueError("split vectors must match the coefficient count")
        _validate_split(c, m, m_prime)

    k = c.size
    ancilla = 1
    while ancilla < k:
        ancilla *= 2

    m_full = np.zeros(ancilla, dtype=complex)
    m_full[:k] = m
    mp_full = np.zeros(ancilla, dtype=complex)
    mp_full[:k] = m_prime
    c_mat = complete_unitary(m_full, "column")
    cp_mat = complete_unitary(mp_full, "row")

    select = np.zeros((ancilla * d, ancilla * d), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for i in range(ancilla):
        block = ops[i] if i < k else eye
        select[i * d:(i + 1) * d, i * d:(i + 1) * d] = block

    w = kron(cp_mat, eye) @ select @ kron(c_mat, eye)
    return LcuCircuit(coeffs=c, m=m, m_prime=m_prime, c_matrix=c_mat,
                      c_prime_matrix=cp_mat, branch_ops=ops, w=w,
                      ancilla_dim=ancilla, data_dim=d)


def _embed(circuit: LcuCircuit, psi: np.ndarray) -> np.ndarray:
    x = np.zeros(circuit.ancilla_dim * circuit.data_dim, dtype=complex)
    x[:circuit.data_dim] = psi
    return x


def _project(circuit: LcuCircuit, y: np.ndarray) -> LcuOutcome:
    proj = y[:circuit.data_dim].copy()
    nrm = float(np.linalg.norm(proj))
    prob = nrm * nrm
    if nrm <= DEGENERATE_AMPLITUDE:
        return LcuOutcome(projected_state=proj, success_probability=prob,
                          renormalized_state=None, degenerate=True)
    return LcuOutcome(projected_state=proj, success_probability=prob,
                      renormalized_state=proj / nrm)


def apply_lcu(circuit: LcuCircuit, psi) -> LcuOutcome:
    """Run the circuit on |0> (x) |psi> and post-select the ancilla on |0>."""
    v = as_state(psi, normalized=True)
    if v.size != circuit.data_dim:
        raise ValueError(f"state dimension {v.size} != data register {circuit.data_dim}")
    return _project(circuit, circuit.w @ _embed(circuit, v))


def _amplitude_flip(circuit: LcuCircuit) -> np.ndarray:
    r = np.eye(circuit.ancilla_dim, dtype=complex)
    r[0, 0] = -1.0
    return kron(r, np.eye(circuit.data_dim, dtype=complex))


def oaa_iterate(circuit: LcuCircuit, *, flip_sign: bool = True) -> np.ndarray:
    """One amplification round: -W R W^dag R, or +W R W^dag R when
    flip_sign=False. The two differ by a global phase only, so probabilities
    agree; the signed form is the one whose algebra the report checks."""
    r = _amplitude_flip(circuit)
    g = circuit.w @ r @ circuit.w.conj().T @ r
    return -g if flip_sign else g


def apply_oaa(circuit: LcuCircuit, psi, n: int, *, flip_sign: bool = True) -> LcuOutcome:
    """Apply (-W R W^dag R)^n W to |0> (x) |psi> and post-select.

    n = 0 reduces exactly to apply_lcu. For a unitary combined operator with
    post-selection amplitude sin(theta), n rounds move the success probability
    to sin^2((2n+1) theta).
    """
    if int(n) != n or n < 0:
        raise ValueError(f"round count must be a nonnegative integer, got {n!r}")
    v = as_state(psi, normalized=True)
    if v.size != circuit.data_dim:
        raise ValueError(f"state dimension {v.size} != data register {circuit.data_dim}")
    y = circuit.w @ _embed(circuit, v)
    if n > 0:
        g = oaa_iterate(circuit, flip_sign=flip_sign)
        for _ in range(int(n)):
            y = g @ y
    return _project(circuit, y)


def predicted_probability(p: float, n: int) -> float:
    """sin^2((2n+1) arcsin sqrt(p)): success probability after n rounds.

    Exact for unitary combined operators; zero rounds is the identity map on
    probabilities, and p = 1/4 with one round gives exactly 1.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    if int(n) != n or n < 0:
        raise ValueError(f"round count must be a nonnegative integer, got {n!r}")
    return sin((2 * int(n) + 1) * asin(p ** 0.5)) ** 2


def _ancilla_projector(circuit: LcuCircuit) -> np.ndarray:
    p = np.zeros((circuit.ancilla_dim, circuit.ancilla_dim), dtype=complex)
    p[0, 0] = 1.0
    return kron(p, np.eye(circuit.data_dim, dtype=complex))


def oaa_error_report(circuit: LcuCircuit, psi) -> OaaErrorReport:
    """Measure amplification-error quantities for one round on this input.

    The non-unitarity of the combined operator is what limits amplification:
    for the exactly unitary case the report is all zeros. The algebraic
    self-check verifies that one round, restricted to the ancilla-|0>
    subspace, acts as 3 PWP - 4 (PWP)(PWP)^dag(PWP); on the data register that
    is the cubic polynomial 3 sT' - 4 s^3 T'T'^dag T' of the loaded operator.
    """
    v = as_state(psi, normalized=True)
    base = apply_lcu(circuit, v)
    s = base.success_probability ** 0.5
    delta_mat = circuit.combined_operator()
    delta = spectral_norm(delta_mat @ delta_mat.conj().T - np.eye(circuit.data_dim))
    bound = max(0.0, (0.5 + 3.0 * (s - 0.5)) * delta)

    proj = _ancilla_projector(circuit)
    pwp = proj @ circuit.w @ proj
    one_round = oaa_iterate(circuit) @ circuit.w
    lhs = proj @ one_round @ proj
    rhs = 3.0 * pwp - 4.0 * pwp @ pwp.conj().T @ pwp
    residual = spectral_norm(lhs - rhs)

    amplified = apply_oaa(circuit, v, 1)
    target = delta_mat @ v
    tnorm = float(np.linalg.norm(target))
    if amplified.degenerate or tnorm <= DEGENERATE_AMPLITUDE:
        observed = float("nan")
    else:
        observed = float(np.linalg.norm(amplified.renormalized_state - target / tnorm))
    return OaaErrorReport(s=float(s), delta=float(delta), bound=float(bound),
                          identity_residual=float(residual), observed_error=observed)
