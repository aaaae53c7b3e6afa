"""Multi-product combinations of second-order Trotter products.

A k-term multi-product evolves with several iteration counts L(1) < ... < L(k)
and combines the results linearly, M(t) = sum_q c_q S_1^{L(q)}(t/L(q)). The
coefficients are fixed by requiring the t^3, t^5, ..., t^{2k-1} error terms of
the second-order product to cancel, which gives the closed form

    c_q = prod_{p != q} L(q)^2 / (L(q)^2 - L(p)^2)

and leaves the combination accurate to O(t^{2k+1}). The coefficients always
sum to 1 and depend only on the ratios of the L(q). Geometric schedules
L(q) = a * 2^q keep sum|c_q| below 2, which is what makes the circuit
realization practical; schedules with near-equal iteration counts blow the
coefficients up and are numerically ill-conditioned.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import exp

import numpy as np

from .hamiltonian import HamiltonianDecomposition, total
from .linalg import as_state, hermitian_propagator, spectral_norm
from .trotter import trotterize

COEFF_SUM_TOL = 1e-9


def mp_coefficients(iterations) -> np.ndarray:
    """Cancellation coefficients for the given iteration counts.

    Accepts any strictly increasing positive reals (the closed form only uses
    ratios, so scaled copies of a schedule give identical coefficients).
    A singleton gives c = (1,).
    """
    ell = np.asarray(iterations, dtype=float).reshape(-1)
    if ell.size == 0:
        raise ValueError("schedule must contain at least one iteration count")
    if np.any(ell <= 0):
        raise ValueError(f"iteration counts must be positive, got {ell.tolist()}")
    if np.any(np.diff(ell) <= 0):
        raise ValueError(
            f"iteration counts must be strictly increasing, got {ell.tolist()}"
        )
    sq = ell * ell
    coeffs = np.ones(ell.size, dtype=float)
    for q in range(ell.size):
        for p in range(ell.size):
            if p != q:
                coeffs[q] *= sq[q] / (sq[q] - sq[p])
    return coeffs


@dataclass(frozen=True)
class MpSchedule:
    """Iteration counts plus their cancellation coefficients.

    kind records how the schedule was built: "modified" for geometric
    a * 2^q, "original" for (1, ..., k-1, round(e^{gamma k})), "explicit"
    for a user-supplied list. param holds a or gamma where applicable.
    """

    iterations: tuple[int, ...]
    coefficients: tuple[float, ...]
    kind: str = "explicit"
    param: float | None = None

    def __post_init__(self) -> None:
        its = tuple(int(x) for x in self.iterations)
        if its != tuple(self.iterations):
            raise ValueError(f"iteration counts must be integers, got {self.iterations!r}")
        if len(its) != len(self.coefficients):
            raise ValueError("iterations and coefficients must have equal length")
        if any(x < 1 for x in its):
            raise ValueError(f"iteration counts must be >= 1, got {its!r}")
        if any(b <= a for a, b in zip(its, its[1:])):
            raise ValueError(f"iteration counts must be strictly increasing, got {its!r}")
        dev = abs(sum(self.coefficients) - 1.0)
        if dev > COEFF_SUM_TOL:
            raise ValueError(f"coefficients must sum to 1, deviation {dev:.3e}")
        object.__setattr__(self, "iterations", its)
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @property
    def k(self) -> int:
        return len(self.iterations)

    def abs_coefficient_sum(self) -> float:
        return float(np.sum(np.abs(self.coefficients)))

    def ideal_success_probability(self) -> float:
        """Post-selection probability 1/(sum|c|)^2 when the combination is unitary."""
        s = self.abs_coefficient_sum()
        return 1.0 / (s * s)


def make_schedule(kind: str, *, a: int | None = None, k: int | None = None,
                  gamma: float | None = None,
                  iterations=None) -> MpSchedule:
    """Build a schedule of one of the three supported kinds.

    modified: L(q) = a * 2^q for q = 1..k, a >= 1.
    original: L(q) = q for q < k and round(e^{gamma k}) for q = k; the rounded
        tail must exceed k - 1 or the schedule would not be increasing.
    explicit: any strictly increasing positive integers.
    """
    if kind == "modified":
        if a is None or k is None:
            raise ValueError("modified schedule needs a and k")
        if int(a) != a or a < 1:
            raise ValueError(f"prefactor a must be an integer >= 1, got {a!r}")
        if int(k) != k or k < 1:
            raise ValueError(f"k must be an integer >= 1, got {k!r}")
        its = tuple(int(a) * 2 ** q for q in range(1, int(k) + 1))
        return MpSchedule(its, tuple(mp_coefficients(its)), kind="modified", param=float(a))
    if kind == "original":
        if gamma is None or k is None:
            raise ValueError("original schedule needs gamma and k")
        if not (gamma > 0):
            raise ValueError(f"gamma must be positive, got {gamma!r}")
        if int(k) != k or k < 2:
            raise ValueError(f"k must be an integer >= 2, got {k!r}")
        tail = int(round(exp(gamma * int(k))))
        if tail <= int(k) - 1:
            raise ValueError(
                f"rounded tail {tail} collides with the leading ramp 1..{int(k) - 1}; "
                f"increase gamma"
            )
        its = tuple(range(1, int(k))) + (tail,)
        return MpSchedule(its, tuple(mp_coefficients(its)), kind="original", param=float(gamma))
    if kind == "explicit":
        if iterations is None:
            raise ValueError("explicit schedule needs the iteration list")
        its = tuple(int(x) for x in iterations)
        return MpSchedule(its, tuple(mp_coefficients(its)), kind="explicit")
    raise ValueError(f"unknown schedule kind {kind!r}")


def mp_operator(decomp: HamiltonianDecomposition, t: float,
                schedule: MpSchedule) -> np.ndarray:
    """The combined operator M(t); generally non-unitary, equals a plain
    iterated product when k = 1."""
    out = np.zeros((decomp.dim, decomp.dim), dtype=complex)
    for c, l in zip(schedule.coefficients, schedule.iterations):
        out = out + c * trotterize(decomp, t, l)
    return out


@dataclass(frozen=True)
class ErrorReport:
    """Error metrics of an approximate propagator at one time.

    state_error is ||psi_exact - psi'|| with psi' the renormalized output
    state and no global-phase alignment, so antipodal phases score 2, not 0.
    degenerate flags a vanishing output norm, in which case state_error is NaN
    rather than silently renormalized garbage.
    """

    t: float
    state_error: float
    operator_error: float
    nonunitarity: float
    degenerate: bool = False

    def __post_init__(self) -> None:
        if not self.degenerate and self.state_error < 0:
            raise ValueError("state_error must be nonnegative")
        if self.operator_error < 0 or self.nonunitarity < 0:
            raise ValueError("error metrics must be nonnegative")


def phase_aligned_state_error(psi, phi) -> float:
    """min over theta of ||psi - e^{i theta} phi||; diagnostic only.

    The headline state_error metric is deliberately phase-sensitive; this
    helper exists to tell a pure global-phase discrepancy apart from a real
    one.
    """
    a = as_state(psi)
    b = as_state(phi)
    ov = np.vdot(b, a)
    if abs(ov) > 0:
        b = b * (ov / abs(ov))
    return float(np.linalg.norm(a - b))


def error_report(decomp: HamiltonianDecomposition, t: float, m,
                 psi0) -> ErrorReport:
    """Compare an approximate propagator m against exact evolution at time t."""
    psi = as_state(psi0, normalized=True)
    exact = hermitian_propagator(total(decomp), t)
    target = exact @ psi
    raw = np.asarray(m, dtype=complex) @ psi
    nrm = float(np.linalg.norm(raw))
    op_err = spectral_norm(np.asarray(m, dtype=complex) - exact)
    nonu = spectral_norm(np.asarray(m, dtype=complex) @ np.asarray(m, dtype=complex).conj().T
                         - np.eye(decomp.dim))
    if nrm == 0.0:
        return ErrorReport(t=t, state_error=float("nan"), operator_error=op_err,
                           nonunitarity=nonu, degenerate=True)
    out = raw / nrm
    return ErrorReport(t=t, state_error=float(np.linalg.norm(target - out)),
                       operator_error=op_err, nonunitarity=nonu)
