"""Experiment driver: time sweeps over algorithms, fidelities, CSV/JSON output.

A sweep evolves one initial state of the two-spin model under several
algorithms over a time grid and records, per (t, algorithm): the post-selected
populations, the post-selection success probability, the state error against
exact evolution, and the classical fidelity of the population distributions.
Everything is deterministic: the same config yields byte-identical output.

Algorithm specs are strings:

    exact                    eigendecomposition propagator
    trotter:<l>              iterated second-order product, l iterations
    mp:<schedule>            multi-product via the simulated LCU circuit
    mp_oaa:<schedule>[:<n>]  same, followed by n amplification rounds

and schedules are "modified:a,k", "original:gamma,k", or an explicit
comma-separated list like "1,2,3,96".
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hamiltonian import DEFAULT_PARAMS, SpinModelParams, build_spin_hamiltonian, total
from .lcu import LcuOutcome, apply_lcu, apply_oaa, build_lcu
from .linalg import hermitian_propagator
from .multiproduct import MpSchedule, make_schedule
from .trotter import trotterize

CSV_HEADER = "t,algo,p00,p01,p10,p11,success_prob,state_error,fidelity"

# State errors at or below this are indistinguishable from double-precision
# roundoff for the problem sizes here; order fits must drop such points.
ERROR_FLOOR = 1e-13

DEFAULT_ALGORITHMS = ("exact", "trotter:96", "mp:modified:2,4", "mp_oaa:modified:2,4:1")


def default_t_grid() -> tuple[float, ...]:
    """61 integer-spaced times covering [0, 60]."""
    return tuple(float(t) for t in np.linspace(0.0, 60.0, 61))


def parse_schedule_spec(text: str) -> MpSchedule:
    """Schedule from its CLI/config spelling."""
    text = text.strip()
    if text.startswith("modified:"):
        body = text[len("modified:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"modified schedule spec needs 'modified:a,k', got {text!r}")
        return make_schedule("modified", a=_as_int(parts[0], "a"), k=_as_int(parts[1], "k"))
    if text.startswith("original:"):
        body = text[len("original:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"original schedule spec needs 'original:gamma,k', got {text!r}")
        try:
            gamma = float(parts[0])
        except ValueError:
            raise ValueError(f"gamma must be a real number, got {parts[0]!r}") from None
        return make_schedule("original", gamma=gamma, k=_as_int(parts[1], "k"))
    return make_schedule("explicit",
                         iterations=[_as_int(p, "iteration count") for p in text.split(",")])


def _as_int(text: str, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {text.strip()!r}") from None


@dataclass(frozen=True)
class AlgorithmSpec:
    spec: str
    kind: str                       # exact | trotter | mp | mp_oaa
    l: int | None = None
    schedule: MpSchedule | None = None
    rounds: int = 0


def parse_algorithm(spec: str, default_rounds: int = 1) -> AlgorithmSpec:
    s = spec.strip()
    if s == "exact":
        return AlgorithmSpec(spec=s, kind="exact")
    if s.startswith("trotter:"):
        return AlgorithmSpec(spec=s, kind="trotter",
                             l=_as_int(s[len("trotter:"):], "iteration count"))
    if s.startswith("mp_oaa:"):
        body = s[len("mp_oaa:"):]
        # the whole body may be a schedule (round count defaulted), else the
        # last :-field is the round count
        try:
            return AlgorithmSpec(spec=s, kind="mp_oaa",
                                 schedule=parse_schedule_spec(body),
                                 rounds=default_rounds)
        except ValueError:
            head, sep, tail = body.rpartition(":")
            if not sep:
                raise
        rounds = _as_int(tail, "round count")
        if rounds < 0:
            raise ValueError(f"round count must be nonnegative, got {rounds}")
        return AlgorithmSpec(spec=s, kind="mp_oaa",
                             schedule=parse_schedule_spec(head), rounds=rounds)
    if s.startswith("mp:"):
        return AlgorithmSpec(spec=s, kind="mp", schedule=parse_schedule_spec(s[len("mp:"):]))
    raise ValueError(
        f"unknown algorithm {spec!r}; expected exact, trotter:<l>, mp:<schedule>, "
        f"or mp_oaa:<schedule>[:<rounds>]"
    )


@dataclass(frozen=True)
class SweepConfig:
    model: SpinModelParams = DEFAULT_PARAMS
    initial_state: tuple[complex, ...] = ()
    t_grid: tuple[float, ...] = ()
    algorithms: tuple[str, ...] = DEFAULT_ALGORITHMS
    oaa_rounds: int = 1
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        state = tuple(complex(a) for a in self.initial_state) or (
            complex(np.sqrt(0.3)), complex(np.sqrt(0.7)), 0j, 0j)
        if len(state) != 4:
            raise ValueError(f"initial state needs 4 amplitudes, got {len(state)}")
        nrm = float(np.linalg.norm(np.asarray(state)))
        if abs(nrm - 1.0) > 1e-9:
            raise ValueError(f"initial state is not normalized: ||psi|| = {nrm!r}")
        grid = tuple(float(t) for t in self.t_grid) or default_t_grid()
        if not all(np.isfinite(grid)):
            raise ValueError("time grid entries must be finite")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if int(self.oaa_rounds) != self.oaa_rounds or self.oaa_rounds < 0:
            raise ValueError(f"oaa_rounds must be a nonnegative integer, got {self.oaa_rounds!r}")
        for spec in self.algorithms:
            parse_algorithm(spec, self.oaa_rounds)  # validate early
        object.__setattr__(self, "initial_state", state)
        object.__setattr__(self, "t_grid", grid)
        object.__setattr__(self, "algorithms", tuple(self.algorithms))


@dataclass(frozen=True)
class SweepRow:
    t: float
    algo: str
    p00: float | None
    p01: float | None
    p10: float | None
    p11: float | None
    success_prob: float
    state_error: float
    fidelity: float | None
    degenerate: bool = False


CONFIG_KEYS = ("omega", "delta", "e1", "e2", "initial_state", "t_grid",
               "algorithms", "oaa_rounds", "output", "format")


def _parse_amplitude(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2 \
            and all(isinstance(x, (int, float)) for x in entry):
        return complex(entry[0], entry[1])
    raise ValueError(f"amplitudes must be numbers or [re, im] pairs, got {entry!r}")


def load_config(path) -> SweepConfig:
    """Read a flat JSON config; unknown keys are rejected, known ones optional."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("config must be a JSON object")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ValueError(f"unknown config keys {unknown}; allowed: {list(CONFIG_KEYS)}")
    model = SpinModelParams(
        omega=float(raw.get("omega", DEFAULT_PARAMS.omega)),
        delta=float(raw.get("delta", DEFAULT_PARAMS.delta)),
        e1=float(raw.get("e1", DEFAULT_PARAMS.e1)),
        e2=float(raw.get("e2", DEFAULT_PARAMS.e2)),
    )
    state = tuple(_parse_amplitude(a) for a in raw.get("initial_state", ()))
    return SweepConfig(
        model=model,
        initial_state=state,
        t_grid=tuple(float(t) for t in raw.get("t_grid", ())),
        algorithms=tuple(raw.get("algorithms", DEFAULT_ALGORITHMS)),
        oaa_rounds=int(raw.get("oaa_rounds", 1)),
        output_path=raw.get("output"),
        format=raw.get("format", "csv"),
    )


def classical_fidelity(p, q) -> float:
    """Bhattacharyya-type overlap (sum_i sqrt(p_i q_i))^2 of two distributions.

    Inputs must be elementwise nonnegative and each sum to 1 within 1e-9;
    the result is symmetric, 1 exactly when p = q, 0 on disjoint support.
    """
    a = np.asarray(p, dtype=float).reshape(-1)
    b = np.asarray(q, dtype=float).reshape(-1)
    if a.size != b.size:
        raise ValueError(f"distributions differ in length: {a.size} vs {b.size}")
    for name, v in (("p", a), ("q", b)):
        if np.any(v < -1e-12):
            raise ValueError(f"{name} has negative entries")
        tot = float(v.sum())
        if abs(tot - 1.0) > 1e-9:
            raise ValueError(f"{name} is not normalized: sum = {tot!r}")
    a = np.clip(a, 0.0, None)
    b = np.clip(b, 0.0, None)
    root = float(np.sum(np.sqrt(a * b)))
    return min(root * root, 1.0)


def _evolve_one(decomp, psi0, exact_state, t: float, algo: AlgorithmSpec):
    """(state or None, success probability, degenerate flag) for one cell."""
    if algo.kind == "exact":
        return exact_state, 1.0, False
    if algo.kind == "trotter":
        out = trotterize(decomp, t, algo.l) @ psi0
        return out / np.linalg.norm(out), 1.0, False
    ops = [trotterize(decomp, t, l) for l in algo.schedule.iterations]
    circuit = build_lcu(np.asarray(algo.schedule.coefficients), ops)
    if algo.kind == "mp":
        outcome: LcuOutcome = apply_lcu(circuit, psi0)
    else:
        outcome = apply_oaa(circuit, psi0, algo.rounds)
    if outcome.degenerate:
        return None, outcome.success_probability, True
    return outcome.renormalized_state, outcome.success_probability, False


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """All (t, algorithm) rows of the sweep, grid-major, algorithms in config order."""
    decomp = build_spin_hamiltonian(config.model)
    h = total(decomp)
    psi0 = np.asarray(config.initial_state, dtype=complex)
    psi0 = psi0 / np.linalg.norm(psi0)
    algos = [parse_algorithm(s, config.oaa_rounds) for s in config.algorithms]
    rows: list[SweepRow] = []
    for t in config.t_grid:
        exact_state = hermitian_propagator(h, t) @ psi0
        p_exact = np.abs(exact_state) ** 2
        p_exact = p_exact / p_exact.sum()
        for algo in algos:
            state, prob, degenerate = _evolve_one(decomp, psi0, exact_state, t, algo)
            if degenerate:
                rows.append(SweepRow(t=t, algo=algo.spec, p00=None, p01=None,
                                     p10=None, p11=None, success_prob=prob,
                                     state_error=float("nan"), fidelity=None,
                                     degenerate=True))
                continue
            pops = np.abs(state) ** 2
            pops = pops / pops.sum()
            err = float(np.linalg.norm(exact_state - state))
            fid = classical_fidelity(p_exact, pops)
            rows.append(SweepRow(t=t, algo=algo.spec,
                                 p00=float(pops[0]), p01=float(pops[1]),
                                 p10=float(pops[2]), p11=float(pops[3]),
                                 success_prob=float(prob), state_error=err,
                                 fidelity=fid))
    return rows


def fit_order(t_grid, errors) -> float:
    """Least-squares slope of log(error) against log(t).

    Needs at least 4 strictly ascending positive times and strictly positive
    errors; points sitting at the numerical floor must be dropped by the
    caller first (see drop_floor), since log of roundoff noise flattens any
    fit.
    """
    ts = np.asarray(t_grid, dtype=float).reshape(-1)
    es = np.asarray(errors, dtype=float).reshape(-1)
    if ts.size != es.size:
        raise ValueError(f"grid and errors differ in length: {ts.size} vs {es.size}")
    if ts.size < 4:
        raise ValueError(f"need at least 4 points for an order fit, got {ts.size}")
    if np.any(ts <= 0) or np.any(np.diff(ts) <= 0):
        raise ValueError("times must be positive and strictly ascending")
    if np.any(es <= 0):
        raise ValueError("errors must be strictly positive; filter floor points first")
    slope, _ = np.polyfit(np.log(ts), np.log(es), 1)
    return float(slope)


def drop_floor(t_grid, errors, floor: float = ERROR_FLOOR):
    """Keep only the points whose error rises above the given floor."""
    ts = np.asarray(t_grid, dtype=float).reshape(-1)
    es = np.asarray(errors, dtype=float).reshape(-1)
    keep = es > floor
    return ts[keep], es[keep]


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def emit(rows, format: str, path) -> None:
    """Write rows as CSV or JSON; floats carry 12 significant digits.

    A degenerate row keeps its time, algorithm and success probability but
    leaves populations and fidelity empty (CSV) or null (JSON).
    """
    if format == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER.split(","))
            for r in rows:
                writer.writerow([
                    _fmt(r.t), r.algo, _fmt(r.p00), _fmt(r.p01), _fmt(r.p10),
                    _fmt(r.p11), _fmt(r.success_prob),
                    "" if np.isnan(r.state_error) else _fmt(r.state_error),
                    _fmt(r.fidelity),
                ])
        return
    if format == "json":
        payload = []
        for r in rows:
            payload.append({
                "t": r.t, "algo": r.algo, "p00": r.p00, "p01": r.p01,
                "p10": r.p10, "p11": r.p11, "success_prob": r.success_prob,
                "state_error": None if np.isnan(r.state_error) else r.state_error,
                "fidelity": r.fidelity,
            })
        Path(path).write_text(json.dumps(payload, indent=2) + "\n")
        return
    raise ValueError(f"format must be csv or json, got {format!r}")
