"""End-to-end acceptance checks.

Each test prints exactly one "criterion N PASS/FAIL: ..." line on the live
terminal (bypassing capture) and then asserts. Two criteria fail by design
and are left failing rather than loosened:

  criterion 1: the one-round amplified probability of the k = 7 geometric
      schedule is 0.999250, outside the stated 0.9996 +/- 0.0002 band; the
      band matches the amplitude sin(3 arcsin sqrt p) = 0.999625, not the
      probability sin^2.
  criterion 3: the k = 4 multi-product state error on t in [0.05, 0.4] sits
      entirely below double-precision roundoff (extended-precision truth is
      under 1e-15), so no order >= 8 can be measured on that window.
"""
import re

import numpy as np
import pytest

from mptrotter import (
    SweepConfig,
    apply_lcu,
    apply_oaa,
    build_lcu,
    build_spin_hamiltonian,
    drop_floor,
    emit,
    fit_order,
    hermitian_propagator,
    make_schedule,
    mp_coefficients,
    oaa_iterate,
    optimal_split,
    predicted_probability,
    run_sweep,
    spectral_norm,
    total,
    trotterize,
)
from mptrotter.cli import main
from mptrotter.experiments import ERROR_FLOOR
from mptrotter.lcu import _ancilla_projector
from tests.conftest import haar_unitary, random_state

PSI0 = np.array([np.sqrt(0.3), np.sqrt(0.7), 0.0, 0.0], dtype=complex)


def report(capsys, n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {detail}"
    with capsys.disabled():
        print(f"\n{line}")
    if not ok:
        pytest.fail(line, pytrace=False)


def grab(pattern: str, text: str) -> float:
    m = re.search(pattern, text)
    assert m, f"{pattern!r} not found in:\n{text}"
    return float(m.group(1))


def state_errors(schedule, ts):
    """Renormalized multi-product state error against exact evolution."""
    decomp = build_spin_hamiltonian()
    h = total(decomp)
    errs = []
    for t in ts:
        target = hermitian_propagator(h, t) @ PSI0
        acc = np.zeros(4, dtype=complex)
        for c, l in zip(schedule.coefficients, schedule.iterations):
            acc = acc + c * (trotterize(decomp, t, l) @ PSI0)
        errs.append(float(np.linalg.norm(target - acc / np.linalg.norm(acc))))
    return errs


def test_criterion_01(capsys):
    # k = 7 geometric schedule through the coeffs command
    code = main(["coeffs", "--schedule", "modified:1,7"])
    out = capsys.readouterr().out
    assert code == 0
    num = r"([-+0-9.eE]+)"
    mass = grab(rf"sum \|c_q\| = {num}", out)
    prob = grab(rf"success probability 1/\(sum\|c_q\|\)\^2 = {num}", out)
    amplified = grab(rf"one-round amplified probability = {num}", out)
    ok_mass = abs(mass - 1.969) <= 0.001
    ok_prob = abs(prob - 0.2579) <= 0.0005
    ok_amp = abs(amplified - 0.9996) <= 0.0002
    detail = (
        f"sum|c| = {mass:.6f} (1.969 +/- 0.001 {'ok' if ok_mass else 'MISS'}), "
        f"p = {prob:.6f} (0.2579 +/- 0.0005 {'ok' if ok_prob else 'MISS'}), "
        f"one-round probability = {amplified:.6f} (0.9996 +/- 0.0002 "
        f"{'ok' if ok_amp else 'MISS'})"
    )
    if not ok_amp:
        amp_sin = np.sin(3.0 * np.arcsin(np.sqrt(prob)))
        detail += (
            f"; sin^2(3 arcsin sqrt p) cannot reach that band for any in-band p, "
            f"while the amplitude sin(3 arcsin sqrt p) = {amp_sin:.6f} does land "
            f"in it, so the band describes the amplitude, not the probability"
        )
    report(capsys, 1, ok_mass and ok_prob and ok_amp, detail)


def test_criterion_02(capsys):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        k = int(rng.integers(1, 11))
        start = int(rng.integers(1, 5))
        its = [start]
        for _ in range(k - 1):
            its.append(max(its[-1] + 1, int(round(its[-1] * rng.uniform(1.6, 3.0)))))
        worst = max(worst, abs(float(mp_coefficients(its).sum()) - 1.0))
    ok = worst <= 1e-9
    report(capsys, 2, ok,
           f"coefficient sums of 100 random increasing schedules (k <= 10) stay "
           f"at 1 within {worst:.3e} (tolerance 1e-9)")


def test_criterion_03(capsys):
    ts = np.geomspace(0.05, 0.4, 13)
    results = []
    ok = True

    for k, lo, hi in ((1, 2.7, 3.3), (2, 4.5, 5.5)):
        sched = make_schedule("modified", a=1, k=k)
        kept_t, kept_e = drop_floor(ts, state_errors(sched, ts))
        slope = fit_order(kept_t, kept_e)
        good = lo <= slope <= hi
        ok = ok and good
        results.append(f"k={k} slope {slope:.3f} ({'ok' if good else 'MISS'})")

    sched4 = make_schedule("modified", a=1, k=4)
    kept_t4, kept_e4 = drop_floor(ts, state_errors(sched4, ts))
    if len(kept_t4) >= 4:
        slope4 = fit_order(kept_t4, kept_e4)
        good4 = slope4 >= 8.0
        results.append(f"k=4 slope {slope4:.3f} ({'ok' if good4 else 'MISS'})")
    else:
        good4 = False
        results.append(
            f"k=4 has {len(kept_t4)}/{len(ts)} errors above the {ERROR_FLOOR:g} "
            f"roundoff floor on [0.05, 0.4], so the order (theory 9) is "
            f"unmeasurable in double precision there; the same schedule fits "
            f"order 9.0 once t reaches [1, 3]"
        )
    ok = ok and good4

    decomp = build_spin_hamiltonian()
    target = hermitian_propagator(total(decomp), 10.0) @ PSI0
    ls = [12, 24, 48, 96]
    errs = []
    for l in ls:
        out = trotterize(decomp, 10.0, l) @ PSI0
        errs.append(float(np.linalg.norm(target - out / np.linalg.norm(out))))
    tslope = fit_order(ls, errs)
    tgood = abs(tslope + 2.0) <= 0.2
    ok = ok and tgood
    results.append(f"trotter slope {tslope:.3f} ({'ok' if tgood else 'MISS'})")

    report(capsys, 3, ok, "; ".join(results))


def test_criterion_04(capsys):
    ts = tuple(float(t) for t in range(5, 31))
    cfg = SweepConfig(t_grid=ts,
                      algorithms=("trotter:96", "mp:1,2,3,96", "mp:modified:2,4"))
    rows = run_sweep(cfg)
    errs = {}
    for r in rows:
        errs.setdefault(r.algo, []).append(r.state_error)
    bad = [t for i, t in enumerate(ts)
           if not (errs["mp:modified:2,4"][i] < errs["trotter:96"][i]
                   and errs["mp:modified:2,4"][i] < errs["mp:1,2,3,96"][i])]
    ok = not bad
    if ok:
        margin = min(min(errs["trotter:96"][i], errs["mp:1,2,3,96"][i])
                     / errs["mp:modified:2,4"][i] for i in range(len(ts)))
        detail = (f"modified {{4,8,16,32}} has the strictly smallest state error "
                  f"at all integer t in [5, 30] (worst-case margin {margin:.1f}x "
                  f"over trotter l=96 and original {{1,2,3,96}})")
    else:
        detail = f"ordering violated at t = {bad}"
    report(capsys, 4, ok, detail)


def test_criterion_05(capsys):
    rng = np.random.default_rng(505)
    worst_state = 0.0
    worst_prob = 0.0
    for _ in range(100):
        k = int(rng.integers(1, 9))
        c = rng.uniform(-1.0, 1.5, size=k)
        if np.max(np.abs(c)) < 1e-3:
            c[0] = 1.0
        d = int(rng.integers(2, 6))
        ops = [haar_unitary(d, rng) for _ in range(k)]
        psi = random_state(d, rng)
        out = apply_lcu(build_lcu(c, ops), psi)
        direct = sum(ci * (a @ psi) for ci, a in zip(c, ops)) / np.sum(np.abs(c))
        worst_state = max(worst_state,
                          float(np.linalg.norm(out.projected_state - direct)))
        worst_prob = max(worst_prob, abs(out.success_probability
                                         - float(np.linalg.norm(direct)) ** 2))
    ok = worst_state <= 1e-10 and worst_prob <= 1e-12
    report(capsys, 5, ok,
           f"100 random circuits (k <= 8): projected state matches the direct "
           f"combination within {worst_state:.3e} (tol 1e-10), probability within "
           f"{worst_prob:.3e} (tol 1e-12)")


def test_criterion_06(capsys):
    rng = np.random.default_rng(606)
    u = haar_unitary(4, rng)
    psi = random_state(4, rng)
    worst = 0.0
    for p in (0.05, 0.1, 0.25, 0.4):
        w = (1.0 / np.sqrt(p) - 1.0) / 2.0
        circ = build_lcu([1.0 + w, -w], [u, u])
        for n in range(4):
            got = apply_oaa(circ, psi, n).success_probability
            worst = max(worst, abs(got - predicted_probability(p, n)))
    quarter = apply_oaa(build_lcu([1.5, -0.5], [u, u]), psi, 1).success_probability
    ok = worst <= 1e-9 and abs(quarter - 1.0) <= 1e-9
    report(capsys, 6, ok,
           f"amplification follows sin^2((2N+1) arcsin sqrt P) within "
           f"{worst:.3e} for P in {{0.05, 0.1, 0.25, 0.4}}, N in 0..3; "
           f"P=0.25 N=1 gives {quarter:.12f}")


def test_criterion_07(capsys):
    # One amplification round restricted to the ancilla-|0> subspace acts as
    # the cubic 3 PWP - 4 (PWP)(PWP)^dag(PWP); the projected comparison is the
    # form that holds exactly (an unprojected right-hand side keeps weight
    # outside the kept subspace and differs at order 1 even for W = I).
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(50):
        k = int(rng.integers(1, 7))
        c = rng.uniform(-1.0, 1.5, size=k)
        if np.max(np.abs(c)) < 1e-3:
            c[0] = 1.0
        d = int(rng.integers(2, 5))
        circ = build_lcu(c, [haar_unitary(d, rng) for _ in range(k)])
        proj = _ancilla_projector(circ)
        pwp = proj @ circ.w @ proj
        lhs = proj @ (oaa_iterate(circ) @ circ.w) @ proj
        rhs = 3.0 * pwp - 4.0 * pwp @ pwp.conj().T @ pwp
        worst = max(worst, spectral_norm(lhs - rhs))
    ok = worst <= 1e-10
    report(capsys, 7, ok,
           f"50 random circuits: projected one-round identity holds within "
           f"{worst:.3e} (tol 1e-10)")


def test_criterion_08(capsys):
    rng = np.random.default_rng(808)
    violations = 0
    worst_excess = -np.inf
    for _ in range(50):
        k = int(rng.integers(2, 7))
        c = rng.uniform(-1.0, 1.5, size=k)
        if np.max(np.abs(c)) < 1e-3:
            c[0] = 1.0
        d = int(rng.integers(2, 5))
        ops = [haar_unitary(d, rng) for _ in range(k)]
        psi = random_state(d, rng)
        best = apply_lcu(build_lcu(c, ops), psi).success_probability
        for _ in range(200):
            r = rng.dirichlet(np.ones(k))
            if np.min(r) < 1e-6:
                r = (r + 1e-4) / (1.0 + k * 1e-4)
            phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=k))
            m = np.sqrt(r) * phases
            z = np.sqrt(np.sum(np.abs(c) ** 2 / r))
            m_prime = c / (z * m)
            got = apply_lcu(build_lcu(c, ops, split=(m, m_prime)),
                            psi).success_probability
            excess = got - best
            worst_excess = max(worst_excess, excess)
            if excess > 1e-12:
                violations += 1
    ok = violations == 0
    report(capsys, 8, ok,
           f"50 circuits x 200 random feasible splits: no split beats the "
           f"optimal one (largest excess {worst_excess:.3e})")


def test_criterion_09(capsys):
    rows = [r for r in run_sweep(SweepConfig()) if 0.0 < r.t <= 30.0]
    mp = [r for r in rows if r.algo == "mp:modified:2,4"]
    oaa = [r for r in rows if r.algo == "mp_oaa:modified:2,4:1"]
    assert len(mp) == 30 and len(oaa) == 30
    mp_lo = min(r.success_prob for r in mp)
    mp_hi = max(r.success_prob for r in mp)
    oaa_lo = min(r.success_prob for r in oaa)
    fid_lo = min(min(r.fidelity for r in mp), min(r.fidelity for r in oaa))
    ok = 0.25 <= mp_lo and mp_hi <= 0.27 and oaa_lo >= 0.995 and fid_lo >= 0.996
    report(capsys, 9, ok,
           f"t in (0, 30]: plain success probability in [{mp_lo:.6f}, {mp_hi:.6f}] "
           f"(band [0.25, 0.27]), amplified minimum {oaa_lo:.6f} (>= 0.995), "
           f"classical fidelity minimum {fid_lo:.8f} (>= 0.996)")


def test_criterion_10(capsys, tmp_path):
    a = tmp_path / "run1.csv"
    b = tmp_path / "run2.csv"
    emit(run_sweep(SweepConfig()), "csv", a)
    emit(run_sweep(SweepConfig()), "csv", b)
    same = a.read_bytes() == b.read_bytes()
    report(capsys, 10, same,
           f"two full sweeps wrote byte-identical CSV "
           f"({len(a.read_bytes())} bytes each)")
