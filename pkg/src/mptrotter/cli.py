"""Command-line front end.

Subcommands:
    coeffs   - print a schedule's combination coefficients and what they imply
               for the post-selection probability
    evolve   - one (time, algorithm) cell of a sweep, human-readable
    sweep    - full sweep to CSV or JSON
    scaling  - fitted convergence order of the multi-product state error

All domain rejections exit nonzero after a single diagnostic line on stderr.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .experiments import (
    ERROR_FLOOR,
    SweepConfig,
    drop_floor,
    emit,
    fit_order,
    load_config,
    parse_algorithm,
    parse_schedule_spec,
    run_sweep,
)
from .hamiltonian import build_spin_hamiltonian, total
from .lcu import predicted_probability
from .linalg import hermitian_propagator
from .multiproduct import make_schedule, mp_operator


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mptrotter",
        description="Multi-product Trotter simulation experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="combination coefficients of a schedule")
    p.add_argument("--schedule", required=True,
                   help="modified:a,k | original:gamma,k | comma-separated list")

    p = sub.add_parser("evolve", help="evolve the configured state at one time")
    p.add_argument("--config", default=None, help="JSON config file (optional)")
    p.add_argument("--algo", required=True,
                   help="exact | trotter:<l> | mp:<schedule> | mp_oaa:<schedule>[:<rounds>]")
    p.add_argument("--t", required=True, type=float, help="evolution time")

    p = sub.add_parser("sweep", help="run the full time sweep")
    p.add_argument("--config", default=None, help="JSON config file (optional)")
    p.add_argument("--out", default=None, help="output path (overrides config)")
    p.add_argument("--format", default=None, choices=("csv", "json"),
                   help="output format (overrides config)")

    p = sub.add_parser("scaling", help="fit the state-error convergence order")
    p.add_argument("--config", default=None, help="JSON config file (optional)")
    p.add_argument("--k", required=True, type=int, help="number of product terms")
    p.add_argument("--tmin", type=float, default=0.05)
    p.add_argument("--tmax", type=float, default=0.4)
    p.add_argument("--points", type=int, default=13)
    p.add_argument("--floor", type=float, default=ERROR_FLOOR,
                   help="drop errors at or below this before fitting")
    return parser


def _config(path: str | None) -> SweepConfig:
    return load_config(path) if path else SweepConfig()


def _cmd_coeffs(args) -> int:
    sched = parse_schedule_spec(args.schedule)
    label = sched.kind if sched.param is None else f"{sched.kind}({sched.param:g})"
    print(f"schedule: kind={label}  L = {', '.join(str(l) for l in sched.iterations)}")
    print(" q  L(q)             c_q")
    for q, (l, c) in enumerate(zip(sched.iterations, sched.coefficients), start=1):
        print(f"{q:2d}  {l:4d}  {c: .12e}")
    prob = sched.ideal_success_probability()
    print(f"sum c_q = {sum(sched.coefficients):.12g}")
    print(f"sum |c_q| = {sched.abs_coefficient_sum():.12g}")
    print(f"success probability 1/(sum|c_q|)^2 = {prob:.12g}")
    print(f"one-round amplified probability = {predicted_probability(prob, 1):.12g}")
    return 0


def _cmd_evolve(args) -> int:
    config = _config(args.config)
    parse_algorithm(args.algo, config.oaa_rounds)  # fail fast on a bad spec
    one = SweepConfig(model=config.model, initial_state=config.initial_state,
                      t_grid=(args.t,), algorithms=(args.algo,),
                      oaa_rounds=config.oaa_rounds)
    row = run_sweep(one)[0]
    print(f"t = {row.t:.12g}  algo = {row.algo}")
    if row.degenerate:
        print(f"success_prob = {row.success_prob:.12g}")
        print("degenerate post-selection: populations undefined")
        return 0
    for name in ("p00", "p01", "p10", "p11"):
        print(f"{name} = {getattr(row, name):.12g}")
    print(f"success_prob = {row.success_prob:.12g}")
    print(f"state_error = {row.state_error:.12g}")
    print(f"fidelity = {row.fidelity:.12g}")
    return 0


def _cmd_sweep(args) -> int:
    config = _config(args.config)
    out = args.out or config.output_path
    if not out:
        raise ValueError("no output path: pass --out or set 'output' in the config")
    fmt = args.format or config.format
    rows = run_sweep(config)
    emit(rows, fmt, out)
    print(f"wrote {len(rows)} rows to {out} ({fmt})")
    return 0


def _cmd_scaling(args) -> int:
    config = _config(args.config)
    if args.points < 4:
        raise ValueError(f"need at least 4 points, got {args.points}")
    if not (0 < args.tmin < args.tmax):
        raise ValueError(f"need 0 < tmin < tmax, got {args.tmin}, {args.tmax}")
    sched = make_schedule("modified", a=1, k=args.k)
    decomp = build_spin_hamiltonian(config.model)
    h = total(decomp)
    psi0 = np.asarray(config.initial_state, dtype=complex)
    psi0 = psi0 / np.linalg.norm(psi0)
    ts = np.geomspace(args.tmin, args.tmax, args.points)
    errs = []
    for t in ts:
        target = hermitian_propagator(h, t) @ psi0
        out = mp_operator(decomp, t, sched) @ psi0
        out = out / np.linalg.norm(out)
        errs.append(float(np.linalg.norm(target - out)))
    kept_t, kept_e = drop_floor(ts, errs, args.floor)
    print(f"schedule L = {sched.iterations}, {len(kept_t)}/{len(ts)} points above "
          f"floor {args.floor:g}")
    if len(kept_t) < 4:
        raise ValueError(
            "fewer than 4 points above the numerical floor; the error is too small "
            "to measure in double precision on this window, widen [tmin, tmax]"
        )
    slope = fit_order(kept_t, kept_e)
    print(f"fitted order = {slope:.6g}")
    return 0


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "evolve": _cmd_evolve,
    "sweep": _cmd_sweep,
    "scaling": _cmd_scaling,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
