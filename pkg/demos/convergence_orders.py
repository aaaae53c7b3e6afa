#!/usr/bin/env python3
"""Measure convergence orders of the product formulas on the two-spin model.

A k-term combination should scale like t^(2k+1); the slope of log(error)
against log(t) makes that visible directly. Points below double-precision
roundoff are dropped before fitting -- with enough cancellation the error
simply disappears into the floor, which is a feature of the method, not a
fit problem.
"""
import numpy as np

from mptrotter import (
    build_spin_hamiltonian,
    drop_floor,
    error_report,
    fit_order,
    make_schedule,
    mp_operator,
    total,
    trotterize,
)

decomp = build_spin_hamiltonian()
psi0 = np.array([np.sqrt(0.3), np.sqrt(0.7), 0.0, 0.0])

# each term count gets the window where its error is clean of the floor
windows = {1: (0.05, 0.4), 2: (0.05, 0.4), 3: (0.3, 1.2), 4: (1.0, 3.0)}

print("multi-product state-error orders (theory: 2k + 1)")
for k, (lo, hi) in windows.items():
    sched = make_schedule("modified", a=1, k=k)
    ts = np.geomspace(lo, hi, 13)
    errs = [error_report(decomp, t, mp_operator(decomp, t, sched), psi0).state_error
            for t in ts]
    kept_t, kept_e = drop_floor(ts, errs)
    slope = fit_order(kept_t, kept_e)
    print(f"  k = {k}  L = {sched.iterations}  window [{lo}, {hi}]"
          f"  slope = {slope:.3f}  ({len(kept_t)}/{len(ts)} points used)")

print()
print("plain second-order product, error vs iteration count at t = 10")
h = total(decomp)
ls = [12, 24, 48, 96]
errs = [error_report(decomp, 10.0, trotterize(decomp, 10.0, l), psi0).state_error
        for l in ls]
print(f"  slope = {fit_order(ls, errs):.3f}  (theory -2)")
