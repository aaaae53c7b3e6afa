#!/usr/bin/env python3
# How the combination coefficients of geometric schedules behave as the
# term count grows: their absolute mass settles just below 2, which pins
# the post-selection probability near 1/4 -- the sweet spot where a single
# amplification round nearly saturates.
from mptrotter import make_schedule, predicted_probability

print(" k  schedule                 sum|c|    P = 1/(sum|c|)^2   one round")
for k in range(1, 9):
    s = make_schedule("modified", a=1, k=k)
    mass = s.abs_coefficient_sum()
    p = s.ideal_success_probability()
    amp = predicted_probability(p, 1)
    its = ",".join(str(l) for l in s.iterations)
    print(f"{k:2d}  {its:<24} {mass:.6f}   {p:.6f}           {amp:.6f}")

print()
print("coefficients for k = 4, a = 2 (the workhorse schedule):")
s = make_schedule("modified", a=2, k=4)
for l, c in zip(s.iterations, s.coefficients):
    print(f"  L = {l:3d}   c = {c:+.12f}")
print(f"  sum c   = {sum(s.coefficients):+.12f}  (always exactly 1)")
print(f"  sum |c| = {s.abs_coefficient_sum():.12f}")
