"""
The weighted Levin-Steckin gap for operator convex functions
============================================================

For a weight p symmetric about 1/2 and phi(t) = f((1-t)A + tB), the gap
int p * int phi - int p phi is positive semidefinite when f is operator
convex and p is non-decreasing on [0, 1/2]. It is also bounded above by a
multiple of the Jensen gap of f at A and B. Concave f and non-increasing p
flip the sign, and the checkers orient the gap so it is always >= 0.
"""

import numpy as np

from opineq import InstanceSpec, bump, check_hermite_hadamard, check_ls_operator, inverse, log, random_pair, square, vee

A, B = np.diag([1.0, 3.0]), np.diag([2.0, 2.0])
r = check_ls_operator(square(), bump(), A, B)
print("gap  ", np.diag(r.gap.array), "expected 1/180 =", 1 / 180)
print("bound", np.diag(r.bound.array), "expected 1/64  =", 1 / 64)
print("coefficient", r.coefficient, "passed", r.passed, "tightness", round(r.tightness, 4))

hh = check_hermite_hadamard(square(), A, B)
print("Hermite-Hadamard margins:", hh.lower_verdict.min_eig_of_difference, hh.upper_verdict.min_eig_of_difference)

A, B = random_pair(InstanceSpec(dim=6, interval=(0.5, 4.0), seed=3))
for f, p in ((inverse(), bump()), (inverse(), vee()), (log(), bump()), (log(), vee())):
    r = check_ls_operator(f, p, A, B)
    print(f"{str(f):9} {str(p):5} {r.orientation:24} passed={r.passed} margin={r.margin:+.2e}")
