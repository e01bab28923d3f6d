"""
Reverse inequalities and the example suite
==========================================

The upper bounds on the gap come in several flavours: a Jensen-gap bound
scaled by sup |p'|, bounds through the derivative of f at the endpoints, and
an L2 bound through the derivative along the whole segment. The suite runs
them for powers, the inverse and the logarithm.
"""

import numpy as np

from opineq import InstanceSpec, random_pair, run_example_suite, tabulated

A, B = random_pair(InstanceSpec(dim=4, interval=(0.5, 4.0), seed=7))
for r in run_example_suite(A, B):
    t = "-" if r.tightness is None else f"{r.tightness:.3f}"
    print(f"{r.theorem_id:34} {'PASS' if r.passed else 'FAIL'}  coef={r.coefficient:.6g}  tightness={t}")

# any symmetric weight that is monotone on each half works, e.g. a tent table
ts = np.linspace(0, 1, 5)
tent = tabulated(ts, np.minimum(ts, 1 - ts), label="tent")
print()
for r in run_example_suite(A, B, p=tent)[:4]:
    print(f"{r.theorem_id:34} {'PASS' if r.passed else 'FAIL'}  coef={r.coefficient:.6g}")
