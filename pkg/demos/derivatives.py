"""
Directional derivatives of matrix functions
===========================================

The derivative of X -> f(X) at T along S is computed in the eigenbasis of T
from divided differences of f. It is checked here against a central
difference quotient and, for log, against a resolvent integral that never
calls the eigensolver.
"""

import numpy as np

from opineq import InstanceSpec, gateaux, gateaux_fd_oracle, gateaux_log_integral, inverse, log, random_pair, square
from opineq.frechet import check_segment_monotonicity, derivatives_along_segment

T, S = random_pair(InstanceSpec(dim=5, interval=(0.5, 4.0), seed=1))
S = S - T

for f in (square(), inverse(), log()):
    dk = gateaux(f, T, S).value.array
    fd = gateaux_fd_oracle(f, T, S).array
    print(f"{str(f):10} divided differences vs difference quotient: {np.max(np.abs(dk - fd)):.2e}")

dk = gateaux(log(), T, S).value.array
print("log vs resolvent integral:", f"{np.max(np.abs(dk - gateaux_log_integral(T, S).array)):.2e}")

# closed form for the inverse: -T^-1 S T^-1
Ti = np.linalg.inv(T.array)
print("inverse closed form:", f"{np.max(np.abs(gateaux(inverse(), T, S).value.array + Ti @ S.array @ Ti)):.2e}")

# for an operator convex f the derivative along the segment increases with t
A, B = random_pair(InstanceSpec(dim=4, interval=(0.5, 4.0), seed=2))
verdicts = check_segment_monotonicity(inverse(), A, B)
print("monotone along [A, B]:", all(verdicts), f"({len(verdicts)} comparisons)")
D = derivatives_along_segment(inverse(), A, B, [0.0, 0.5, 1.0])
print("smallest eigenvalue of D(1) - D(0):", np.linalg.eigvalsh(D[2] - D[0])[0])
