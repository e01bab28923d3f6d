"""
Composite Gauss-Legendre on [0, 1]
==================================

The default rule is 16 points on each of 32 panels. Nodes are mirror
symmetric, so reversing a stack of values sampled at the nodes evaluates the
integrand at 1 - t.
"""

import numpy as np

from opineq import gauss_legendre, integrate_matrix, integrate_scalar, integrate_semi_infinite_matrix
from opineq.matcore import segment_point

rule = gauss_legendre()
print(len(rule), "nodes, weight sum - 1 =", rule.weights.sum() - 1.0)
print("mirror symmetry:", np.max(np.abs(rule.nodes + rule.nodes[::-1] - 1.0)))

for k in (1, 5, 31):
    print(f"int t^{k} = {integrate_scalar(lambda t: t**k, rule):.17g} vs {1 / (k + 1):.17g}")

A, B = np.diag([1.0, 3.0]), np.diag([2.0, 2.0])
sq = lambda t: segment_point(A, B, t).array @ segment_point(A, B, t).array
print("int ((1-t)A + tB)^2 =\n", integrate_matrix(sq, rule).array, "\nexpected diag(7/3, 19/3)")

# doubling the panels barely moves a smooth integral
g = lambda t: np.log(segment_point(A, B, t).array.diagonal())
q1 = integrate_matrix(lambda t: np.diag(g(t)), rule).array
q2 = integrate_matrix(lambda t: np.diag(g(t)), rule.refined()).array
print("panel doubling change", np.max(np.abs(q1 - q2)))

# integrals over [0, inf) use the substitution s = u / (1 - u)
T = np.diag([1.0, 2.0])
res = lambda s: np.linalg.inv(s * np.eye(2) + T) @ np.linalg.inv(s * np.eye(2) + T)
print("int (s + T)^-2 ds =", np.diag(integrate_semi_infinite_matrix(res).array), "expected [1, 0.5]")
