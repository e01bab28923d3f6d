"""
Matrix functions and the Loewner order
======================================

Symmetric matrices are diagonalized with a batched Jacobi solver and
functions are applied to the eigenvalues. Comparing two matrices means
looking at the smallest eigenvalue of their difference.
"""

import numpy as np

from opineq import SymMatrix, apply_fn, eigh, inverse, log, loewner_leq, power, square

A = SymMatrix([[2.0, 1.0], [1.0, 3.0]])
dec = eigh(A)
print("eigenvalues", dec.eigenvalues)
print("reconstruction error", np.max(np.abs(dec.reconstruct() - A.array)))

# inverse through the spectrum agrees with the adjugate formula
adj = np.array([[3.0, -1.0], [-1.0, 2.0]]) / 5.0
print("inverse error", np.max(np.abs(apply_fn(inverse(), A).array - adj)))

# log(A) is the inverse of exp(A)
L = apply_fn(log(), A)
w, V = np.linalg.eigh(L.array)
print("exp(log A) error", np.max(np.abs((V * np.exp(w)) @ V.T - A.array)))

# t^2 is operator convex: f(mid) <= mean of f at the endpoints
B = SymMatrix([[1.0, -0.5], [-0.5, 4.0]])
mid = apply_fn(square(), 0.5 * (A + B))
avg = 0.5 * (apply_fn(square(), A) + apply_fn(square(), B))
print("t^2 midpoint convexity:", loewner_leq(mid, avg).holds)

# t^3 is convex on the reals but not operator convex; this pair shows it
A3 = np.array([[2.098, 0.386], [0.386, 0.391]])
B3 = np.array([[5.455, 3.057], [3.057, 2.09]])
mid = apply_fn(power(3), 0.5 * (A3 + B3))
avg = 0.5 * (apply_fn(power(3), A3) + apply_fn(power(3), B3))
v = loewner_leq(mid, avg)
print(f"t^3 midpoint convexity: {v.holds} (min eigenvalue {v.min_eig_of_difference:.4f})")
