"""Directional (Gateaux) derivatives of catalogue matrix functions.

Three independent routes are provided: Daleckii-Krein divided differences in
the eigenbasis, a central difference quotient, and for the logarithm the
resolvent integral over [0, inf).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .funcs import OPERATOR_CONVEX, classify, log
from .matcore import (
    SymMatrix,
    apply_fn,
    as_sym,
    eigh_batch,
    loewner_leq,
    segment_stack,
    spectral_norm,
)
from .quad import SemiInfiniteRule, integrate_values, semi_infinite

CONFLUENCE_REL = 1e-7
DEFAULT_GRID = tuple(np.round(np.linspace(0.1, 0.9, 9), 12))


@dataclass(frozen=True, eq=False)
class DirectionalDerivative:
    value: SymMatrix
    method: str
    base_point: SymMatrix
    direction: SymMatrix


def divided_differences(f, lam):
    """First divided differences ``f[lam_i, lam_j]`` for each row of ``lam``.

    Near-equal eigenvalues (gap at most ``1e-7 * (1 + max |lam|)``) use
    ``f'`` at their midpoint.
    """
    lam = np.atleast_2d(lam)
    li = lam[:, :, None]
    lj = lam[:, None, :]
    diff = li - lj
    scale = CONFLUENCE_REL * (1.0 + np.max(np.abs(lam), axis=1))[:, None, None]
    close = np.abs(diff) <= scale
    fl = f(lam)
    quotient = (fl[:, :, None] - fl[:, None, :]) / np.where(close, 1.0, diff)
    return np.where(close, f.derivative(0.5 * (li + lj)), quotient)


def daleckii_krein_batch(f, lam, Q, S):
    """``Q (f[lam_i, lam_j] * (Q^T S Q)) Q^T`` for stacks ``lam (N, n)``, ``Q (N, n, n)``.

    ``S`` is a single direction ``(n, n)`` or one per matrix ``(N, n, n)``.
    """
    Qt = np.swapaxes(Q, 1, 2)
    inner = divided_differences(f, lam) * (Qt @ S @ Q)
    out = Q @ inner @ Qt
    return 0.5 * (out + np.swapaxes(out, 1, 2))


def _pair(T, S):
    T, S = as_sym(T), as_sym(S)
    if T.dim != S.dim:
        raise DimensionMismatch(f"dimensions {T.dim} and {S.dim} differ")
    return T, S


def gateaux(f, T, S):
    """Derivative of ``X -> f(X)`` at ``T`` along ``S`` (Daleckii-Krein)."""
    T, S = _pair(T, S)
    lam, Q = eigh_batch(T.array[None])
    f.check_spectrum(lam)
    value = daleckii_krein_batch(f, lam, Q, S.array)[0]
    return DirectionalDerivative(SymMatrix(value), "daleckii_krein", T, S)


def gateaux_fd_oracle(f, T, S, step=None):
    """Central difference ``(f(T + hS) - f(T - hS)) / 2h``.

    Default ``h = 1e-5 (1 + ||T||_2) / (1 + ||S||_2)``. Exact for ``square``.
    """
    T, S = _pair(T, S)
    if step is None:
        step = 1e-5 * (1.0 + spectral_norm(T)) / (1.0 + spectral_norm(S))
    hS = step * S.array
    plus = apply_fn(f, T.array + hS)
    minus = apply_fn(f, T.array - hS)
    return SymMatrix((plus.array - minus.array) / (2.0 * step))


def gateaux_log_integral(T, S, rule=None):
    """``int_0^inf (sI + T)^{-1} S (sI + T)^{-1} ds`` by mapped quadrature.

    Resolvents come from a direct LU-based inverse, not from the eigensolver,
    so this route shares nothing with ``gateaux``.
    """
    T, S = _pair(T, S)
    if rule is None:
        rule = semi_infinite()
    elif not isinstance(rule, SemiInfiniteRule):
        rule = SemiInfiniteRule(rule)
    lam_min = np.min(eigh_batch(T.array[None], want_vectors=False)[0])
    log().check_spectrum([lam_min])
    n = T.dim
    shifted = rule.nodes[:, None, None] * np.eye(n) + T.array
    R = np.linalg.inv(shifted)
    vals = R @ S.array @ R
    return SymMatrix(integrate_values(0.5 * (vals + np.swapaxes(vals, 1, 2)), rule.weights))


def derivatives_along_segment(f, A, B, ts, lam=None, Q=None):
    """``grad f`` at ``(1 - t) A + t B`` along ``B - A`` for every ``t`` in ``ts``.

    Returns an ``(N, n, n)`` array. The segment's eigendecomposition can be
    passed in when the caller already has it.
    """
    A, B = _pair(A, B)
    if lam is None or Q is None:
        lam, Q = eigh_batch(segment_stack(A, B, ts))
    f.check_spectrum(lam)
    return daleckii_krein_batch(f, lam, Q, B.array - A.array)


def check_segment_monotonicity(f, A, B, grid=DEFAULT_GRID, tol_scale=None):
    """Loewner verdicts that the derivative along ``[A, B]`` increases with t.

    Order of the returned list: endpoint ``A`` against the first grid point,
    each consecutive grid pair, then the last grid point against endpoint
    ``B``. Requires ``f`` operator convex.
    """
    A, B = _pair(A, B)
    if classify(f) != OPERATOR_CONVEX:
        raise ValueError(f"{f} is not operator convex")
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0) or grid[0] <= 0.0 or grid[-1] >= 1.0:
        raise ValueError("grid must be strictly ascending inside (0, 1)")
    ts = np.concatenate([[0.0], grid, [1.0]])
    D = derivatives_along_segment(f, A, B, ts)
    return [loewner_leq(D[i], D[i + 1], tol_scale) for i in range(len(ts) - 1)]
