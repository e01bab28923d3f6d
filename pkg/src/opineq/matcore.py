"""Dense real symmetric matrices, a cyclic Jacobi eigensolver, spectral
functional calculus and Loewner-order comparison."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import AsymmetricInput, DimensionMismatch, EigenConvergenceError

DEFAULT_TOL_SCALE = 1e-9
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
# inputs further than this from symmetric are rejected instead of symmetrized
ASYMMETRY_REJECT = 1e-8


def default_tol_scale():
    """PSD tolerance scale; ``OPINEQ_TOL`` in the environment overrides it."""
    env = os.environ.get("OPINEQ_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL_SCALE


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Immutable dense real symmetric matrix.

    The input is symmetrized as ``(M + M.T) / 2``; the discarded antisymmetric
    part is kept in ``asymmetry`` (max-norm).
    """

    array: np.ndarray
    asymmetry: float = field(default=0.0, init=False)

    def __post_init__(self):
        a = np.array(self.array, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        resid = float(np.max(np.abs(a - a.T))) if a.size else 0.0
        scale = 1.0 + (float(np.max(np.abs(a))) if a.size else 0.0)
        if resid > ASYMMETRY_REJECT * scale:
            raise AsymmetricInput(f"asymmetry {resid:.3e} too large to symmetrize")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        object.__setattr__(self, "array", a)
        object.__setattr__(self, "asymmetry", resid)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((n, n)))

    @classmethod
    def diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self):
        return self.array.shape[0]

    @property
    def shape(self):
        return self.array.shape

    def max_abs(self):
        return float(np.max(np.abs(self.array))) if self.array.size else 0.0

    def __array__(self, dtype=None, copy=None):
        return self.array if dtype is None else self.array.astype(dtype)

    def _other(self, other):
        o = other.array if isinstance(other, SymMatrix) else np.asarray(other, dtype=float)
        if o.shape != self.array.shape:
            raise DimensionMismatch(f"shapes {self.array.shape} and {o.shape} differ")
        return o

    def __add__(self, other):
        return SymMatrix(self.array + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return SymMatrix(self.array - self._other(other))

    def __rsub__(self, other):
        return SymMatrix(self._other(other) - self.array)

    def __neg__(self):
        return SymMatrix(-self.array)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return SymMatrix(float(scalar) * self.array)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SymMatrix(self.array / float(scalar))

    def __repr__(self):
        return f"SymMatrix(dim={self.dim}, array={self.array.tolist()!r})"


def as_sym(M):
    return M if isinstance(M, SymMatrix) else SymMatrix(M)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source_dim: int

    def reconstruct(self):
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ Q.T


@dataclass(frozen=True)
class LoewnerVerdict:
    min_eig_of_difference: float
    tolerance_used: float
    holds: bool

    def __bool__(self):
        return self.holds


# ---------------------------------------------------------------------------
# Jacobi eigensolver


@lru_cache(maxsize=None)
def _round_robin(n):
    """Disjoint index pairs for each round of a cyclic sweep (circle method)."""
    m = n + (n % 2)
    idx = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = idx[i], idx[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return tuple(rounds)


def _off_norm(M):
    off = M.copy()
    n = M.shape[-1]
    off[..., np.arange(n), np.arange(n)] = 0.0
    return np.sqrt(np.sum(off * off, axis=(-2, -1)))


def eigh_batch(stack, want_vectors=True):
    """Eigendecomposition of a stack of symmetric matrices, shape ``(N, n, n)``.

    Cyclic Jacobi; each round rotates a set of disjoint ``(p, q)`` pairs at
    once so a full sweep is ``n - 1`` batched matrix products. Returns
    ``(eigenvalues (N, n) ascending, eigenvectors (N, n, n))``.
    """
    M = np.array(stack, dtype=float)
    if M.ndim != 3 or M.shape[1] != M.shape[2]:
        raise DimensionMismatch(f"expected (N, n, n), got {M.shape}")
    N, n, _ = M.shape
    M = 0.5 * (M + np.swapaxes(M, 1, 2))
    V = np.broadcast_to(np.eye(n), (N, n, n)).copy()
    target = JACOBI_REL_TOL * np.sqrt(np.sum(M * M, axis=(1, 2)))
    rounds = _round_robin(n)
    eye = np.eye(n)

    sweeps = 0
    while n > 1 and np.any(_off_norm(M) > target):
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise EigenConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        for p, q in rounds:
            app = M[:, p, p]
            aqq = M[:, q, q]
            apq = M[:, p, q]
            nz = apq != 0.0
            # a tiny apq overflows tau to inf, which correctly gives t = 0
            with np.errstate(over="ignore"):
                tau = (aqq - app) / (2.0 * np.where(nz, apq, 1.0))
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(nz, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            J = np.broadcast_to(eye, (N, n, n)).copy()
            J[:, p, p] = c
            J[:, q, q] = c
            J[:, p, q] = s
            J[:, q, p] = -s
            M = np.swapaxes(J, 1, 2) @ M @ J
            M[:, p, q] = 0.0
            M[:, q, p] = 0.0
            if want_vectors:
                V = V @ J
        M = 0.5 * (M + np.swapaxes(M, 1, 2))
        sweeps += 1

    lam = np.diagonal(M, axis1=1, axis2=2).copy()
    order = np.argsort(lam, axis=1, kind="stable")
    lam = np.take_along_axis(lam, order, axis=1)
    if want_vectors:
        V = np.take_along_axis(V, order[:, None, :], axis=2)
    return lam, V


def eigvalsh_batch(stack):
    return eigh_batch(stack, want_vectors=False)[0]


def eigh(M):
    """Spectral decomposition ``M = Q diag(lam) Q^T`` with ``lam`` ascending."""
    M = as_sym(M)
    lam, Q = eigh_batch(M.array[None])
    return SpectralDecomposition(lam[0], Q[0], M.dim)


def eigenvalues(M):
    M = as_sym(M)
    return eigvalsh_batch(M.array[None])[0]


def spectral_norm(M):
    """Operator 2-norm, ``max |lam_i|``."""
    lam = eigenvalues(M)
    return float(np.max(np.abs(lam))) if lam.size else 0.0


# ---------------------------------------------------------------------------
# functional calculus


def funm_batch(f, stack, lam=None, Q=None):
    """``f`` applied to each matrix of a stack; returns an ``(N, n, n)`` array.

    A precomputed decomposition ``(lam, Q)`` may be passed to skip the solve.
    """
    if lam is None or Q is None:
        lam, Q = eigh_batch(stack)
    f.check_spectrum(lam)
    out = (Q * f(lam)[:, None, :]) @ np.swapaxes(Q, 1, 2)
    return 0.5 * (out + np.swapaxes(out, 1, 2))


def apply_fn(f, M):
    """``f(M) = Q f(Lambda) Q^T``.

    Raises ``SpectrumOutOfDomain`` when an eigenvalue of ``M`` is outside the
    domain of ``f`` (with the domain margin applied at open endpoints).
    """
    M = as_sym(M)
    return SymMatrix(funm_batch(f, M.array[None])[0])


def loewner_leq(X, Y, tol_scale=None):
    """Decide ``X <= Y`` in the Loewner order.

    ``holds`` iff ``lambda_min(Y - X) >= -tol_scale * (1 + ||Y - X||_2)``.
    """
    X, Y = as_sym(X), as_sym(Y)
    if X.dim != Y.dim:
        raise DimensionMismatch(f"dimensions {X.dim} and {Y.dim} differ")
    return verdict_from_eigenvalues(eigenvalues(Y.array - X.array), tol_scale)


def verdict_from_eigenvalues(lam, tol_scale=None):
    """Verdict for ``0 <= D`` given the ascending spectrum ``lam`` of ``D``."""
    if tol_scale is None:
        tol_scale = default_tol_scale()
    lam = np.asarray(lam, dtype=float)
    tol = tol_scale * (1.0 + float(np.max(np.abs(lam))))
    margin = float(lam[0])
    return LoewnerVerdict(margin, tol, margin >= -tol)


def segment_point(A, B, t):
    """The point ``(1 - t) A + t B`` of the segment ``[A, B]``."""
    A, B = as_sym(A), as_sym(B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} is outside [0, 1]")
    if t == 0.0:
        return A
    if t == 1.0:
        return B
    return SymMatrix((1.0 - t) * A.array + t * B.array)


def segment_stack(A, B, ts):
    """All segment points for the parameters ``ts`` as an ``(N, n, n)`` array."""
    A, B = as_sym(A), as_sym(B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    ts = np.asarray(ts, dtype=float)[:, None, None]
    return (1.0 - ts) * A.array + ts * B.array


def quadratic_form(M, x):
    """``<M x, x>``."""
    M = as_sym(M)
    x = np.asarray(x, dtype=float)
    if x.shape != (M.dim,):
        raise DimensionMismatch(f"vector of shape {x.shape} for a {M.dim}x{M.dim} matrix")
    return float(x @ M.array @ x)
