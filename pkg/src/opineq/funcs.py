"""Closed catalogue of scalar functions with operator-convexity metadata.

Every entry knows its domain, analytic derivative and whether it is operator
convex or concave, so theorem hypotheses can be checked mechanically. The
exponential is deliberately absent: it is neither operator convex nor
operator monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, SpectrumOutOfDomain

OPERATOR_CONVEX = "operator_convex"
OPERATOR_CONCAVE = "operator_concave"
NEITHER = "neither"

_FLIP = {OPERATOR_CONVEX: OPERATOR_CONCAVE, OPERATOR_CONCAVE: OPERATOR_CONVEX, NEITHER: NEITHER}


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = True
    hi_open: bool = True

    def bounds_with_margin(self):
        lo, hi = self.lo, self.hi
        if self.lo_open and math.isfinite(lo):
            lo = lo + 1e-8 * (1.0 + abs(lo))
        if self.hi_open and math.isfinite(hi):
            hi = hi - 1e-8 * (1.0 + abs(hi))
        return lo, hi

    def contains(self, t):
        lo, hi = self.bounds_with_margin()
        t = np.asarray(t, dtype=float)
        return (t >= lo) & (t <= hi)

    def __str__(self):
        return f"{'(' if self.lo_open else '['}{self.lo:g}, {self.hi:g}{')' if self.hi_open else ']'}"


REAL_LINE = Interval(-math.inf, math.inf)
POSITIVE = Interval(0.0, math.inf)


@dataclass(frozen=True)
class OperatorFunction:
    """A catalogue function: ``power`` (with exponent ``r``), ``log``,
    ``xlogx``, or ``negate`` wrapping another entry."""

    kind: str
    r: Optional[float] = None
    inner: Optional["OperatorFunction"] = None

    def __post_init__(self):
        if self.kind not in ("power", "log", "xlogx", "negate"):
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == "power":
            if self.r is None or not math.isfinite(self.r):
                raise ValueError("power needs a finite exponent")
            object.__setattr__(self, "r", float(self.r))
        if self.kind == "negate" and self.inner is None:
            raise ValueError("negate needs an inner function")

    @property
    def domain(self):
        if self.kind == "negate":
            return self.inner.domain
        if self.kind == "power" and self.r in (1.0, 2.0):
            return REAL_LINE
        return POSITIVE

    @property
    def convexity(self):
        return classify(self)

    @property
    def is_affine(self):
        if self.kind == "negate":
            return self.inner.is_affine
        return self.kind == "power" and self.r in (0.0, 1.0)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        k = self.kind
        if k == "negate":
            return -self.inner(t)
        if k == "log":
            return np.log(t)
        if k == "xlogx":
            return t * np.log(t)
        r = self.r
        if r == 0.0:
            return np.ones_like(t)
        if r == 1.0:
            return t.copy()
        if r == 2.0:
            return t * t
        if r == -1.0:
            return 1.0 / t
        return np.power(t, r)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        k = self.kind
        if k == "negate":
            return -self.inner.derivative(t)
        if k == "log":
            return 1.0 / t
        if k == "xlogx":
            return np.log(t) + 1.0
        r = self.r
        if r == 0.0:
            return np.zeros_like(t)
        if r == 1.0:
            return np.ones_like(t)
        if r == 2.0:
            return 2.0 * t
        if r == -1.0:
            return -1.0 / (t * t)
        return r * np.power(t, r - 1.0)

    def check_spectrum(self, eigenvalues):
        """Raise ``SpectrumOutOfDomain`` unless every eigenvalue is in the domain."""
        lam = np.asarray(eigenvalues, dtype=float)
        ok = self.domain.contains(lam)
        if not np.all(ok):
            bad = lam[~ok]
            raise SpectrumOutOfDomain(
                f"{self}: eigenvalue {bad.flat[0]:.6g} outside domain {self.domain}"
            )

    def __str__(self):
        if self.kind == "power":
            r = self.r
            return f"power:{int(r) if r.is_integer() else r}"
        if self.kind == "negate":
            return f"neg:{self.inner}"
        return self.kind


def _checked(f, t):
    if not np.all(f.domain.contains(t)):
        raise DomainError(f"{f}: argument {t!r} outside domain {f.domain}")


def evaluate(f, t):
    """Scalar (or elementwise) value ``f(t)`` with a domain check."""
    _checked(f, t)
    out = f(t)
    return float(out) if np.ndim(out) == 0 else out


def evaluate_derivative(f, t):
    _checked(f, t)
    out = f.derivative(t)
    return float(out) if np.ndim(out) == 0 else out


def classify(f):
    if f.kind == "negate":
        return _FLIP[classify(f.inner)]
    if f.kind in ("log",):
        return OPERATOR_CONCAVE
    if f.kind == "xlogx":
        return OPERATOR_CONVEX
    r = f.r
    if 1.0 <= r <= 2.0 or -1.0 <= r <= 0.0:
        return OPERATOR_CONVEX
    if 0.0 <= r <= 1.0:
        return OPERATOR_CONCAVE
    return NEITHER


def power(r):
    return OperatorFunction("power", r=r)


def inverse():
    return power(-1.0)


def square():
    return power(2.0)


def log():
    return OperatorFunction("log")


def xlogx():
    return OperatorFunction("xlogx")


def negate(f):
    if f.kind == "negate":
        return f.inner
    return OperatorFunction("negate", inner=f)


def parse_function(text):
    """Parse ``power:1.5``, ``log``, ``xlogx``, ``inverse``, ``square`` or ``neg:<spec>``."""
    text = text.strip()
    if text.startswith("neg:"):
        return negate(parse_function(text[4:]))
    if text.startswith("power:"):
        return power(float(text[6:]))
    simple = {"log": log, "xlogx": xlogx, "inverse": inverse, "square": square}
    if text in simple:
        return simple[text]()
    raise ValueError(f"unrecognised function spec {text!r}")
