"""Symmetric weight functions on [0, 1] and the quantities the bounds use."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import InvalidWeight, NotDifferentiable

NONDECREASING = "nondecreasing_on_first_half"
NONINCREASING = "nonincreasing_on_first_half"

GRID = np.linspace(0.0, 1.0, 1025)
GRID_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Weight ``p`` on [0, 1].

    ``kind`` is ``constant`` (value ``c``), ``bump`` (``t(1-t)``), ``vee``
    (``|t - 1/2|``) or ``table`` (samples ``ts``/``ps``, linearly
    interpolated).
    """

    kind: str
    c: float = 1.0
    ts: Optional[np.ndarray] = None
    ps: Optional[np.ndarray] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in ("constant", "bump", "vee", "table"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "table":
            ts = np.asarray(self.ts, dtype=float)
            ps = np.asarray(self.ps, dtype=float)
            if ts.ndim != 1 or ts.shape != ps.shape or ts.size < 2:
                raise InvalidWeight("table needs matching 1-d t and p columns")
            if np.any(np.diff(ts) <= 0):
                raise InvalidWeight("table t values must be strictly ascending")
            if ts[0] != 0.0 or ts[-1] != 1.0:
                raise InvalidWeight("table must cover t = 0 and t = 1")
            if not np.all(np.isfinite(ps)):
                raise InvalidWeight("table p values must be finite")
            object.__setattr__(self, "ts", ts)
            object.__setattr__(self, "ps", ps)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any((t < 0.0) | (t > 1.0)):
            raise ValueError("weight evaluated outside [0, 1]")
        if self.kind == "constant":
            return np.full_like(t, self.c)
        if self.kind == "bump":
            return t * (1.0 - t)
        if self.kind == "vee":
            return np.abs(t - 0.5)
        return np.interp(t, self.ts, self.ps)

    @property
    def p0(self):
        return float(self(0.0))

    @property
    def p_half(self):
        return float(self(0.5))

    @property
    def differentiable(self):
        return self.kind != "vee"

    @cached_property
    def integral(self):
        if self.kind == "constant":
            return float(self.c)
        if self.kind == "bump":
            return 1.0 / 6.0
        if self.kind == "vee":
            return 0.25
        return float(np.sum(0.5 * (self.ps[1:] + self.ps[:-1]) * np.diff(self.ts)))

    @cached_property
    def monotone_class(self):
        d = np.diff(self(GRID[:513]))
        if np.all(d >= -GRID_TOL):
            return NONDECREASING
        if np.all(d <= GRID_TOL):
            return NONINCREASING
        return None

    @cached_property
    def symmetry_residual(self):
        return float(np.max(np.abs(self(GRID) - self(1.0 - GRID))))

    @property
    def dinf_norm(self):
        return derivative_norms(self)[0] if self.differentiable else None

    @property
    def d2_norm(self):
        return derivative_norms(self)[1] if self.differentiable else None

    def __str__(self):
        if self.label:
            return self.label
        if self.kind == "constant":
            return f"constant:{self.c:g}"
        return self.kind


def constant(c=1.0):
    return WeightFunction("constant", c=float(c))


def bump():
    return WeightFunction("bump")


def vee():
    return WeightFunction("vee")


def tabulated(ts, ps, label=""):
    return WeightFunction("table", ts=ts, ps=ps, label=label)


def read_table(path):
    """Load a ``t,p`` CSV (header row required) as a tabulated weight."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        if header != ["t", "p"]:
            raise InvalidWeight(f"{path}: expected header 't,p', got {','.join(header)!r}")
        rows = [(float(a), float(b)) for a, b in reader if a.strip()]
    ts, ps = zip(*rows) if rows else ((), ())
    return tabulated(np.array(ts), np.array(ps), label=f"table:{path}")


def parse_weight(text):
    """Parse ``constant:<c>``, ``bump``, ``vee`` or ``table:<path>``."""
    text = text.strip()
    if text == "bump":
        return bump()
    if text == "vee":
        return vee()
    if text == "constant":
        return constant()
    if text.startswith("constant:"):
        return constant(float(text[9:]))
    if text.startswith("table:"):
        return read_table(text[6:])
    raise ValueError(f"unrecognised weight spec {text!r}")


def eval_weight(p, t):
    out = p(t)
    return float(out) if np.ndim(out) == 0 else out


def derivative_norms(p):
    """``(sup |p'|, (int_0^1 p'^2)^{1/2})``.

    Closed forms for the analytic kinds; for tables, the slopes of the
    linear interpolant.
    """
    if p.kind == "vee":
        raise NotDifferentiable("vee has a kink at t = 1/2")
    if p.kind == "constant":
        return 0.0, 0.0
    if p.kind == "bump":
        return 1.0, math.sqrt(1.0 / 3.0)
    slopes = np.diff(p.ps) / np.diff(p.ts)
    return float(np.max(np.abs(slopes))), float(np.sqrt(np.sum(slopes**2 * np.diff(p.ts))))


@dataclass(frozen=True)
class WeightReport:
    weight: str
    symmetry_residual: float
    symmetric: bool
    monotone_class: Optional[str]
    nonnegative: bool
    p0: float
    p_half: float
    integral: float
    dinf_norm: Optional[float]
    d2_norm: Optional[float]
    problems: tuple

    @property
    def valid(self):
        return not self.problems


def validate(p):
    """Check symmetry and half-interval monotonicity on the 1025-point grid."""
    problems = []
    sym_ok = p.symmetry_residual <= GRID_TOL
    if not sym_ok:
        problems.append(f"not symmetric (residual {p.symmetry_residual:.3e})")
    if p.monotone_class is None:
        problems.append("not monotone on [0, 1/2]")
    dinf = d2 = None
    if p.differentiable:
        dinf, d2 = derivative_norms(p)
    return WeightReport(
        weight=str(p),
        symmetry_residual=p.symmetry_residual,
        symmetric=sym_ok,
        monotone_class=p.monotone_class,
        nonnegative=bool(np.all(p(GRID) >= 0.0)),
        p0=p.p0,
        p_half=p.p_half,
        integral=p.integral,
        dinf_norm=dinf,
        d2_norm=d2,
        problems=tuple(problems),
    )


def require_valid(p):
    report = validate(p)
    if not report.valid:
        raise InvalidWeight(f"{p}: " + "; ".join(report.problems))
    return report
