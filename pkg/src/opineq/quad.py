"""Composite Gauss-Legendre quadrature on [0, 1] and a mapped rule for [0, inf).

Integrands may be scalar- or matrix-valued. Values are reduced in a fixed
order so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonFiniteIntegrand
from .matcore import SymMatrix

DEFAULT_POINTS = 16
DEFAULT_PANELS = 32


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    panels: int
    points_per_panel: int

    def __len__(self):
        return self.nodes.size

    def refined(self):
        """The same rule with twice as many panels."""
        return gauss_legendre(self.points_per_panel, 2 * self.panels)


@dataclass(frozen=True, eq=False)
class SemiInfiniteRule:
    """``base`` pushed through ``s = u / (1 - u)``; weights absorb ``1 / (1 - u)^2``."""

    base: QuadratureRule
    nodes: np.ndarray = field(init=False)
    weights: np.ndarray = field(init=False)

    def __post_init__(self):
        u = self.base.nodes
        object.__setattr__(self, "nodes", u / (1.0 - u))
        object.__setattr__(self, "weights", self.base.weights / (1.0 - u) ** 2)

    def __len__(self):
        return self.nodes.size


def gauss_legendre(points_per_panel=DEFAULT_POINTS, panels=DEFAULT_PANELS):
    """Composite Gauss-Legendre rule on [0, 1] with equal panels.

    Nodes and weights are made exactly mirror-symmetric about 1/2, so the
    node list reversed is ``1 - nodes`` up to rounding of the subtraction.
    """
    if points_per_panel < 1 or panels < 1:
        raise ValueError("points_per_panel and panels must be positive")
    x, w = np.polynomial.legendre.leggauss(points_per_panel)
    h = 1.0 / panels
    left = np.arange(panels) * h
    nodes = (left[:, None] + 0.5 * h * (x + 1.0)[None, :]).ravel()
    weights = np.tile(0.5 * h * w, panels)
    nodes = 0.5 * (nodes + (1.0 - nodes[::-1]))
    weights = 0.5 * (weights + weights[::-1])
    weights = weights / np.sum(weights)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, panels, points_per_panel)


def semi_infinite(base=None):
    return SemiInfiniteRule(base if base is not None else gauss_legendre())


def default_rule():
    return _DEFAULT


def integrate_values(values, weights):
    """``sum_i weights[i] * values[i]`` over the leading axis, in node order."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] != weights.size:
        raise DimensionMismatch(f"{values.shape[0]} values for {weights.size} nodes")
    if not np.all(np.isfinite(values)):
        raise NonFiniteIntegrand("integrand is not finite at every node")
    acc = np.zeros(values.shape[1:])
    for w, v in zip(weights, values):
        acc += w * v
    return acc


def integrate_scalar(g, rule=None):
    """Integral over [0, 1] of a scalar function ``g`` (called per node)."""
    rule = rule or _DEFAULT
    vals = np.array([g(t) for t in rule.nodes], dtype=float)
    return float(integrate_values(vals, rule.weights))


def _matrix_values(g, nodes):
    vals = []
    for t in nodes:
        m = g(t)
        vals.append(m.array if isinstance(m, SymMatrix) else np.asarray(m, dtype=float))
    shapes = {v.shape for v in vals}
    if len(shapes) != 1:
        raise DimensionMismatch(f"integrand changes shape across nodes: {sorted(shapes)}")
    return np.stack(vals)


def integrate_matrix(g, rule=None):
    """Entrywise integral over [0, 1] of a matrix-valued ``g``."""
    rule = rule or _DEFAULT
    return SymMatrix(integrate_values(_matrix_values(g, rule.nodes), rule.weights))


def integrate_semi_infinite_matrix(g, rule=None):
    """Entrywise integral over [0, inf) of a matrix-valued ``g``.

    ``g`` should decay at least like ``s**-2``.
    """
    rule = rule or _DEFAULT_SEMI
    return SymMatrix(integrate_values(_matrix_values(g, rule.nodes), rule.weights))


_DEFAULT = gauss_legendre()
_DEFAULT_SEMI = SemiInfiniteRule(_DEFAULT)
