"""Scalar Cebysev-functional bounds and the operator Levin-Steckin family.

Every operator checker produces an ``IneqReport`` certifying
``0 <= gap <= bound`` in the Loewner order. The subtraction order of ``gap``
is chosen so that the statement being checked asserts it is nonnegative:
for an operator concave ``f`` the checkers work with ``-f``, and for a weight
that is non-increasing on [0, 1/2] with ``-p``. ``orientation`` records which
case applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import (
    NegativeWeight,
    NotDifferentiable,
    UnsupportedConvexity,
    UnsupportedOrientation,
)
from .frechet import daleckii_krein_batch, gateaux_log_integral
from .funcs import OPERATOR_CONCAVE, OPERATOR_CONVEX, classify, inverse, log, power
from .matcore import (
    LoewnerVerdict,
    SymMatrix,
    as_sym,
    eigh_batch,
    eigvalsh_batch,
    funm_batch,
    loewner_leq,
    segment_stack,
    verdict_from_eigenvalues,
)
from .quad import QuadratureRule, default_rule, integrate_values, semi_infinite
from .weights import GRID, NONDECREASING, bump, derivative_norms, require_valid

THEOREMS = (
    "hermite_hadamard",
    "fejer",
    "levin_steckin",
    "ostrowski_reverse",
    "gateaux_reverse",
    "cebysev_reverse",
    "lupas_reverse",
)

SCALAR_SLACK = 1e-12


# ---------------------------------------------------------------------------
# scalar layer


def cebysev_functional(h, g, rule=None):
    """``int h g - int h int g`` over [0, 1]; ``h`` and ``g`` take arrays."""
    rule = rule or default_rule()
    hv = np.asarray(h(rule.nodes), dtype=float)
    gv = np.asarray(g(rule.nodes), dtype=float)
    w = rule.weights
    return float(integrate_values(hv * gv, w) - integrate_values(hv, w) * integrate_values(gv, w))


@dataclass(frozen=True)
class ScalarFunctionalReport:
    C_value: float
    gruss_bound: Optional[float]
    ostrowski_bound: Optional[float]
    cebysev_bound: Optional[float]
    lupas_bound: Optional[float]
    inputs_digest: str = ""

    def bounds(self):
        named = {
            "gruss": self.gruss_bound,
            "ostrowski": self.ostrowski_bound,
            "cebysev": self.cebysev_bound,
            "lupas": self.lupas_bound,
        }
        return {k: v for k, v in named.items() if v is not None}

    @property
    def holds(self):
        return all(abs(self.C_value) <= b + SCALAR_SLACK for b in self.bounds().values())


def scalar_bounds(h, g, rule=None, *, m=None, M=None, n=None, N=None,
                  h_dinf=None, g_dinf=None, h_d2=None, g_d2=None, label=""):
    """The four classical bounds on ``|C(h, g)|`` on [0, 1].

    ``m <= h <= M`` and ``n <= g <= N``; ``*_dinf`` and ``*_d2`` are the sup
    and L2 norms of the derivatives. A bound whose ingredients are missing is
    left as ``None``.
    """
    C = cebysev_functional(h, g, rule)
    gruss = ostrowski = cebysev = lupas = None
    if None not in (m, M, n, N):
        gruss = 0.25 * (M - m) * (N - n)
    if None not in (m, M, g_dinf):
        ostrowski = 0.125 * (M - m) * g_dinf
    if None not in (h_dinf, g_dinf):
        cebysev = h_dinf * g_dinf / 12.0
    if None not in (h_d2, g_d2):
        lupas = h_d2 * g_d2 / math.pi**2
    available = [k for k, v in (("gruss", gruss), ("ostrowski", ostrowski),
                                ("cebysev", cebysev), ("lupas", lupas)) if v is not None]
    return ScalarFunctionalReport(C, gruss, ostrowski, cebysev, lupas,
                                  f"{label} bounds={','.join(available) or 'none'}")


def scalar_levin_steckin(p, g, rule=None):
    """``(int p * int g - int p g, holds)`` for a convex scalar ``g``.

    The gap is nonnegative for weights non-decreasing on [0, 1/2] and
    nonpositive for non-increasing ones.
    """
    report = require_valid(p)
    gap = -cebysev_functional(p, g, rule)
    if report.monotone_class == NONDECREASING:
        return gap, gap >= -SCALAR_SLACK
    return gap, gap <= SCALAR_SLACK


# ---------------------------------------------------------------------------
# operator reports


@dataclass(frozen=True, eq=False)
class IneqReport:
    theorem_id: str
    gap: SymMatrix
    bound: SymMatrix
    lower_verdict: LoewnerVerdict
    upper_verdict: LoewnerVerdict
    tightness: Optional[float]
    orientation: str
    coefficient: float
    instance: dict = field(default_factory=dict)
    # further verdicts the statement asserts, e.g. a chain of two bounds
    chain: tuple = ()

    @property
    def passed(self):
        return (self.lower_verdict.holds and self.upper_verdict.holds
                and all(v.holds for v in self.chain))

    @property
    def margin(self):
        return min([self.lower_verdict.min_eig_of_difference,
                    self.upper_verdict.min_eig_of_difference]
                   + [v.min_eig_of_difference for v in self.chain])


def make_report(theorem_id, gap, bound, *, orientation="", coefficient=1.0,
                instance=None, chain=(), tol_scale=None):
    gap = np.asarray(gap, dtype=float)
    bound = np.asarray(bound, dtype=float)
    lam = eigvalsh_batch(np.stack([gap, bound - gap, bound]))
    lower = verdict_from_eigenvalues(lam[0], tol_scale)
    upper = verdict_from_eigenvalues(lam[1], tol_scale)
    top = lam[2, -1]
    tightness = float(lam[0, -1] / top) if top > 0 else None
    return IneqReport(theorem_id, SymMatrix(gap), SymMatrix(bound), lower, upper,
                      tightness, orientation, float(coefficient), dict(instance or {}),
                      tuple(chain))


class SymmetrizedPath:
    """``t -> (phi(t) + phi(1 - t)) / 2`` with ``phi(t) = f((1 - t) A + t B)``."""

    def __init__(self, f, A, B):
        self.f, self.A, self.B = f, as_sym(A), as_sym(B)

    def phi(self, ts):
        return funm_batch(self.f, segment_stack(self.A, self.B, np.atleast_1d(ts)))

    def __call__(self, ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return 0.5 * (self.phi(ts) + self.phi(1.0 - ts))


class InequalityInstance:
    """Shared data for all checkers on one ``(f, p, A, B, rule)``.

    Expensive pieces (the segment's eigendecompositions, ``f`` along the
    quadrature nodes, derivatives along the segment) are computed once and
    reused by every checker.
    """

    def __init__(self, f, p, A, B, rule=None, tol_scale=None):
        self.f = f
        self.p = p
        self.A, self.B = as_sym(A), as_sym(B)
        if self.A.dim != self.B.dim:
            raise ValueError("A and B must have the same dimension")
        self.rule: QuadratureRule = rule or default_rule()
        self.tol_scale = tol_scale

    # -- hypotheses ---------------------------------------------------------

    @cached_property
    def sigma(self):
        cls = classify(self.f)
        if cls == OPERATOR_CONVEX:
            return 1.0
        if cls == OPERATOR_CONCAVE:
            return -1.0
        raise UnsupportedConvexity(f"{self.f} is neither operator convex nor operator concave")

    @cached_property
    def weight_report(self):
        if self.p is None:
            raise ValueError("this checker needs a weight")
        return require_valid(self.p)

    @cached_property
    def tau(self):
        return 1.0 if self.weight_report.monotone_class == NONDECREASING else -1.0

    @property
    def orientation(self):
        parts = ["convex" if self.sigma > 0 else "concave"]
        if self.p is not None:
            parts.append("nondecreasing" if self.tau > 0 else "nonincreasing")
        return "/".join(parts)

    def _describe(self, **extra):
        d = {
            "function": str(self.f),
            "weight": str(self.p) if self.p is not None else None,
            "dim": self.A.dim,
            "quad": f"{self.rule.points_per_panel}x{self.rule.panels}",
        }
        d.update(extra)
        return d

    def _need_nondecreasing(self, what):
        if self.tau < 0:
            raise UnsupportedOrientation(
                f"{what} is stated for weights non-decreasing on [0, 1/2]; {self.p} is not")

    def _need_differentiable(self, what):
        if not self.p.differentiable:
            raise NotDifferentiable(f"{what} needs a differentiable weight; {self.p} is not")
        return derivative_norms(self.p)

    # -- shared integrals ---------------------------------------------------

    @cached_property
    def _segment_eig(self):
        return eigh_batch(segment_stack(self.A, self.B, self.rule.nodes))

    @cached_property
    def phi(self):
        lam, Q = self._segment_eig
        return funm_batch(self.f, None, lam, Q)

    @cached_property
    def int_phi(self):
        return integrate_values(self.phi, self.rule.weights)

    @cached_property
    def p_nodes(self):
        return np.asarray(self.p(self.rule.nodes), dtype=float)

    @cached_property
    def int_p(self):
        return float(integrate_values(self.p_nodes, self.rule.weights))

    @cached_property
    def int_p_phi(self):
        return integrate_values(self.p_nodes[:, None, None] * self.phi, self.rule.weights)

    @cached_property
    def _endpoint_values(self):
        mid = 0.5 * (self.A.array + self.B.array)
        fx = funm_batch(self.f, np.stack([self.A.array, self.B.array, mid]))
        return fx[0], fx[1], fx[2]

    @cached_property
    def jensen_gap(self):
        """``sigma * [(f(A) + f(B)) / 2 - f((A + B) / 2)]``, nonnegative."""
        fa, fb, fm = self._endpoint_values
        return self.sigma * (0.5 * (fa + fb) - fm)

    @cached_property
    def ls_gap(self):
        """``int p * int phi - int p phi``, oriented to be nonnegative."""
        raw = self.int_p * self.int_phi - self.int_p_phi
        return self.sigma * self.tau * raw

    @cached_property
    def direction(self):
        return self.B.array - self.A.array

    def endpoint_derivatives(self, method="daleckii_krein"):
        """``(grad f_A(B - A), grad f_B(B - A))``."""
        if method == "daleckii_krein":
            lam, Q = eigh_batch(np.stack([self.A.array, self.B.array]))
            self.f.check_spectrum(lam)
            d = daleckii_krein_batch(self.f, lam, Q, self.direction)
            return d[0], d[1]
        if method == "log_integral":
            if self.f != log():
                raise ValueError("the resolvent-integral derivative applies to log only")
            rule = semi_infinite(self.rule)
            return (gateaux_log_integral(self.A, self.direction, rule).array,
                    gateaux_log_integral(self.B, self.direction, rule).array)
        raise ValueError(f"unknown derivative method {method!r}")

    @cached_property
    def segment_derivatives(self):
        lam, Q = self._segment_eig
        self.f.check_spectrum(lam)
        return daleckii_krein_batch(self.f, lam, Q, self.direction)

    # -- checkers -----------------------------------------------------------

    def hermite_hadamard(self):
        """``f((A+B)/2) <= int_0^1 phi <= (f(A) + f(B)) / 2``."""
        s = self.sigma
        fa, fb, fm = self._endpoint_values
        gap = s * (self.int_phi - fm)
        bound = s * (0.5 * (fa + fb) - fm)
        return make_report("hermite_hadamard", gap, bound,
                           orientation="convex" if s > 0 else "concave",
                           instance=self._describe(), tol_scale=self.tol_scale)

    def fejer(self):
        """Weighted midpoint/mean/endpoint chain for a nonnegative symmetric weight."""
        s = self.sigma
        self.weight_report
        if np.any(self.p(GRID) < 0.0):
            raise NegativeWeight(f"{self.p} takes negative values")
        fa, fb, fm = self._endpoint_values
        gap = s * (self.int_p_phi - self.int_p * fm)
        bound = s * self.int_p * (0.5 * (fa + fb) - fm)
        return make_report("fejer", gap, bound, orientation="convex" if s > 0 else "concave",
                           coefficient=self.int_p,
                           instance=self._describe(weight_integral=self.int_p),
                           tol_scale=self.tol_scale)

    def levin_steckin(self):
        """``0 <= gap <= (1/4)|p(1/2) - p(0)| * jensen_gap``."""
        coeff = 0.25 * self.tau * (self.weight_report.p_half - self.weight_report.p0)
        return make_report("levin_steckin", self.ls_gap, coeff * self.jensen_gap,
                           orientation=self.orientation, coefficient=coeff,
                           instance=self._describe(weight_integral=self.int_p),
                           tol_scale=self.tol_scale)

    def ostrowski_reverse(self):
        """``0 <= gap <= (1/8) ||p'||_inf * jensen_gap``."""
        self._need_nondecreasing("the Ostrowski-type reverse")
        dinf, _ = self._need_differentiable("the Ostrowski-type reverse")
        coeff = dinf / 8.0
        return make_report("ostrowski_reverse", self.ls_gap, coeff * self.jensen_gap,
                           orientation=self.orientation, coefficient=coeff,
                           instance=self._describe(), tol_scale=self.tol_scale)

    def _derivative_bracket(self, method):
        dA, dB = self.endpoint_derivatives(method)
        extra = {"derivative": method}
        if method != "daleckii_krein":
            kA, kB = self.endpoint_derivatives("daleckii_krein")
            scale = 1.0 + max(np.max(np.abs(kA)), np.max(np.abs(kB)))
            extra["derivative_crosscheck"] = float(
                max(np.max(np.abs(dA - kA)), np.max(np.abs(dB - kB))) / scale)
        return self.sigma * (dB - dA), extra

    def gateaux_reverse(self, derivative="daleckii_krein"):
        """``0 <= gap <= (1/16)(p(1/2) - p(0)) [grad f_B(B-A) - grad f_A(B-A)]``."""
        self._need_nondecreasing("the derivative reverse")
        bracket, extra = self._derivative_bracket(derivative)
        coeff = (self.weight_report.p_half - self.weight_report.p0) / 16.0
        return make_report("gateaux_reverse", self.ls_gap, coeff * bracket,
                           orientation=self.orientation, coefficient=coeff,
                           instance=self._describe(**extra), tol_scale=self.tol_scale)

    def cebysev_reverse(self, derivative="daleckii_krein"):
        """``0 <= gap <= (1/24) ||p'||_inf [grad f_B(B-A) - grad f_A(B-A)]``."""
        self._need_nondecreasing("the Cebysev-type reverse")
        dinf, _ = self._need_differentiable("the Cebysev-type reverse")
        bracket, extra = self._derivative_bracket(derivative)
        coeff = dinf / 24.0
        return make_report("cebysev_reverse", self.ls_gap, coeff * bracket,
                           orientation=self.orientation, coefficient=coeff,
                           instance=self._describe(**extra), tol_scale=self.tol_scale)

    def lupas_reverse(self):
        """``0 <= gap <= c_tight I <= c_weak I`` with L2 norms of the derivative path.

        ``c_tight = ||p'||_2 / (2 pi^2) * (int ||D(t) - D(1-t)||^2)^{1/2}`` and
        ``c_weak = ||p'||_2 / pi^2 * (int ||D(t)||^2)^{1/2}``, where ``D(t)`` is
        the derivative of ``f`` at ``(1-t)A + tB`` along ``B - A`` and
        ``||.||`` is the spectral norm.
        """
        self._need_nondecreasing("the Lupas-type reverse")
        _, d2 = self._need_differentiable("the Lupas-type reverse")
        D = self.segment_derivatives
        # nodes are mirror-symmetric, so reversing the stack evaluates D(1 - t)
        diff_norms = np.max(np.abs(eigvalsh_batch(D - D[::-1])), axis=1)
        path_norms = np.max(np.abs(eigvalsh_batch(D)), axis=1)
        w = self.rule.weights
        tight = d2 / (2.0 * math.pi**2) * math.sqrt(float(integrate_values(diff_norms**2, w)))
        weak = d2 / math.pi**2 * math.sqrt(float(integrate_values(path_norms**2, w)))
        n = self.A.dim
        chain = (loewner_leq(tight * np.eye(1), weak * np.eye(1), self.tol_scale),)
        return make_report("lupas_reverse", self.ls_gap, tight * np.eye(n),
                           orientation=self.orientation, coefficient=d2 / (2.0 * math.pi**2),
                           instance=self._describe(tight_scalar=tight, weak_scalar=weak),
                           chain=chain, tol_scale=self.tol_scale)

    def run(self, theorem_id):
        return getattr(self, theorem_id)()


def check_hermite_hadamard(f, A, B, rule=None, p=None, tol_scale=None):
    """Unweighted chain, or the weighted (Fejer) chain when ``p`` is given."""
    inst = InequalityInstance(f, p, A, B, rule, tol_scale)
    return inst.fejer() if p is not None else inst.hermite_hadamard()


def check_ls_operator(f, p, A, B, rule=None, tol_scale=None):
    return InequalityInstance(f, p, A, B, rule, tol_scale).levin_steckin()


def check_ostrowski_reverse(f, p, A, B, rule=None, tol_scale=None):
    return InequalityInstance(f, p, A, B, rule, tol_scale).ostrowski_reverse()


def check_gateaux_reverse(f, p, A, B, rule=None, derivative="daleckii_krein", tol_scale=None):
    return InequalityInstance(f, p, A, B, rule, tol_scale).gateaux_reverse(derivative)


def check_cebysev_reverse(f, p, A, B, rule=None, derivative="daleckii_krein", tol_scale=None):
    return InequalityInstance(f, p, A, B, rule, tol_scale).cebysev_reverse(derivative)


def check_lupas_reverse(f, p, A, B, rule=None, tol_scale=None):
    return InequalityInstance(f, p, A, B, rule, tol_scale).lupas_reverse()


# ---------------------------------------------------------------------------
# worked examples for powers, the inverse and the logarithm

SUITE_POWERS = (-1.0, 1.5, 2.0)


def _relabel(report, name):
    return IneqReport(name, report.gap, report.bound, report.lower_verdict,
                      report.upper_verdict, report.tightness, report.orientation,
                      report.coefficient, report.instance, report.chain)


def run_example_suite(A, B, rule=None, p=None, tol_scale=None):
    """Reports for the power, inverse and logarithm examples.

    ``p`` (default: the bump ``t(1-t)``) is used for the general-weight
    examples; the ``bump_*`` entries always use ``t(1-t)``. The logarithm's
    derivative bounds use the resolvent integral and record the discrepancy
    against Daleckii-Krein as ``instance["derivative_crosscheck"]``.
    """
    p = p if p is not None else bump()
    b = bump()
    reports = []
    # the reverses need p non-decreasing on [0, 1/2]; most also need p'
    nondecreasing = require_valid(p).monotone_class == NONDECREASING
    smooth = nondecreasing and p.differentiable

    def add(name, report):
        reports.append(_relabel(report, name))

    for r in SUITE_POWERS:
        inst = InequalityInstance(power(r), p, A, B, rule, tol_scale)
        tag = f"[r={r:g}]"
        add("power_levin_steckin" + tag, inst.levin_steckin())
        if smooth:
            add("power_ostrowski" + tag, inst.ostrowski_reverse())

    inv = InequalityInstance(inverse(), p, A, B, rule, tol_scale)
    if nondecreasing:
        add("inverse_gateaux", inv.gateaux_reverse())
    if smooth:
        add("inverse_cebysev", inv.cebysev_reverse())
        add("inverse_lupas", inv.lupas_reverse())

    ln = InequalityInstance(log(), p, A, B, rule, tol_scale)
    add("log_levin_steckin", ln.levin_steckin())
    if smooth:
        add("log_ostrowski", ln.ostrowski_reverse())
    if nondecreasing:
        add("log_gateaux_integral", ln.gateaux_reverse("log_integral"))
    if smooth:
        add("log_cebysev_integral", ln.cebysev_reverse("log_integral"))

    for r in SUITE_POWERS:
        inst = InequalityInstance(power(r), b, A, B, rule, tol_scale)
        add(f"bump_power_levin_steckin[r={r:g}]", inst.levin_steckin())
    add("bump_inverse_gateaux",
        InequalityInstance(inverse(), b, A, B, rule, tol_scale).gateaux_reverse())
    bl = InequalityInstance(log(), b, A, B, rule, tol_scale)
    add("bump_log_levin_steckin", bl.levin_steckin())
    add("bump_log_gateaux_integral", bl.gateaux_reverse("log_integral"))
    return reports
