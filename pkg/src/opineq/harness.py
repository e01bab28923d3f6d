"""Seeded instance generation, campaigns over (f, p, A, B) and report output."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotApplicable, OpIneqError
from .funcs import parse_function
from .ineq import THEOREMS, InequalityInstance
from .matcore import SymMatrix
from .quad import gauss_legendre
from .weights import parse_weight

MAX_DIM = 64
EDGE_FRACTION = 0.05

CAMPAIGN_FUNCTIONS = ("power:-1", "power:1.5", "power:2", "xlogx", "log")
CAMPAIGN_WEIGHTS = ("constant:1", "bump", "vee")
CAMPAIGN_DIMS = (2, 4, 8)

CSV_HEADER = ("theorem_id", "instances", "passes", "worst_margin",
              "tightness_min", "tightness_median", "tightness_max")


@dataclass(frozen=True)
class InstanceSpec:
    dim: int
    interval: tuple
    seed: int
    function: str = "power:2"
    weight: str = "bump"
    quad: tuple = (16, 32)

    def __post_init__(self):
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval {self.interval} is empty")
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dim must be in [1, {MAX_DIM}], got {self.dim}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def random_orthogonal(rng, n):
    """Haar-distributed orthogonal matrix from the QR factor of a Gaussian matrix."""
    Z = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * np.where(np.diag(R) < 0, -1.0, 1.0)


def random_pair(spec):
    """``A = Q1 D1 Q1^T`` and ``B = Q2 D2 Q2^T`` with eigenvalues drawn from
    ``[a + eta, b - eta]``, ``eta = 0.05 (b - a)``.

    Every point of the segment ``[A, B]`` then also has its spectrum there.
    """
    rng = np.random.default_rng(spec.seed)
    a, b = spec.interval
    eta = EDGE_FRACTION * (b - a)
    mats = []
    for _ in range(2):
        d = rng.uniform(a + eta, b - eta, size=spec.dim)
        Q = random_orthogonal(rng, spec.dim)
        mats.append(SymMatrix((Q * d) @ Q.T))
    return mats[0], mats[1]


@dataclass(frozen=True)
class Failure:
    seed: int
    theorem_id: str
    reason: str
    margin: Optional[float]


@dataclass
class TheoremStats:
    instances: int = 0
    passes: int = 0
    skipped: int = 0
    worst_margin: Optional[float] = None
    tightness: list = field(default_factory=list)

    def tightness_summary(self):
        if not self.tightness:
            return {"min": None, "median": None, "max": None}
        t = sorted(self.tightness)
        return {"min": t[0], "median": statistics.median(t), "max": t[-1]}


@dataclass
class CampaignReport:
    instances: int = 0
    theorems: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    @property
    def exit_status(self):
        return 0 if self.ok else 1


def _theorem_ids(theorems):
    if theorems in (None, "all"):
        return THEOREMS
    if isinstance(theorems, str):
        theorems = theorems.split(",")
    unknown = set(theorems) - set(THEOREMS)
    if unknown:
        raise ValueError(f"unknown theorem ids: {sorted(unknown)}")
    return tuple(t for t in THEOREMS if t in theorems)


def run_instance(spec, theorems=THEOREMS, tol_scale=None):
    """Run the selected checkers on one spec.

    Returns ``(theorem_id, outcome)`` pairs where outcome is an ``IneqReport``,
    ``("skip", reason)`` or ``("error", reason)``.
    """
    out = []
    try:
        f = parse_function(spec.function)
        p = parse_weight(spec.weight)
        A, B = random_pair(spec)
        rule = gauss_legendre(*spec.quad)
        inst = InequalityInstance(f, p, A, B, rule, tol_scale)
    except (OpIneqError, ValueError, OSError) as exc:
        return [(t, ("error", f"{type(exc).__name__}: {exc}")) for t in theorems]
    for tid in theorems:
        try:
            out.append((tid, inst.run(tid)))
        except NotApplicable as exc:
            out.append((tid, ("skip", f"{type(exc).__name__}: {exc}")))
        except (OpIneqError, ValueError, ArithmeticError) as exc:
            out.append((tid, ("error", f"{type(exc).__name__}: {exc}")))
    return out


def run_campaign(specs, theorems="all", workers=1, tol_scale=None):
    """Run every selected checker on every spec and aggregate.

    Errors and failed verdicts are collected, never raised. The result does
    not depend on ``workers``.
    """
    ids = _theorem_ids(theorems)
    specs = list(specs)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: run_instance(s, ids, tol_scale), specs))
    else:
        results = [run_instance(s, ids, tol_scale) for s in specs]

    report = CampaignReport(instances=len(specs))
    for spec, outcomes in zip(specs, results):
        for tid, outcome in outcomes:
            stats = report.theorems.setdefault(tid, TheoremStats())
            if isinstance(outcome, tuple) and outcome[0] == "skip":
                stats.skipped += 1
                continue
            stats.instances += 1
            if isinstance(outcome, tuple):
                report.failures.append(Failure(spec.seed, tid, outcome[1], None))
                continue
            m = outcome.margin
            stats.worst_margin = m if stats.worst_margin is None else min(stats.worst_margin, m)
            if outcome.tightness is not None:
                stats.tightness.append(outcome.tightness)
            if outcome.passed:
                stats.passes += 1
            else:
                report.failures.append(Failure(spec.seed, tid, "verdict failed", m))
    report.failures.sort(key=lambda fl: (fl.seed, fl.theorem_id, fl.reason,
                                         -math.inf if fl.margin is None else fl.margin))
    return report


def campaign_specs(n=200, interval=(0.5, 4.0), quad=(16, 32), seed0=0):
    """The default grid: functions cycle fastest, then weights, then dims."""
    specs = []
    nf, nw = len(CAMPAIGN_FUNCTIONS), len(CAMPAIGN_WEIGHTS)
    for i in range(n):
        specs.append(InstanceSpec(
            dim=CAMPAIGN_DIMS[(i // (nf * nw)) % len(CAMPAIGN_DIMS)],
            interval=interval,
            seed=seed0 + i,
            function=CAMPAIGN_FUNCTIONS[i % nf],
            weight=CAMPAIGN_WEIGHTS[(i // nf) % nw],
            quad=quad,
        ))
    return specs


# ---------------------------------------------------------------------------
# serialization


def _fmt_float(x):
    if x is None:
        return "null"
    if not math.isfinite(x):
        raise ValueError("cannot serialize a non-finite float")
    return format(x, ".17g")


def _dump(obj):
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_to_dict(report):
    theorems = {}
    for tid in sorted(report.theorems, key=THEOREMS.index):
        st = report.theorems[tid]
        theorems[tid] = {
            "instances": st.instances,
            "passes": st.passes,
            "skipped": st.skipped,
            "worst_margin": st.worst_margin,
            "tightness": st.tightness_summary(),
        }
    failures = [{"seed": f.seed, "theorem_id": f.theorem_id, "reason": f.reason,
                 "margin": f.margin} for f in report.failures]
    return {"instances": report.instances, "theorems": theorems, "failures": failures}


def to_json(report):
    """Compact JSON with every float written to 17 significant digits."""
    return _dump(report_to_dict(report))


def to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for tid, st in report_to_dict(report)["theorems"].items():
        t = st["tightness"]
        cells = [st["worst_margin"], t["min"], t["median"], t["max"]]
        writer.writerow([tid, st["instances"], st["passes"]]
                        + ["" if c is None else _fmt_float(c) for c in cells])
    return buf.getvalue()


def emit_report(report, format="json", path=None):
    """Serialize ``report``; write to ``path`` when given, and return the text."""
    if format == "json":
        text = to_json(report) + "\n"
    elif format == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None and path != "-":
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text
