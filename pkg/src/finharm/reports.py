"""Report value objects shared across the verification modules, with CSV
serialization. Every writer uses repr-exact float formatting and a fixed row
order so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

OK = "ok"
HYPOTHESIS_FAILED = "hypothesis-failed"
CONCLUSION_FAILED = "conclusion-failed"


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, frozenset):
        return sorted(_jsonable(v) for v in obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        try:
            return obj.item()
        except (AttributeError, ValueError):
            pass
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one displayed inequality or inclusion.

    status is "ok" when all hypotheses and the conclusion hold,
    "hypothesis-failed" when an antecedent is violated (no claim is being
    falsified then), and "conclusion-failed" for a genuine counterexample.
    holds is True exactly when status == "ok"; witness is present iff not.
    """

    statement: str
    params: dict
    lhs: float
    rhs: float
    holds: bool
    status: str = OK
    witness: dict | None = None

    @staticmethod
    def hypothesis_failed(statement: str, params: dict, reason: str, **extra) -> "BoundReport":
        return BoundReport(
            statement,
            params,
            math.nan,
            math.nan,
            False,
            HYPOTHESIS_FAILED,
            {"status": HYPOTHESIS_FAILED, "reason": reason, **extra},
        )

    @staticmethod
    def concluded(statement: str, params: dict, lhs: float, rhs: float, ok: bool, witness=None):
        if ok:
            return BoundReport(statement, params, lhs, rhs, True, OK, None)
        w = {"status": CONCLUSION_FAILED}
        if witness:
            w.update(witness)
        return BoundReport(statement, params, lhs, rhs, False, CONCLUSION_FAILED, w)


def write_bound_reports(reports, path):
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(["statement", "params", "lhs", "rhs", "holds", "witness"])
        for r in reports:
            w.writerow(
                [
                    r.statement,
                    to_json(r.params),
                    fmt(r.lhs),
                    fmt(r.rhs),
                    str(bool(r.holds)).lower(),
                    to_json(r.witness) if r.witness is not None else "",
                ]
            )


@dataclass(frozen=True)
class CertCheck:
    name: str
    passed: bool
    slack: float
    note: str = ""
    witness: dict | None = None


@dataclass(frozen=True)
class ApproxCertificate:
    """Result of verifying approximation / adjointness axioms.

    certified is True only when every individual check passed; a failed
    certificate carries the failing checks with witnesses (a refusal).
    """

    subject: str
    checks: tuple[CertCheck, ...]
    params: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CertCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def write_certificates(certs, path):
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(["subject", "params", "check", "passed", "slack", "note", "witness"])
        for cert in certs:
            for c in cert.checks:
                w.writerow(
                    [
                        cert.subject,
                        to_json(cert.params),
                        c.name,
                        str(bool(c.passed)).lower(),
                        fmt(c.slack),
                        c.note,
                        to_json(c.witness) if c.witness is not None else "",
                    ]
                )


@dataclass(frozen=True)
class LiftingReport:
    """Grid-checked lifting/approximation deviation summary."""

    mode: str  # "weak-lifting" | "lifting" | "approximation"
    delta: float
    worst_deviation: float
    exceptional_mass: float
    grid: dict
    passed: bool
    witness: dict | None = None


@dataclass(frozen=True)
class TransformRow:
    chi: tuple
    ref: complex
    mft_err: float
    dft_err: float
    bound: float
    ok: bool
    covered: bool
    match_slack: float


@dataclass(frozen=True)
class TransformErrorReport:
    rows: tuple
    grid: dict
    sup_mft_err: float
    sup_dft_err: float
    bound: float
    passed: bool


def write_transform_report(report: TransformErrorReport, path):
    width = max((len(r.chi) for r in report.rows), default=1)
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(
            [f"chi_{j}" for j in range(width)]
            + ["ref_re", "ref_im", "mft_err", "dft_err", "bound", "pass"]
        )
        for r in report.rows:
            coords = list(r.chi) + [""] * (width - len(r.chi))
            w.writerow(
                [fmt(c) for c in coords]
                + [
                    fmt(r.ref.real),
                    fmt(r.ref.imag),
                    fmt(r.mft_err),
                    fmt(r.dft_err),
                    fmt(r.bound),
                    str(bool(r.ok)).lower(),
                ]
            )


def write_series(points, path, header=("x", "y")):
    """Two-column plot-data series."""
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(list(header))
        for x, y in points:
            w.writerow([fmt(x), fmt(y)])


@dataclass(frozen=True)
class FitResult:
    character: tuple
    closeness: float
    strategy: str
