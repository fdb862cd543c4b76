"""Structured pass/fail records for verified identities."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field


def fmt_value(x) -> str:
    """Render a value (complex, float, exact object) as stable text."""
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


@dataclass
class CheckReport:
    """Record of one verified identity: inputs, both sides, error, verdict."""

    check_id: str
    params: dict = field(default_factory=dict)
    lhs: str = ""
    rhs: str = ""
    abs_err: object = math.inf   # float, or "exact" for structural equality
    tol: float = 0.0
    passed: bool = False
    runtime_ms: int = 0

    def to_json(self) -> str:
        rec = {
            "check_id": self.check_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err if isinstance(self.abs_err, str) else float(self.abs_err),
            "tol": self.tol,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }
        return json.dumps(rec, sort_keys=False)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self.t0) * 1000))
        return False


def numeric_report(check_id, params, lhs, rhs, tol, runtime_ms=0) -> CheckReport:
    err = abs(lhs - rhs)
    return CheckReport(
        check_id=check_id,
        params=params,
        lhs=fmt_value(lhs),
        rhs=fmt_value(rhs),
        abs_err=err,
        tol=tol,
        passed=err <= tol,
        runtime_ms=runtime_ms,
    )


def exact_report(check_id, params, equal, lhs="", rhs="", runtime_ms=0) -> CheckReport:
    return CheckReport(
        check_id=check_id,
        params=params,
        lhs=lhs,
        rhs=rhs,
        abs_err="exact" if equal else "mismatch",
        tol=0.0,
        passed=bool(equal),
        runtime_ms=runtime_ms,
    )
