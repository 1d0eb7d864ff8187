"""Check results and reports with a canonical JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .scalar import Scalar

__all__ = ["CheckResult", "Report", "compare", "serialize_value", "dumps"]

PASS = "PASS"
FAIL = "FAIL"


def serialize_value(v):
    if v is None:
        return None
    if isinstance(v, Scalar):
        return {"scalar": v.serialize()}
    if hasattr(v, "serialize"):
        return v.serialize()
    return str(v)


@dataclass
class CheckResult:
    check_id: str
    status: str
    counterexample: dict | None = None
    role: str = "check"  # check | negative_control | probe
    note: str | None = None

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        d = {"check_id": self.check_id, "status": self.status, "counterexample": self.counterexample}
        if self.role != "check":
            d["role"] = self.role
        if self.note is not None:
            d["note"] = self.note
        return d


def _is_zero(x):
    if isinstance(x, Scalar):
        return x.is_zero()
    return x.is_zero()


def compare(check_id, lhs, rhs, role="check", note=None) -> CheckResult:
    diff = lhs - rhs
    if _is_zero(diff):
        return CheckResult(check_id, PASS, None, role, note)
    cex = {"lhs": serialize_value(lhs), "rhs": serialize_value(rhs), "diff": serialize_value(diff)}
    return CheckResult(check_id, FAIL, cex, role, note)


def verdict(check_id, ok, role="check", note=None, detail=None) -> CheckResult:
    """Result for a check that has no natural lhs/rhs pair."""
    if ok:
        return CheckResult(check_id, PASS, None, role, note)
    return CheckResult(check_id, FAIL, {"lhs": detail, "rhs": None, "diff": detail}, role, note)


@dataclass
class Report:
    presentation: dict
    checks: list = field(default_factory=list)

    def extend(self, other):
        self.checks.extend(other.checks if isinstance(other, Report) else other)
        return self

    @property
    def ok(self):
        """All ordinary checks pass (negative controls and probes excluded)."""
        return all(c.passed for c in self.checks if c.role == "check")

    def failures(self, role="check"):
        return [c for c in self.checks if c.role == role and not c.passed]

    def get(self, check_id):
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def select(self, prefix):
        return [c for c in self.checks if c.check_id.startswith(prefix)]

    def to_dict(self):
        checks = sorted(self.checks, key=lambda c: c.check_id)
        return {"presentation": self.presentation, "checks": [c.to_dict() for c in checks]}

    def to_json(self):
        return dumps(self.to_dict())

    def summary(self):
        n = len(self.checks)
        bad = self.failures()
        ctl = [c for c in self.checks if c.role == "negative_control"]
        probes = [c for c in self.checks if c.role == "probe"]
        head = ", ".join(f"{k}={v}" for k, v in self.presentation.items())
        lines = [f"[{head}] {n - len(ctl) - len(probes) - len(bad)}/{n - len(ctl) - len(probes)} checks pass"]
        if ctl:
            fired = sum(1 for c in ctl if not c.passed)
            lines.append(f"  negative controls: {fired}/{len(ctl)} fail as expected")
        for c in probes:
            lines.append(f"  probe {c.check_id}: {c.status}" + (f" ({c.note})" if c.note else ""))
        for c in bad[:10]:
            lines.append(f"  FAIL {c.check_id}")
        if len(bad) > 10:
            lines.append(f"  ... {len(bad) - 10} more failures")
        return "\n".join(lines)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
