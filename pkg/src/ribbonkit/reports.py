"""Validation report containers shared by all verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .scalar import format_scalar


@dataclass
class Instance:
    """One failing (or noteworthy) equation instance.

    ``key`` is the index tuple of the instance, ``lhs``/``rhs`` the two sides.
    """

    kind: str
    key: tuple
    lhs: Any = None
    rhs: Any = None

    def residual(self) -> float:
        if self.lhs is None or self.rhs is None:
            return float("nan")
        return abs(complex(self.lhs) - complex(self.rhs))

    def to_dict(self, labels=None) -> dict:
        key = [labels[k] if labels is not None and isinstance(k, int) else k for k in self.key]
        out = {"kind": self.kind, "key": key}
        if self.lhs is not None:
            out["lhs"] = format_scalar(self.lhs)
            out["rhs"] = format_scalar(self.rhs)
        return out


@dataclass
class ValidationReport:
    """Outcome of one verifier sweep.

    Instances are checked in lexicographic order of their index tuples, so
    ``failures`` is deterministic for fixed input.
    """

    name: str
    checked: int = 0
    failures: list[Instance] = field(default_factory=list)
    max_residual: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, kind: str, key: tuple, ok: bool, lhs=None, rhs=None) -> None:
        self.checked += 1
        if lhs is not None and rhs is not None:
            r = abs(complex(lhs) - complex(rhs))
            if r > self.max_residual:
                self.max_residual = r
        if not ok:
            self.failures.append(Instance(kind, key, lhs, rhs))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.max_residual = max(self.max_residual, other.max_residual)
        return self

    def first_failure(self) -> Instance | None:
        return self.failures[0] if self.failures else None

    def to_dict(self, labels=None, max_failures: int = 20) -> dict:
        return {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": len(self.failures),
            "witnesses": [f.to_dict(labels) for f in self.failures[:max_failures]],
            "max_residual": float(f"{self.max_residual:.3e}"),
            **({"notes": self.notes} if self.notes else {}),
        }

    def __str__(self):
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checked} checked"
        if self.failures:
            f = self.failures[0]
            head += f", {len(self.failures)} failing; first {f.kind}{f.key}"
        return head + ")"
