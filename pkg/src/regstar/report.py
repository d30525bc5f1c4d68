"""Verification reports shared by every axiom suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class StructuralError(ValueError):
    """Input tables are malformed (wrong shape, index out of range, missing entries)."""


@dataclass
class VerificationReport:
    """Outcome of an axiom suite.

    ``results`` keeps laws in the order they were checked. A failing law stores
    the first witness found in canonical scan order.
    """

    subject: str
    results: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    structural_error: str | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    def record(self, law: str, witness: Any = None) -> bool:
        """Record a law; ``witness is None`` means it holds."""
        ok = witness is None
        # a law checked twice keeps its first failure
        if law in self.results and not self.results[law]:
            return ok
        self.results[law] = ok
        if not ok:
            self.witnesses[law] = witness
        return ok

    @property
    def ok(self) -> bool:
        return self.structural_error is None and all(self.results.values())

    @property
    def failed(self) -> list[str]:
        return [law for law, ok in self.results.items() if not ok]

    def first_failure(self) -> tuple[str, Any] | None:
        if self.structural_error is not None:
            return ("structure", self.structural_error)
        for law in self.failed:
            return (law, self.witnesses[law])
        return None

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        parts = [f"{law}={'ok' if ok else 'FAIL'}" for law, ok in self.results.items()]
        line = f"verify {self.subject}: {status}"
        if self.structural_error is not None:
            line += f" structural error: {self.structural_error}"
        if parts:
            line += " [" + " ".join(parts) + "]"
        return line

    def lines(self) -> list[str]:
        out = [self.summary()]
        for law in self.failed:
            out.append(f"  witness {law}: {self.witnesses[law]}")
        return out

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        if other.structural_error is not None and self.structural_error is None:
            self.structural_error = other.structural_error
        for law, ok in other.results.items():
            self.record(prefix + law, None if ok else other.witnesses[law])
