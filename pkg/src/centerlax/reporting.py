"""Small shared containers for verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f"  [{self.witness}]" if self.witness and not self.passed else ""
        return f"{status}  {self.name}{suffix}"


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str | None = None) -> None:
        self.checks.append(CheckResult(name, passed, witness))

    def extend(self, other: "VerifyReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]
