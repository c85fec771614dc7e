"""Check reports shared by the library and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    check: str
    arity: int
    passed: bool
    residual_terms: int = 0
    detail: str = ""

    def machine(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"{self.check}\t{self.arity}\t{status}\t{self.residual_terms}"

    def text(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        line = f"[{status}] {self.check} n={self.arity}: residual {self.residual_terms}"
        return line + (f" ({self.detail})" if self.detail else "")


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)
    payload: dict = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def first_failure(self) -> CheckRecord | None:
        fails = self.failures
        return fails[0] if fails else None

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def extend(self, other: "Report") -> "Report":
        self.records.extend(other.records)
        self.payload.update(other.payload)
        return self

    def by_arity(self, check: str | None = None) -> dict[int, CheckRecord]:
        return {r.arity: r for r in self.records if check is None or r.check == check}

    def machine(self) -> str:
        return "\n".join(r.machine() for r in self.records)

    def text(self) -> str:
        return "\n".join(r.text() for r in self.records)

    def __bool__(self):
        return self.passed
