"""Pass/fail reports produced by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, NA, NOTE = "pass", "fail", "n/a", "note"


@dataclass
class Entry:
    check: str
    status: str
    witness: str | None = None
    residual: str | None = None

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.residual is not None:
            out["residual"] = self.residual
        return out


@dataclass
class Report:
    name: str = ""
    entries: list = field(default_factory=list)

    def record(self, check, passed, witness=None, residual=None):
        self.entries.append(Entry(check, PASS if passed else FAIL, None if passed else witness, None if passed else residual))
        return passed

    def ok(self, check):
        return self.record(check, True)

    def fail(self, check, witness=None, residual=None):
        return self.record(check, False, witness, residual)

    def skip(self, check, reason=None):
        self.entries.append(Entry(check, NA, reason))

    def note(self, check, holds, witness=None, residual=None):
        """Informational entry: evaluated and shown, but never counted as a failure."""
        text = "holds" if holds else "does not hold"
        if witness and not holds:
            text += f" at {witness}"
        self.entries.append(Entry(check, NOTE, text, None if holds else residual))
        return holds

    def extend(self, other: "Report", prefix: str = ""):
        for e in other.entries:
            self.entries.append(Entry(prefix + e.check, e.status, e.witness, e.residual))
        return self

    @property
    def passed(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def status(self, check) -> str:
        for e in self.entries:
            if e.check == check:
                return e.status
        raise KeyError(check)

    def get(self, check) -> Entry:
        for e in self.entries:
            if e.check == check:
                return e
        raise KeyError(check)

    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    def sorted(self) -> "Report":
        return Report(self.name, sorted(self.entries, key=lambda e: e.check))

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

    def __str__(self):
        lines = []
        for e in self.entries:
            line = f"[{e.status.upper():4}] {e.check}"
            if e.status == NOTE:
                line += f": {e.witness}"
            elif e.witness:
                line += f"  witness: {e.witness}"
            if e.residual:
                line += f"  residual: {e.residual}"
            lines.append(line)
        return "\n".join(lines)
