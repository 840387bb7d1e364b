"""Pass/fail reports produced by the lemma checks."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckReport:
    name: str
    assertions: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    skipped: str | None = None

    def check(self, what: str, ok: bool, detail=None) -> bool:
        self.assertions.append((what, bool(ok), detail))
        return bool(ok)

    def skip(self, reason: str):
        self.skipped = reason

    def merge(self, other: "CheckReport", prefix: str | None = None):
        tag = prefix or other.name
        for what, ok, detail in other.assertions:
            self.assertions.append((f"{tag}: {what}", ok, detail))
        if other.skipped and not self.skipped:
            self.skipped = f"{tag}: {other.skipped}"

    @property
    def status(self) -> str:
        if any(not ok for _, ok, _ in self.assertions):
            return FAIL
        if self.skipped is not None:
            return SKIP
        return PASS if self.assertions else SKIP

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def failures(self) -> list[str]:
        return [what for what, ok, _ in self.assertions if not ok]

    def summary_line(self) -> str:
        counters = " ".join(f"{k}={v}" for k, v in sorted(self.counters.items()))
        ok = sum(ok for _, ok, _ in self.assertions)
        line = f"{self.name}\t{self.status}\tassertions={ok}/{len(self.assertions)}"
        if counters:
            line += " " + counters
        if self.skipped:
            line += f"\tskipped: {self.skipped}"
        return line

    def render(self) -> str:
        lines = [f"[{self.status.upper()}] {self.name}"]
        for what, ok, detail in self.assertions:
            mark = "ok  " if ok else "FAIL"
            lines.append(f"  {mark} {what}" + (f"  ({detail})" if detail is not None else ""))
        if self.skipped:
            lines.append(f"  skipped: {self.skipped}")
        return "\n".join(lines)
