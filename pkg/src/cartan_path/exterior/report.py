"""Residual reports produced by the verification pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..rational import format_rat
from .forms import InvariantForm


class VerificationError(RuntimeError):
    """A residual that must vanish did not; this indicates an internal bug."""

    def __init__(self, report: "Report"):
        self.report = report
        failed = ", ".join(label for label, _ in report.failures())
        super().__init__(f"{report.title}: nonzero residuals in {failed}")


@dataclass
class Report:
    title: str
    checks: list[tuple[str, object]] = field(default_factory=list)
    values: dict[str, Fraction] = field(default_factory=dict)
    names: tuple[str, ...] = ()

    def add(self, label: str, residual) -> None:
        self.checks.append((label, residual))

    def failures(self) -> list[tuple[str, object]]:
        return [(label, r) for label, r in self.checks if r]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def raise_if_failed(self) -> None:
        if not self.ok:
            raise VerificationError(self)

    def lines(self) -> list[str]:
        out = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for label, r in self.checks:
            shown = r.format(self.names or None) if isinstance(r, InvariantForm) else format_rat(r)
            out.append(f"  {'ok  ' if not r else 'FAIL'} {label}: residual {shown}")
        for key, value in self.values.items():
            out.append(f"  {key} = {format_rat(value)}")
        return out

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {
                    "label": label,
                    "residual": r.format(self.names or None) if isinstance(r, InvariantForm) else format_rat(r),
                    "ok": not r,
                }
                for label, r in self.checks
            ],
            "values": {k: format_rat(v) for k, v in self.values.items()},
        }
