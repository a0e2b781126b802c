"""Verification reports shared by the checking modules and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Case:
    i: int | None
    j: int | None
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "pass": self.passed, "detail": self.detail}


@dataclass
class Report:
    claim: str
    params: dict
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "cases": [c.to_json() for c in self.cases],
            "pass": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def render(self) -> str:
        lines = [f"{self.claim} {self.params}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.cases:
            if c.i is not None and c.j is not None:
                where = f"({c.i},{c.j})"
            elif c.j is not None:
                where = f"(j={c.j})"
            else:
                where = f"(i={c.i})" if c.i is not None else "(all)"
            lines.append(f"  {'ok ' if c.passed else 'BAD'} {where} {c.detail}")
        return "\n".join(lines)


def merge(claim: str, params: dict, reports: list[Report]) -> Report:
    """Concatenate the cases of several reports, prefixing each detail with its params."""
    out = Report(claim, params)
    for rep in reports:
        for c in rep.cases:
            tag = ",".join(f"{k}={v}" for k, v in rep.params.items())
            out.cases.append(Case(c.i, c.j, c.passed, f"[{tag}] {c.detail}"))
    return out
