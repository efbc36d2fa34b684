"""Verification reports: a stable schema shared by all CLI subcommands.

Exact rationals serialize as "p/q" strings so JSON never rounds them;
floats go through repr, keeping reports byte-identical for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__


def jsonable(value):
    """Recursively convert report values to JSON-stable types."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, complex):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in seq]
    return repr(value)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: object = None  # residual, exact value, or count backing the verdict

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = jsonable(self.value)
        if isinstance(shown, float):
            shown = f"{shown:.6g}"
        return f"[{status}] {self.name}: {shown}"


@dataclass
class VerificationReport:
    problem: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None

    def check(self, name: str, passed: bool, value=None) -> bool:
        self.checks.append(Check(name=name, passed=bool(passed), value=value))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "version": __version__,
            "seed": self.seed,
            "inputs": jsonable(self.inputs),
            "outputs": jsonable(self.outputs),
            "checks": [
                {"name": c.name, "passed": c.passed, "value": jsonable(c.value)}
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"== {self.problem} =="]
        for key, value in self.outputs.items():
            lines.append(f"  {key}: {jsonable(value)}")
        lines.extend("  " + c.line() for c in self.checks)
        lines.append(f"  overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
