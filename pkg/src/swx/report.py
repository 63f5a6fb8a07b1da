"""Result records with a canonical machine format and a text rendering.

Machine output is JSON with sorted keys; rationals are strings "p/q" with
q > 0 in lowest terms ("p" when q = 1).  Everything stored in a Report is
already JSON-native, so parsing the machine form returns an equal Report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exterior import Multivector


def fmt_q(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_q(text: str) -> Fraction:
    return Fraction(text)


def blade_key(blade: tuple[int, ...]) -> str:
    return ",".join(map(str, blade))


def multivector_record(m: Multivector) -> dict[str, str]:
    return {blade_key(k): fmt_q(v) for k, v in sorted(m.terms.items())}


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "warnings": self.warnings,
        }

    def to_machine(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_machine(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls(doc["command"], doc["inputs"], doc["outputs"], doc["warnings"])

    def to_text(self) -> str:
        lines = [f"== swx {self.command} =="]
        for key in sorted(self.inputs):
            lines.append(f"  {key}: {_scalar_text(self.inputs[key])}")
        lines.append("")
        for key in sorted(self.outputs):
            value = self.outputs[key]
            if key == "rows" and isinstance(value, list):
                lines.extend(_table(value))
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                for k in sorted(value):
                    lines.append(f"  {k}: {_scalar_text(value[k])}")
            else:
                lines.append(f"{key}: {_scalar_text(value)}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _scalar_text(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_scalar_text(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar_text(v[k])}" for k in sorted(v)) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def _table(rows: list[dict[str, Any]]) -> list[str]:
    if not rows:
        return ["(no rows)"]
    cols = list(rows[0])
    cells = [[_scalar_text(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out.append("  ".join("-" * w for w in widths))
    out.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells)
    return out
