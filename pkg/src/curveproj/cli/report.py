"""Reports: canonical JSON and plain text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

NUMERIC_DIGITS = 30

# exit codes
EXIT_YES, EXIT_NO, EXIT_UNDECIDED, EXIT_INPUT, EXIT_FAILURE = 0, 1, 2, 3, 4

_EXIT = {
    "Yes": EXIT_YES, "Equivalent": EXIT_YES,
    "No": EXIT_NO, "NotEquivalent": EXIT_NO,
    "ComplexOnly": EXIT_UNDECIDED, "EquivalentOverComplexOnly": EXIT_UNDECIDED,
    "Undetermined": EXIT_UNDECIDED,
}


def rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def numeric(v) -> dict:
    out = {"kind": "numeric", "re": mpmath.nstr(mpmath.re(v), NUMERIC_DIGITS)}
    if mpmath.im(v) != 0:
        out["im"] = mpmath.nstr(mpmath.im(v), NUMERIC_DIGITS)
    return out


@dataclass
class Report:
    command: list[str]
    verdict: str | None = None
    result: dict = field(default_factory=dict)
    trace: list[str] | None = None
    error: dict | None = None
    timing: float | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_INPUT if self.error["type"] in _INPUT_ERRORS else EXIT_FAILURE
        return _EXIT.get(self.verdict, EXIT_YES)

    def as_dict(self, timing: bool = True) -> dict:
        d = {"command": self.command, "verdict": self.verdict, "result": self.result}
        if self.trace is not None:
            d["trace"] = self.trace
        if self.error is not None:
            d["error"] = self.error
        if timing and self.timing is not None:
            d["timing"] = round(self.timing, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = []
        if self.error is not None:
            lines.append(f"error ({self.error['type']}): {self.error['message']}")
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        for key in sorted(self.result):
            lines.extend(_text_item(key, self.result[key]))
        if self.trace:
            lines.append("trace:")
            lines.extend(f"  {step}" for step in self.trace)
        return "\n".join(lines) + "\n"


_INPUT_ERRORS = {"ParseError", "ArityError", "NonRationalExponent", "LengthMismatch", "DegenerateInput",
                 "LineCurve", "SingularOnly", "FileNotFoundError", "UsageError"}


def _text_item(key: str, value) -> list[str]:
    if isinstance(value, list) and value and isinstance(value[0], dict):
        out = [f"{key}:"]
        for item in value:
            out.append("  " + ", ".join(f"{k}={_short(v)}" for k, v in sorted(item.items())))
        return out
    return [f"{key}: {_short(value)}"]


def _short(v) -> str:
    if isinstance(v, dict):
        if v.get("kind") == "numeric":
            return v["re"] + (f" + {v['im']}*I" if "im" in v else "")
        return "{" + ", ".join(f"{k}={_short(x)}" for k, x in sorted(v.items())) + "}"
    if isinstance(v, list):
        if v and isinstance(v[0], list):
            return "[" + "; ".join(" ".join(str(x) for x in r) for r in v) + "]"
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)
