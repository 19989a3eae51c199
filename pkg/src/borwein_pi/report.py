"""Digit extraction, reference comparison and convergence reports."""

from __future__ import annotations

import decimal
import json
import re
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from .errors import BorweinPiError
from .iterations import RunResult


class ReferenceFormatError(BorweinPiError, ValueError):
    """Reference digit text is empty or not a plain decimal expansion."""


_REFERENCE = re.compile(r"^(\d+)\.(\d*)$")


def pi_digits(value: decimal.Decimal, digits: int) -> str:
    """``value`` truncated (not rounded) to ``digits`` places after the point."""
    ctx = decimal.Context(prec=value.adjusted() + digits + 2, rounding=decimal.ROUND_DOWN)
    return str(value.quantize(decimal.Decimal(1).scaleb(-digits), context=ctx))


def parse_reference(text: str) -> str:
    compact = "".join(text.split())
    match = _REFERENCE.match(compact)
    if not match:
        if not compact:
            raise ReferenceFormatError("reference digits are empty")
        raise ReferenceFormatError(f"reference is not a decimal expansion: {compact[:20]!r}...")
    return compact


def compare_digits(value: decimal.Decimal | str, reference: str) -> int:
    """Number of leading fractional digits of ``value`` that agree with ``reference``.

    Whitespace in ``reference`` is ignored.  Differing integer parts give 0.
    """
    ref = parse_reference(reference)
    computed = value if isinstance(value, str) else str(value)
    computed = "".join(computed.split())
    if not _REFERENCE.match(computed):
        raise ReferenceFormatError(f"computed value is not a plain decimal: {computed[:20]!r}")
    ref_int, ref_frac = ref.split(".")
    val_int, val_frac = computed.split(".")
    if ref_int != val_int:
        return 0
    matched = 0
    for mine, theirs in zip(val_frac, ref_frac):
        if mine != theirs:
            break
        matched += 1
    return matched


def group_digits(text: str, group: int = 10, per_line: int = 50) -> str:
    """Lay out "3.1415..." as the integer part, then lines of grouped digits."""
    integer, _, fraction = text.partition(".")
    lines = [integer + "."]
    for start in range(0, len(fraction), per_line):
        chunk = fraction[start : start + per_line]
        lines.append(" ".join(chunk[i : i + group] for i in range(0, len(chunk), group)))
    return "\n".join(lines)


@dataclass
class ConvergenceRow:
    n: int
    est_digits: float
    ms: float


@dataclass
class ConvergenceReport:
    scheme: str
    identity: Optional[int]
    digits_requested: int
    digits_verified: int
    iterations: int
    pi: str
    per_iteration: List[ConvergenceRow] = field(default_factory=list)
    oracle: str = "machin"

    @classmethod
    def from_run(cls, result: RunResult, digits_verified: int, oracle: str = "machin") -> "ConvergenceReport":
        rows = [ConvergenceRow(rec.n, round(rec.est_digits, 2), round(rec.seconds * 1000, 3)) for rec in result.history]
        return cls(
            scheme=result.scheme.value,
            identity=result.identity_id,
            digits_requested=result.target_digits,
            digits_verified=digits_verified,
            iterations=result.iterations_used,
            pi=pi_digits(result.pi, result.target_digits),
            per_iteration=rows,
            oracle=oracle,
        )

    @property
    def ok(self) -> bool:
        return self.digits_verified >= self.digits_requested

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ConvergenceReport":
        data = json.loads(text)
        data["per_iteration"] = [ConvergenceRow(**row) for row in data["per_iteration"]]
        return cls(**data)

    def to_text(self) -> str:
        source = f"identity {self.identity}" if self.identity is not None else "user set"
        lines = [
            f"scheme {self.scheme}, {source}, {self.digits_requested} digits requested",
            f"{'n':>4} {'est. digits':>12} {'ms':>10}",
        ]
        for row in self.per_iteration:
            lines.append(f"{row.n:>4} {row.est_digits:>12.1f} {row.ms:>10.3f}")
        status = "ok" if self.ok else "MISMATCH"
        lines.append(
            f"{self.iterations} iterations, {self.digits_verified} digits verified against {self.oracle} ({status})"
        )
        lines.append(group_digits(self.pi))
        return "\n".join(lines)
