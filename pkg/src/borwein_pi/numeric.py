"""Arbitrary-precision real arithmetic on top of :mod:`decimal`.

Every public routine takes a :class:`PrecisionContext` and works on
:class:`decimal.Decimal` values rounded to ``ctx.working_digits``
significant digits.  Results are faithful to within a few units in the last
place; rounding mode is whatever :mod:`decimal` uses (half-even).
"""

from __future__ import annotations

import decimal
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import DomainError

BigReal = decimal.Decimal
RealLike = Union[decimal.Decimal, int, Fraction, str]

BASE_GUARD_DIGITS = 32

_TRAPS = [
    decimal.InvalidOperation,
    decimal.DivisionByZero,
    decimal.Overflow,
]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for a computation, in decimal digits."""

    target_digits: int
    guard_digits: int = 0

    def __post_init__(self) -> None:
        if int(self.target_digits) != self.target_digits or self.target_digits < 1:
            raise DomainError(f"target_digits must be a positive integer, got {self.target_digits!r}")
        if int(self.guard_digits) != self.guard_digits or self.guard_digits < 0:
            raise DomainError(f"guard_digits must be a non-negative integer, got {self.guard_digits!r}")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def epsilon(self) -> decimal.Decimal:
        """One unit in the last working place, relative to 1."""
        return decimal.Decimal(1).scaleb(1 - self.working_digits)

    def decimal_context(self) -> decimal.Context:
        return decimal.Context(
            prec=self.working_digits,
            rounding=decimal.ROUND_HALF_EVEN,
            Emin=decimal.MIN_EMIN,
            Emax=decimal.MAX_EMAX,
            traps=_TRAPS,
        )

    @contextmanager
    def local(self) -> Iterator[decimal.Context]:
        """Make this precision the thread-local decimal context."""
        with decimal.localcontext(self.decimal_context()) as dctx:
            yield dctx

    def widened(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.target_digits, self.guard_digits + extra)


def with_precision(target_digits: int, guard_digits: int = BASE_GUARD_DIGITS) -> PrecisionContext:
    return PrecisionContext(target_digits, guard_digits)


def default_guard(planned_iterations: int) -> int:
    """Guard digits for a run of ``planned_iterations`` steps.

    Each step can lose O(1) digits to rounding, so a linear cushion on top of
    a fixed base is enough.
    """
    return BASE_GUARD_DIGITS + 2 * planned_iterations


def to_real(value: RealLike, ctx: PrecisionContext) -> BigReal:
    """Round ``value`` to the working precision of ``ctx``."""
    dctx = ctx.decimal_context()
    if isinstance(value, Fraction):
        return dctx.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact int, Fraction, str or Decimal")
    return dctx.plus(decimal.Decimal(value))


def _check_finite(x: BigReal) -> None:
    if not x.is_finite():
        raise DomainError(f"non-finite value {x}")


def sqrt(x: RealLike, ctx: PrecisionContext) -> BigReal:
    x = to_real(x, ctx)
    _check_finite(x)
    if x < 0:
        raise DomainError(f"square root of negative number {x}")
    return ctx.decimal_context().sqrt(x)


def root4(x: RealLike, ctx: PrecisionContext) -> BigReal:
    x = to_real(x, ctx)
    _check_finite(x)
    if x < 0:
        raise DomainError(f"fourth root of negative number {x}")
    # Two correctly rounded square roots: the inner rounding error is halved
    # by the outer root, so the total stays under 1 ulp.
    dctx = ctx.decimal_context()
    return dctx.sqrt(dctx.sqrt(x))


def digits_of_agreement(x: BigReal, y: BigReal, ctx: PrecisionContext) -> float:
    """-log10 |x - y|, capped at the working precision (``inf`` never escapes)."""
    diff = abs(ctx.decimal_context().subtract(x, y))
    if diff == 0:
        return float(ctx.working_digits)
    # a digit count needs only a few significant figures
    coarse = decimal.Context(prec=20, Emin=decimal.MIN_EMIN, Emax=decimal.MAX_EMAX)
    return min(float(ctx.working_digits), -float(coarse.log10(coarse.plus(diff))))


def relative_error(x: BigReal, reference: BigReal, ctx: PrecisionContext) -> BigReal:
    dctx = ctx.decimal_context()
    if reference == 0:
        return abs(x)
    return abs(dctx.divide(dctx.subtract(x, reference), reference))
