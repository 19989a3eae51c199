"""Reference value of pi from Machin's formula in integer fixed point.

    pi = 16 arctan(1/5) - 4 arctan(1/239)

Only Python integers are used, so the result is independent of the
:mod:`decimal` arithmetic the iterations run on.
"""

from __future__ import annotations

import decimal

from .numeric import BigReal, PrecisionContext

# fixed-point digits carried beyond the working precision
EXTRA_DIGITS = 10


def arctan_inverse(x: int, one: int) -> int:
    """arctan(1/x) scaled by ``one``, by its Taylor series; x >= 2."""
    x_sq = x * x
    power = one // x
    total = power
    k = 1
    sign = -1
    while power:
        power //= x_sq
        total += sign * (power // (2 * k + 1))
        sign = -sign
        k += 1
    return total


def machin_pi_scaled(digits: int) -> int:
    """floor-ish of pi * 10^digits (error below a few units)."""
    one = 10 ** (digits + EXTRA_DIGITS)
    pi = 16 * arctan_inverse(5, one) - 4 * arctan_inverse(239, one)
    return pi // 10**EXTRA_DIGITS


def machin_pi(ctx: PrecisionContext) -> BigReal:
    digits = ctx.working_digits + EXTRA_DIGITS
    scaled = machin_pi_scaled(digits)
    return ctx.decimal_context().scaleb(decimal.Decimal(scaled), -digits)
