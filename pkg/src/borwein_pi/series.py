"""Direct summation of the hypergeometric series behind the iterations.

Two kernels are supported::

    SQUARED  sum_k (1/2)_k^2 / k!^2 * z^k          (= 2K(sqrt z)/pi)
    CUBED    sum_k (1/2)_k^3 / k!^3 * z^k

optionally with a linear weight ``a + b*k``.  Everything here is plain
summation with exact rational term ratios, deliberately sharing nothing with
the iteration code except :func:`~borwein_pi.iterations.quad_descend` in the
transformation check, where the descent map is the object under test.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import DivergenceError, DomainError, PrecisionNotReached
from .iterations import quad_descend
from .machin import machin_pi
from .numeric import BigReal, PrecisionContext, relative_error, to_real
from .radicals import RadicalExpr, evaluate, rational, sqrt

DEFAULT_MAX_TERMS = 4000
CLAUSEN_MAX_TERMS = 1_000_000
SLOW_TERMS = 10_000
# consecutive sub-threshold terms needed before truncating
QUIET_TERMS = 3


class SlowConvergenceWarning(UserWarning):
    """A series needed more than ``SLOW_TERMS`` terms."""


class Kernel(enum.Enum):
    SQUARED = 2
    CUBED = 3

    def ratio(self, k: int) -> Tuple[int, int]:
        """Exact coefficient ratio c_{k+1}/c_k as (numerator, denominator)."""
        p = self.value
        return (2 * k + 1) ** p, (2 * k + 2) ** p


def kernel_coefficient(kernel: Kernel, k: int) -> Fraction:
    """c_k built from c_0 = 1 and the term ratio, in exact arithmetic."""
    c = Fraction(1)
    for j in range(k):
        num, den = kernel.ratio(j)
        c = c * num / den
    return c


@dataclass(frozen=True)
class SeriesSpec:
    z: BigReal
    a: BigReal = 1
    b: BigReal = 0
    kernel: Kernel = Kernel.SQUARED


@dataclass(frozen=True)
class SeriesSum:
    moments: Tuple[BigReal, ...]  # sum_k k^m c_k z^k for m = 0..len-1
    terms: int


def sum_moments(
    z: BigReal,
    kernel: Kernel,
    ctx: PrecisionContext,
    order: int = 1,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesSum:
    """Sums of k^m c_k z^k for m = 0..order.

    Truncates once c_k |z|^k max(1, k)^order drops below
    10^-(working_digits + 5) for three consecutive k.
    """
    z = to_real(z, ctx)
    if abs(z) >= 1:
        raise DivergenceError(f"series argument |z| = {abs(z):.6e} is not below 1")
    threshold = ctx.epsilon.scaleb(-6)
    with ctx.local():
        sums = [to_real(0, ctx)] * (order + 1)
        term = to_real(1, ctx)
        quiet = 0
        for k in range(max_terms):
            weight = 1
            for m in range(order + 1):
                sums[m] += term * weight
                weight *= k
            size = abs(term) * max(1, k) ** order
            quiet = quiet + 1 if size < threshold else 0
            if quiet >= QUIET_TERMS or term == 0:
                return SeriesSum(tuple(sums), k + 1)
            num, den = kernel.ratio(k)
            term = term * z * num / den
    raise PrecisionNotReached(
        f"{kernel.name.lower()} series at z = {z:.6e} not converged after {max_terms} terms"
    )


def eval_weighted_series(
    spec: SeriesSpec, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS
) -> BigReal:
    """sum_k c_k (a + b k) z^k for the kernel of ``spec``."""
    return _weighted(spec, ctx, max_terms)[0]


def _weighted(spec: SeriesSpec, ctx: PrecisionContext, max_terms: int) -> Tuple[BigReal, int]:
    a = to_real(spec.a, ctx)
    b = to_real(spec.b, ctx)
    if b == 0:
        result = sum_moments(spec.z, spec.kernel, ctx, order=0, max_terms=max_terms)
        with ctx.local():
            return a * result.moments[0], result.terms
    result = sum_moments(spec.z, spec.kernel, ctx, order=1, max_terms=max_terms)
    s0, s1 = result.moments
    with ctx.local():
        return a * s0 + b * s1, result.terms


def _check_unit_interval(x: BigReal) -> None:
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x:.6e}")


def verify_quadratic_transform(x: BigReal, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS) -> BigReal:
    """|F(x^2) - (1 + t) F(t^2)| with F the squared kernel and t the descent of x."""
    x = to_real(x, ctx)
    _check_unit_interval(x)
    t = quad_descend(x, ctx)
    with ctx.local():
        lhs = eval_weighted_series(SeriesSpec(x * x), ctx, max_terms)
        rhs = (1 + t) * eval_weighted_series(SeriesSpec(t * t), ctx, max_terms)
        return abs(lhs - rhs)


def ode_residual(
    x: BigReal,
    ctx: PrecisionContext,
    side: str = "left",
    max_terms: int = DEFAULT_MAX_TERMS,
) -> BigReal:
    """|((x^2-1) D^2 + 2x^2 D + x^2) f|, D = x d/dx, applied termwise.

    ``side="left"`` takes f(x) = F(x^2).  ``side="right"`` takes
    f = (1+t) F(t^2) with t the descent of x, differentiating in t and
    converting with D_x = 2(1+t)/(1-t) D_t and
    D_x^2 = 4(1+t)^2/(1-t)^2 D_t^2 + 8t(1+t)/(1-t)^3 D_t.
    """
    x = to_real(x, ctx)
    _check_unit_interval(x)
    with ctx.local():
        x_sq = x * x
        if side == "left":
            s0, s1, s2 = sum_moments(x_sq, Kernel.SQUARED, ctx, order=2, max_terms=max_terms).moments
            f, df, d2f = s0, 2 * s1, 4 * s2
        elif side == "right":
            t = quad_descend(x, ctx)
            s0, s1, s2 = sum_moments(t * t, Kernel.SQUARED, ctx, order=2, max_terms=max_terms).moments
            big_f, dt_f, dt2_f = s0, 2 * s1, 4 * s2
            f = (1 + t) * big_f
            dt_g = t * big_f + (1 + t) * dt_f
            dt2_g = t * big_f + 2 * t * dt_f + (1 + t) * dt2_f
            one_minus = 1 - t
            df = 2 * (1 + t) / one_minus * dt_g
            d2f = 4 * (1 + t) ** 2 / one_minus**2 * dt2_g + 8 * t * (1 + t) / one_minus**3 * dt_g
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return abs((x_sq - 1) * d2f + 2 * x_sq * df + x_sq * f)


def verify_clausen(x: BigReal, ctx: PrecisionContext, max_terms: int = CLAUSEN_MAX_TERMS) -> BigReal:
    """|F(x^2)^2 - G(4x^2(1-x^2))| with F squared and G cubed kernels.

    Restricted to 0 < x < 1/sqrt(2), where 4x^2(1-x^2) increases with x and
    the identity holds on the principal branch.  Emits
    :class:`SlowConvergenceWarning` when the cubed series needs more than
    ``SLOW_TERMS`` terms; near x = 1/sqrt(2) it will hit ``max_terms``.
    """
    x = to_real(x, ctx)
    with ctx.local():
        x_sq = x * x
        if not (0 < x and 2 * x_sq < 1):
            raise DomainError(f"Clausen check needs 0 < x < 1/sqrt(2), got {x:.6e}")
        lhs = eval_weighted_series(SeriesSpec(x_sq), ctx, max_terms)
        rhs, terms = _weighted(SeriesSpec(4 * x_sq * (1 - x_sq), kernel=Kernel.CUBED), ctx, max_terms)
        if terms > SLOW_TERMS:
            warnings.warn(
                f"Clausen right side at x = {x:.6g} needed {terms} terms",
                SlowConvergenceWarning,
                stacklevel=2,
            )
        return abs(lhs * lhs - rhs)


# The five products of two squared-kernel sums that evaluate to 1/pi:
# (argument z, weight a, weight b) of the second factor; the first factor is
# unweighted.
_R2, _R3 = sqrt(2), sqrt(3)
IDENTITY_SERIES = {
    1: ((3 - 2 * _R2) ** 2, 4 * (5 * _R2 - 7), 16 * (3 * _R2 - 4)),
    2: (rational(1, 2), rational(0), rational(1)),
    3: ((_R2 - 1) ** 2, 3 - 2 * _R2, 8 - 4 * _R2),
    4: ((2 - _R3) / 4, rational(1, 4), rational(3, 2) + _R3),
    5: (2 * _R2 - 2, _R2 - rational(3, 2), 3 * _R2 - 4),
}


def identity_series(identity_id: int) -> Tuple[RadicalExpr, RadicalExpr, RadicalExpr]:
    try:
        return IDENTITY_SERIES[identity_id]
    except (KeyError, TypeError):
        raise DomainError(f"identity must be 1..5, got {identity_id!r}") from None


def identity_product(identity_id: int, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS) -> BigReal:
    z_expr, a_expr, b_expr = identity_series(identity_id)
    z = evaluate(z_expr, ctx)
    # one pass gives both the plain and the k-weighted sum
    s0, s1 = sum_moments(z, Kernel.SQUARED, ctx, order=1, max_terms=max_terms).moments
    with ctx.local():
        return s0 * (evaluate(a_expr, ctx) * s0 + evaluate(b_expr, ctx) * s1)


def verify_identity_product(identity_id: int, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS) -> BigReal:
    """Relative error of the identity's series product against 1/pi (Machin)."""
    product = identity_product(identity_id, ctx, max_terms)
    with ctx.local():
        reciprocal_pi = 1 / machin_pi(ctx)
    return relative_error(product, reciprocal_pi, ctx)


def ramanujan_sum(ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS) -> Tuple[BigReal, int]:
    """sum_k (1/2)_k^3/k!^3 (5 + 42k) / 64^k, which equals 16/pi; also returns the term count."""
    z = to_real(Fraction(1, 64), ctx)
    return _weighted(SeriesSpec(z, 5, 42, Kernel.CUBED), ctx, max_terms)


def verify_ramanujan(ctx: PrecisionContext) -> BigReal:
    value, _ = ramanujan_sum(ctx)
    with ctx.local():
        expected = 16 / machin_pi(ctx)
    return relative_error(value, expected, ctx)


def term_count(z: BigReal, ctx: PrecisionContext, kernel: Kernel = Kernel.SQUARED, order: int = 0) -> int:
    return sum_moments(z, kernel, ctx, order=order, max_terms=CLAUSEN_MAX_TERMS).terms

