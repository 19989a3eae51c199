"""Numerical checks of the WZ identity pairs behind the five 1/pi products.

Each pair has a free parameter k::

    first:   sum_n P(n,k) z^n                    = C1 * g^k * R1(k)
    second:  sum_n P(n,k) z^n (al n + be k + ga) = C2 * g^k * R2(k)

with ``P(n,k) = (u1)_n (u2)_n / ((l)_n n!)``, each of ``u1, u2, l`` affine in
k, and ``R1, R2`` ratios of Pochhammer symbols in k.  At k = 0 the right
sides reduce to C1 and C2, whose product is 1/pi.  Only non-negative integer
k are checked, so every Pochhammer on the right is a finite rational product.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import DivergenceError, DomainError, PrecisionNotReached
from .machin import machin_pi
from .numeric import BigReal, PrecisionContext, to_real
from .radicals import RadicalExpr, evaluate, rational, sqrt

DEFAULT_K_VALUES = (0, 1, 2, 3)
DEFAULT_MAX_TERMS = 20_000

# (constant, coefficient of k)
Affine = Tuple[Fraction, int]

HALF = Fraction(1, 2)


class Member(enum.Enum):
    FIRST = 1
    SECOND = 2


def pochhammer(v: Fraction, k: int) -> Fraction:
    result = Fraction(1)
    for j in range(k):
        result *= v + j
    return result


@dataclass(frozen=True)
class WzIdentitySpec:
    identity_id: int
    z: RadicalExpr
    upper: Tuple[Affine, Affine]
    lower: Affine
    geometric: RadicalExpr
    rhs_upper: Tuple[Fraction, ...]
    first_lower: Tuple[Fraction, ...]
    second_lower: Tuple[Fraction, ...]
    # bracket al*n + be*k + ga of the second member
    bracket: Tuple[RadicalExpr, RadicalExpr, RadicalExpr]

    def rhs_factor(self, member: Member, k: int, ctx: PrecisionContext) -> BigReal:
        """g^k * prod (rhs_upper)_k / prod (lower)_k; exactly 1 at k = 0."""
        if k < 0:
            raise DomainError("only non-negative integer k are supported")
        lowers = self.first_lower if member is Member.FIRST else self.second_lower
        ratio = Fraction(1)
        for v in self.rhs_upper:
            ratio *= pochhammer(v, k)
        for v in lowers:
            ratio /= pochhammer(v, k)
        with ctx.local():
            return evaluate(self.geometric, ctx) ** k * to_real(ratio, ctx)

    def lhs(self, member: Member, k: int, ctx: PrecisionContext, max_terms: int = DEFAULT_MAX_TERMS) -> BigReal:
        """Sum over n of the left side, built one term ratio at a time."""
        z = evaluate(self.z, ctx)
        if abs(z) >= 1:
            raise DivergenceError(f"identity {self.identity_id}: |z| = {abs(z):.4e} >= 1")
        (c1, m1), (c2, m2) = self.upper
        u1, u2 = c1 + m1 * k, c2 + m2 * k
        low = self.lower[0] + self.lower[1] * k
        if low <= 0 and low.denominator == 1:
            raise DomainError(f"identity {self.identity_id}: lower parameter {low} is a pole at k={k}")

        if member is Member.SECOND:
            alpha, beta, gamma = (evaluate(e, ctx) for e in self.bracket)
            with ctx.local():
                offset = beta * k + gamma
        threshold = ctx.epsilon.scaleb(-6)
        with ctx.local():
            total = to_real(0, ctx)
            term = to_real(1, ctx)
            quiet = 0
            for n in range(max_terms):
                contribution = term if member is Member.FIRST else term * (alpha * n + offset)
                total += contribution
                if term == 0:
                    return total
                size = abs(term) * max(1, n)
                quiet = quiet + 1 if size < threshold * abs(total) else 0
                if quiet >= 3:
                    return total
                ratio = (u1 + n) * (u2 + n) / ((low + n) * (1 + n))
                term = term * z * ratio.numerator / ratio.denominator
        raise PrecisionNotReached(
            f"identity {self.identity_id} {member.name.lower()} member at k={k}: "
            f"not converged after {max_terms} terms"
        )


_R2, _R3 = sqrt(2), sqrt(3)

WZ_PAIRS: Dict[int, WzIdentitySpec] = {
    1: WzIdentitySpec(
        1,
        z=(3 - 2 * _R2) ** 2,
        upper=((HALF, -4), (HALF, -2)),
        lower=(Fraction(1), 2),
        geometric=(3 * _R2 - 4) ** 2 * rational(2**9, 3**3),
        rhs_upper=(Fraction(1), HALF),
        first_lower=(Fraction(7, 12), Fraction(11, 12)),
        second_lower=(Fraction(1, 12), Fraction(5, 12)),
        bracket=(16 * (3 * _R2 - 4), 16 * (13 - 9 * _R2), 4 * (5 * _R2 - 7)),
    ),
    2: WzIdentitySpec(
        2,
        z=rational(1, 2),
        upper=((HALF, -2), (HALF, 2)),
        lower=(Fraction(1), 4),
        geometric=rational(16, 27),
        rhs_upper=(Fraction(1), HALF),
        first_lower=(Fraction(7, 12), Fraction(11, 12)),
        second_lower=(Fraction(1, 12), Fraction(5, 12)),
        bracket=(rational(1), rational(4), rational(0)),
    ),
    3: WzIdentitySpec(
        3,
        z=(_R2 - 1) ** 2,
        upper=((HALF, -2), (HALF, 0)),
        lower=(Fraction(1), 2),
        geometric=rational(1),
        rhs_upper=(Fraction(1), HALF),
        first_lower=(Fraction(5, 8), Fraction(7, 8)),
        second_lower=(Fraction(1, 8), Fraction(3, 8)),
        bracket=(8 - 4 * _R2, 8 * _R2 - 8, 3 - 2 * _R2),
    ),
    4: WzIdentitySpec(
        4,
        z=(2 - _R3) / 4,
        upper=((HALF, -1), (HALF, 3)),
        lower=(Fraction(1), 1),
        geometric=4 / (3 * _R3),
        rhs_upper=(Fraction(1),),
        first_lower=(Fraction(5, 6),),
        second_lower=(Fraction(1, 6),),
        bracket=(rational(3, 2) + _R3, rational(3, 2), rational(1, 4)),
    ),
    # The lower parameter is 1 + 4k.  With 1 + k the k > 0 members fail by
    # orders of magnitude, while 1 + 4k satisfies both to full precision.
    5: WzIdentitySpec(
        5,
        z=2 * _R2 - 2,
        upper=((HALF, 4), (HALF, 2)),
        lower=(Fraction(1), 4),
        geometric=(3 + 2 * _R2) ** 2,
        rhs_upper=(Fraction(1), HALF),
        first_lower=(Fraction(5, 8), Fraction(7, 8)),
        second_lower=(Fraction(1, 8), Fraction(3, 8)),
        bracket=(3 * _R2 - 4, 8 * _R2 - 12, _R2 - rational(3, 2)),
    ),
}


def wz_pair(identity_id: int) -> WzIdentitySpec:
    try:
        return WZ_PAIRS[identity_id]
    except (KeyError, TypeError):
        raise DomainError(f"identity must be 1..5, got {identity_id!r}") from None


@dataclass
class WzCheckResult:
    identity_id: int
    C1: BigReal
    C2: BigReal
    # k -> (first-member residual, second-member residual)
    residuals: Dict[int, Tuple[BigReal, BigReal]]
    product_residual: BigReal
    tolerance: BigReal
    product_tolerance: BigReal
    errors: Dict[int, str] = field(default_factory=dict)

    @property
    def max_residual(self) -> BigReal:
        return max((max(pair) for pair in self.residuals.values()), default=BigReal(0))

    @property
    def ok(self) -> bool:
        return (
            not self.errors
            and self.max_residual <= self.tolerance
            and self.product_residual <= self.product_tolerance
        )


def verify_wz_pair(
    identity: int | WzIdentitySpec,
    ctx: PrecisionContext,
    k_values: Iterable[int] = DEFAULT_K_VALUES,
    tolerance: Optional[BigReal] = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> WzCheckResult:
    """Fix C1, C2 at k = 0, then test each k > 0 against C * rhs_factor(k).

    Residuals are relative; the default tolerance is 10^-(working_digits // 2).
    A member that fails to converge at some k is reported in ``errors``.
    """
    spec = identity if isinstance(identity, WzIdentitySpec) else wz_pair(identity)
    c1 = spec.lhs(Member.FIRST, 0, ctx, max_terms)
    c2 = spec.lhs(Member.SECOND, 0, ctx, max_terms)
    with ctx.local():
        product_residual = abs(c1 * c2 * machin_pi(ctx) - 1)
    if tolerance is None:
        tolerance = BigReal(1).scaleb(-(ctx.working_digits // 2))
    product_tolerance = ctx.epsilon.scaleb(9)  # 10^(10 - working_digits)

    residuals: Dict[int, Tuple[BigReal, BigReal]] = {}
    errors: Dict[int, str] = {}
    for k in sorted(set(k_values)):
        if k < 0 or int(k) != k:
            raise DomainError(f"k must be a non-negative integer, got {k!r}")
        try:
            pair = []
            for member, constant in ((Member.FIRST, c1), (Member.SECOND, c2)):
                lhs = spec.lhs(member, k, ctx, max_terms)
                with ctx.local():
                    pair.append(abs(lhs / (constant * spec.rhs_factor(member, k, ctx)) - 1))
            residuals[k] = (pair[0], pair[1])
        except (DivergenceError, PrecisionNotReached) as exc:
            errors[k] = str(exc)
    return WzCheckResult(spec.identity_id, c1, c2, residuals, product_residual, tolerance, product_tolerance, errors)
