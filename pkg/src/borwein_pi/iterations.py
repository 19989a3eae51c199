"""Quadratic and quartic iterations converging to 1/pi.

Four schemes share one descent map.  With ``d' = descend(d)``:

* ``full``        b' = 2 b (1+d')^3 / (1-d'),   a' = a (1+d')^2 + b' d' / (2 (1+d'))
* ``simplified``  a' = a (1+d')^2 + c0 2^n d' (1-d')
* ``borwein2``    r' = r (1+d')^2 - c0 2^n d'
* ``borwein4``    t' = (1+s')^4 t - c0 2^(2n+1) s' (1+s'+s'^2),  s' = quartic_descend(s)

``n`` in the powers of two is the index *before* the step.  Powers of two are
carried as exact integers and doubled (or quadrupled) per step.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Union

from .constants import InitialValueSet, check_domain, identity_set
from .errors import ConvergenceError, DomainError
from .numeric import (
    BigReal,
    PrecisionContext,
    default_guard,
    digits_of_agreement,
    root4,
    sqrt,
    to_real,
)
from .radicals import evaluate

log = logging.getLogger(__name__)


class Scheme(enum.Enum):
    FULL = "full"
    SIMPLIFIED = "simplified"
    BORWEIN2 = "borwein2"
    BORWEIN4 = "borwein4"

    @property
    def order(self) -> int:
        return 4 if self is Scheme.BORWEIN4 else 2

    @classmethod
    def parse(cls, value: Union[str, "Scheme"]) -> "Scheme":
        if isinstance(value, Scheme):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise DomainError(f"unknown scheme {value!r} (expected one of {names})") from None


def quad_descend(x: BigReal, ctx: PrecisionContext) -> BigReal:
    """(1 - sqrt(1-x^2)) / (1 + sqrt(1-x^2)), for 0 < x < 1.

    Evaluated as x^2 / (1 + sqrt(1-x^2))^2, which is the same number without
    the cancellation in the numerator once x is below the working precision.
    """
    x = to_real(x, ctx)
    if not 0 < x < 1:
        raise DomainError(f"descent argument must lie in (0, 1), got {x:.6e}")
    with ctx.local():
        x_sq = x * x
        w = sqrt(1 - x_sq, ctx)
        return x_sq / ((1 + w) * (1 + w))


def quartic_descend(s: BigReal, ctx: PrecisionContext) -> BigReal:
    """(1 - root4(1-s^4)) / (1 + root4(1-s^4)), for 0 < s < 1.

    Uses 1 - q = s^4 / ((1+q)(1+q^2)) with q = root4(1-s^4).
    """
    s = to_real(s, ctx)
    if not 0 < s < 1:
        raise DomainError(f"descent argument must lie in (0, 1), got {s:.6e}")
    with ctx.local():
        s_sq = s * s
        s_4 = s_sq * s_sq
        q = root4(1 - s_4, ctx)
        return s_4 / ((1 + q) * (1 + q) * (1 + q * q))


@dataclass(frozen=True)
class IterationState:
    """Iterate ``n`` of one scheme; fields a scheme does not use stay None.

    ``power`` is the exact integer 2^n (quadratic schemes) or 2^(2n+1)
    (quartic) that the next step multiplies into its correction term.
    """

    scheme: Scheme
    n: int
    power: int
    d: Optional[BigReal] = None
    a: Optional[BigReal] = None
    b: Optional[BigReal] = None
    c0: Optional[BigReal] = None
    r: Optional[BigReal] = None
    s: Optional[BigReal] = None
    t: Optional[BigReal] = None

    @property
    def value(self) -> BigReal:
        """Current approximation of the limit 1/pi."""
        if self.scheme is Scheme.BORWEIN4:
            return self.t
        if self.scheme is Scheme.BORWEIN2:
            return self.r
        return self.a


def initial_state(scheme: Union[Scheme, str], ivs: InitialValueSet, ctx: PrecisionContext) -> IterationState:
    scheme = Scheme.parse(scheme)
    check_domain(ivs, ctx)
    v = ivs.evaluate(ctx)
    if scheme is Scheme.FULL:
        return IterationState(scheme, 0, 1, d=v["d0"], a=v["a0"], b=v["b0"])
    if scheme is Scheme.SIMPLIFIED:
        return IterationState(scheme, 0, 1, d=v["d0"], a=v["a0"], c0=v["c0"])
    if scheme is Scheme.BORWEIN2:
        return IterationState(scheme, 0, 1, d=v["d0"], r=v["r0"], c0=v["c0"])
    return IterationState(scheme, 0, 2, s=evaluate(ivs.s0, ctx), t=v["r0"], c0=v["c0"])


def _require(state: IterationState, scheme: Scheme) -> None:
    if state.scheme is not scheme:
        raise ValueError(f"expected a {scheme.value} state, got {state.scheme.value}")


def step_full_quadratic(state: IterationState, ctx: PrecisionContext) -> IterationState:
    _require(state, Scheme.FULL)
    d = quad_descend(state.d, ctx)
    with ctx.local():
        one_plus = 1 + d
        b = 2 * state.b * one_plus * one_plus * one_plus / (1 - d)
        a = state.a * one_plus * one_plus + b * d / (2 * one_plus)
    return replace(state, n=state.n + 1, power=state.power * 2, d=d, a=a, b=b)


def step_simplified(state: IterationState, ctx: PrecisionContext) -> IterationState:
    _require(state, Scheme.SIMPLIFIED)
    d = quad_descend(state.d, ctx)
    with ctx.local():
        one_plus = 1 + d
        a = state.a * one_plus * one_plus + state.c0 * state.power * d * (1 - d)
    return replace(state, n=state.n + 1, power=state.power * 2, d=d, a=a)


def step_borwein_quadratic(state: IterationState, ctx: PrecisionContext) -> IterationState:
    _require(state, Scheme.BORWEIN2)
    d = quad_descend(state.d, ctx)
    with ctx.local():
        one_plus = 1 + d
        r = state.r * one_plus * one_plus - state.c0 * state.power * d
    return replace(state, n=state.n + 1, power=state.power * 2, d=d, r=r)


def step_borwein_quartic(state: IterationState, ctx: PrecisionContext) -> IterationState:
    _require(state, Scheme.BORWEIN4)
    s = quartic_descend(state.s, ctx)
    with ctx.local():
        sq = (1 + s) * (1 + s)
        t = sq * sq * state.t - state.c0 * state.power * s * (1 + s + s * s)
    return replace(state, n=state.n + 1, power=state.power * 4, s=s, t=t)


STEPPERS: Dict[Scheme, Callable[[IterationState, PrecisionContext], IterationState]] = {
    Scheme.FULL: step_full_quadratic,
    Scheme.SIMPLIFIED: step_simplified,
    Scheme.BORWEIN2: step_borwein_quadratic,
    Scheme.BORWEIN4: step_borwein_quartic,
}


def step(state: IterationState, ctx: PrecisionContext) -> IterationState:
    return STEPPERS[state.scheme](state, ctx)


def trajectory(
    scheme: Union[Scheme, str],
    ivs: InitialValueSet,
    ctx: PrecisionContext,
    steps: int,
) -> List[IterationState]:
    """States 0..steps of ``scheme`` started from ``ivs``."""
    state = initial_state(scheme, ivs, ctx)
    states = [state]
    for _ in range(steps):
        state = step(state, ctx)
        states.append(state)
    return states


def iteration_cap(scheme: Union[Scheme, str], target_digits: int) -> int:
    """Hard step limit: ceil(log2 N) + 4 quadratic steps, half that + 3 quartic."""
    scheme = Scheme.parse(scheme)
    quadratic = (target_digits - 1).bit_length() + 4
    if scheme.order == 4:
        return -(-quadratic // 2) + 3
    return quadratic


@dataclass(frozen=True)
class IterationRecord:
    n: int
    delta_digits: float  # -log10 |value_n - value_{n-1}|
    est_digits: float  # predicted correct digits of value_n
    seconds: float


@dataclass
class RunResult:
    pi: BigReal
    limit_estimate: BigReal
    iterations_used: int
    scheme: Scheme
    identity_id: Optional[int]
    ctx: PrecisionContext
    history: List[IterationRecord] = field(default_factory=list)

    @property
    def per_iteration_deltas(self) -> List[float]:
        return [rec.delta_digits for rec in self.history]

    @property
    def target_digits(self) -> int:
        return self.ctx.target_digits


def run(
    scheme: Union[Scheme, str],
    identity: Union[int, InitialValueSet],
    target_digits: int,
    *,
    guard_digits: Optional[int] = None,
    max_iters: Optional[int] = None,
) -> RunResult:
    """Iterate until the next step would change fewer than ``target_digits`` digits.

    With ``delta`` the change in the limit estimate over the last step, the
    error of the current estimate is taken to be ``100 * delta**order``; the run
    stops as soon as that falls below 10^-target_digits.  Raises
    :class:`ConvergenceError` if the cap is hit first.
    """
    scheme = Scheme.parse(scheme)
    ivs = identity if isinstance(identity, InitialValueSet) else identity_set(identity)
    if target_digits < 1:
        raise DomainError(f"target_digits must be >= 1, got {target_digits}")
    cap = max_iters if max_iters is not None else iteration_cap(scheme, target_digits)
    guard = default_guard(cap) if guard_digits is None else guard_digits
    ctx = PrecisionContext(target_digits, guard)

    state = initial_state(scheme, ivs, ctx)
    history: List[IterationRecord] = []
    stepper = STEPPERS[scheme]
    while True:
        if state.n >= cap:
            raise ConvergenceError(
                f"{scheme.value} from {ivs.label} did not reach {target_digits} digits "
                f"in {cap} iterations"
            )
        started = time.perf_counter()
        previous = state.value
        state = stepper(state, ctx)
        elapsed = time.perf_counter() - started

        delta_digits = digits_of_agreement(state.value, previous, ctx)
        est = min(float(ctx.working_digits), max(0.0, scheme.order * delta_digits - 2))
        history.append(IterationRecord(state.n, delta_digits, est, elapsed))
        log.debug("%s n=%d delta=1e-%.1f est=%.1f digits", scheme.value, state.n, delta_digits, est)
        if est >= target_digits:
            break

    with ctx.local():
        pi = 1 / state.value
    return RunResult(pi, state.value, state.n, scheme, ivs.identity_id, ctx, history)
