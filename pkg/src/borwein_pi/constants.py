"""The five exact initial-value sets and their consistency checks.

Each set feeds every iteration scheme.  ``c0`` and ``r0`` are not independent
of ``d0, b0, a0``: they must satisfy

    c0 = b0 / (1 - d0**2)          and          a0 = r0 - c0 * d0**2 / 2,

which :func:`consistency_check` measures.  User sets can be loaded from an
INI-style file (see :func:`load_sets`) and are only accepted once both
residuals vanish.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from os import PathLike
from typing import Dict, List, Optional, Union

from .errors import DomainError, InconsistentInitialValues
from .numeric import BigReal, PrecisionContext
from .radicals import RadicalExpr, evaluate, parse, rational, sqrt

FIELDS = ("d0", "b0", "a0", "c0", "r0")


@dataclass(frozen=True)
class InitialValueSet:
    identity_id: Optional[int]
    d0: RadicalExpr
    b0: RadicalExpr
    a0: RadicalExpr
    c0: RadicalExpr
    r0: RadicalExpr
    name: str = ""

    @property
    def s0(self) -> RadicalExpr:
        return sqrt(self.d0)

    @property
    def t0(self) -> RadicalExpr:
        return self.r0

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return f"identity {self.identity_id}"

    def evaluate(self, ctx: PrecisionContext) -> Dict[str, BigReal]:
        return {field: evaluate(getattr(self, field), ctx) for field in FIELDS}


@dataclass(frozen=True)
class ConsistencyReport:
    collapse_residual: BigReal  # |c0 - b0/(1 - d0^2)|
    substitution_residual: BigReal  # |a0 - (r0 - c0 d0^2 / 2)|
    tolerance: BigReal

    @property
    def ok(self) -> bool:
        return self.collapse_residual <= self.tolerance and self.substitution_residual <= self.tolerance


_R2 = sqrt(2)
_R3 = sqrt(3)

_REGISTRY = {
    1: InitialValueSet(
        1,
        d0=3 - 2 * _R2,
        b0=48 * _R2 - 64,
        a0=20 * _R2 - 28,
        c0=rational(4),
        r0=6 - 4 * _R2,
    ),
    2: InitialValueSet(
        2,
        d0=1 / _R2,
        b0=rational(1),
        a0=rational(0),
        c0=rational(2),
        r0=rational(1, 2),
    ),
    3: InitialValueSet(
        3,
        d0=_R2 - 1,
        b0=8 - 4 * _R2,
        a0=3 - 2 * _R2,
        c0=2 * _R2,
        r0=_R2 - 1,
    ),
    4: InitialValueSet(
        4,
        d0=(sqrt(6) - _R2) / 4,
        b0=rational(3, 2) + _R3,
        a0=rational(1, 4),
        c0=2 * _R3,
        r0=(_R3 - 1) / 2,
    ),
    5: InitialValueSet(
        5,
        d0=sqrt(2 * _R2 - 2),
        b0=3 * _R2 - 4,
        a0=_R2 - rational(3, 2),
        c0=_R2,
        r0=rational(1, 2),
    ),
}

IDENTITY_IDS = tuple(sorted(_REGISTRY))


def identity_set(identity_id: int) -> InitialValueSet:
    try:
        return _REGISTRY[identity_id]
    except (KeyError, TypeError):
        raise DomainError(f"identity must be 1..5, got {identity_id!r}") from None


def consistency_check(ivs: InitialValueSet, ctx: PrecisionContext) -> ConsistencyReport:
    v = ivs.evaluate(ctx)
    with ctx.local():
        d_sq = v["d0"] * v["d0"]
        collapse = abs(v["c0"] - v["b0"] / (1 - d_sq))
        substitution = abs(v["a0"] - (v["r0"] - v["c0"] * d_sq / 2))
    tolerance = ctx.epsilon.scaleb(3)  # 10^(4 - working_digits)
    return ConsistencyReport(collapse, substitution, tolerance)


def check_domain(ivs: InitialValueSet, ctx: PrecisionContext) -> None:
    """Reject sets whose d0 is not strictly inside (0, 1)."""
    d0 = evaluate(ivs.d0, ctx)
    if not 0 < d0 < 1:
        raise DomainError(f"{ivs.label}: d0 = {d0:.6e} is outside (0, 1)")


def load_sets(
    source: Union[str, PathLike],
    ctx: Optional[PrecisionContext] = None,
) -> List[InitialValueSet]:
    """Read user initial-value sets from an INI file.

    One section per set; each section holds the five keys ``d0 b0 a0 c0 r0``
    as radical expressions, for example::

        [half-chain]
        d0 = 1/sqrt(2)
        b0 = 1
        a0 = 0
        c0 = 2
        r0 = 1/2

    Every set must pass :func:`consistency_check` (at ``ctx``, default 50
    digits) or :class:`InconsistentInitialValues` is raised.
    """
    ctx = ctx or PrecisionContext(50, 0)
    parser = configparser.ConfigParser()
    with open(source, encoding="utf-8") as fh:
        parser.read_file(fh)

    sets = []
    for section in parser.sections():
        entries = parser[section]
        missing = [f for f in FIELDS if f not in entries]
        if missing:
            raise ValueError(f"[{section}] is missing {', '.join(missing)}")
        unknown = sorted(set(entries) - set(FIELDS))
        if unknown:
            raise ValueError(f"[{section}] has unknown keys {', '.join(unknown)}")
        ivs = InitialValueSet(None, name=section, **{f: parse(entries[f]) for f in FIELDS})
        check_domain(ivs, ctx)
        report = consistency_check(ivs, ctx)
        if not report.ok:
            raise InconsistentInitialValues(
                f"[{section}] fails the consistency check: "
                f"collapse residual {report.collapse_residual:.3e}, "
                f"substitution residual {report.substitution_residual:.3e}"
            )
        sets.append(ivs)
    return sets
