"""Command-line front end.

Exit status: 0 on success, 2 when a verification misses its tolerance (or the
computed digits disagree with the reference), 1 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from decimal import Decimal
from typing import List, Optional, Sequence

from . import series
from .constants import IDENTITY_IDS, InitialValueSet, identity_set, load_sets
from .errors import BorweinPiError, DomainError
from .iterations import Scheme, run
from .machin import machin_pi
from .numeric import PrecisionContext, to_real
from .radicals import evaluate, rational, sqrt
from .report import ConvergenceReport, compare_digits, parse_reference, pi_digits
from .wz import DEFAULT_K_VALUES, verify_wz_pair

MODES = ("compute", "verify-identities", "verify-wz", "verify-transforms", "bench")
TRANSFORM_POINTS = (rational(1, 10), rational(3, 10), 1 / sqrt(2), rational(9, 10))
CLAUSEN_POINTS = (rational(1, 100), rational(1, 5), rational(7, 10))

log = logging.getLogger("borwein_pi")


class UsageError(BorweinPiError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="borwein-pi", description="Borwein-type iterations for pi and their series checks.")
    parser.add_argument("--mode", choices=MODES, default="compute")
    parser.add_argument("--scheme", choices=[s.value for s in Scheme])
    parser.add_argument("--identity", type=int, help="initial-value set 1..5")
    parser.add_argument("--digits", type=int, help="decimal digits (working precision in verify modes)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--digits-file", help="reference expansion of pi to compare against")
    parser.add_argument("--max-iters", type=int)
    parser.add_argument("--max-terms", type=int)
    parser.add_argument("--guard", type=int, help="guard digits (default depends on mode)")
    parser.add_argument("--k", type=int, nargs="+", default=list(DEFAULT_K_VALUES), help="k values for verify-wz")
    parser.add_argument("--sets-file", help="INI file of user initial-value sets")
    parser.add_argument("--set", dest="set_name", help="section of --sets-file to use instead of --identity")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


@dataclass
class Check:
    name: str
    residual: Decimal
    tolerance: Decimal

    @property
    def ok(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {"check": self.name, "residual": f"{self.residual:.3e}", "tolerance": f"{self.tolerance:.0e}", "pass": self.ok}

    def line(self) -> str:
        return f"{self.name:<32} residual {self.residual:.3e}  tol {self.tolerance:.0e}  {'PASS' if self.ok else 'FAIL'}"


def _emit_checks(checks: List[Check], fmt: str) -> int:
    if fmt == "json":
        print(json.dumps([c.as_dict() for c in checks], indent=2))
    else:
        for check in checks:
            print(check.line())
    return 0 if all(c.ok for c in checks) else 2


def _verify_context(args) -> PrecisionContext:
    return PrecisionContext(args.digits or 50, args.guard or 0)


def _tol(ctx: PrecisionContext, slack: int) -> Decimal:
    return Decimal(1).scaleb(slack - ctx.working_digits)


def _resolve_set(args) -> InitialValueSet:
    if args.sets_file:
        sets = {ivs.name: ivs for ivs in load_sets(args.sets_file)}
        if args.set_name is None:
            raise UsageError("--sets-file needs --set NAME")
        if args.set_name not in sets:
            raise UsageError(f"no set named {args.set_name!r} in {args.sets_file}")
        return sets[args.set_name]
    if args.identity is None:
        raise UsageError("compute mode needs --identity (or --sets-file with --set)")
    return identity_set(args.identity)


def _reference(args, digits: int) -> tuple:
    if args.digits_file:
        try:
            with open(args.digits_file, encoding="utf-8") as fh:
                return parse_reference(fh.read()), "digits-file"
        except OSError as exc:
            raise UsageError(f"cannot read digits file: {exc}") from None
    ctx = PrecisionContext(digits + 10, 0)
    return pi_digits(machin_pi(ctx), digits + 5), "machin"


def _compute(args) -> int:
    if args.scheme is None or args.digits is None:
        raise UsageError("compute mode needs --scheme, --identity and --digits")
    ivs = _resolve_set(args)
    result = run(args.scheme, ivs, args.digits, guard_digits=args.guard, max_iters=args.max_iters)
    reference, oracle = _reference(args, args.digits)
    verified = min(args.digits, compare_digits(pi_digits(result.pi, args.digits), reference))
    report = ConvergenceReport.from_run(result, verified, oracle)
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.ok else 2


def _verify_identities(args) -> int:
    ctx = _verify_context(args)
    max_terms = args.max_terms or series.DEFAULT_MAX_TERMS
    checks = [
        Check(f"identity {i} product vs 1/pi", series.verify_identity_product(i, ctx, max_terms), _tol(ctx, 8))
        for i in IDENTITY_IDS
    ]
    return _emit_checks(checks, args.format)


def _verify_wz(args) -> int:
    ctx = _verify_context(args)
    ids = [args.identity] if args.identity is not None else list(IDENTITY_IDS)
    results = [verify_wz_pair(i, ctx, args.k, max_terms=args.max_terms or 20_000) for i in ids]
    if args.format == "json":
        payload = []
        for res in results:
            payload.append({
                "identity": res.identity_id,
                "C1": str(res.C1),
                "C2": str(res.C2),
                "product_residual": f"{res.product_residual:.3e}",
                "residuals": {str(k): [f"{r1:.3e}", f"{r2:.3e}"] for k, (r1, r2) in res.residuals.items()},
                "errors": {str(k): msg for k, msg in res.errors.items()},
                "pass": res.ok,
            })
        print(json.dumps(payload, indent=2))
    else:
        for res in results:
            status = "PASS" if res.ok else "FAIL"
            print(
                f"identity {res.identity_id}: |C1 C2 pi - 1| = {res.product_residual:.3e}, "
                f"max k-residual {res.max_residual:.3e} (tol {res.tolerance:.0e})  {status}"
            )
            for k, msg in res.errors.items():
                print(f"  k={k}: {msg}")
    return 0 if all(r.ok for r in results) else 2


def _verify_transforms(args) -> int:
    ctx = _verify_context(args)
    checks = []
    for point in TRANSFORM_POINTS:
        x = evaluate(point, ctx)
        checks.append(Check(f"quadratic transform x={point}", series.verify_quadratic_transform(x, ctx), _tol(ctx, 6)))
        checks.append(Check(f"ode (left) x={point}", series.ode_residual(x, ctx), _tol(ctx, 8)))
        checks.append(Check(f"ode (right) x={point}", series.ode_residual(x, ctx, side="right"), _tol(ctx, 8)))
    for point in CLAUSEN_POINTS:
        x = to_real(point.value, ctx)
        checks.append(Check(f"clausen x={point}", series.verify_clausen(x, ctx), _tol(ctx, 6)))
    checks.append(Check("ramanujan sum vs 16/pi", series.verify_ramanujan(ctx), _tol(ctx, 8)))
    return _emit_checks(checks, args.format)


def _bench(args) -> int:
    digits = args.digits or 1000
    ivs = _resolve_set(args) if (args.identity is not None or args.sets_file) else identity_set(1)
    schemes = [Scheme(args.scheme)] if args.scheme else list(Scheme)
    reference, oracle = _reference(args, digits)
    rows = []
    for scheme in schemes:
        started = time.perf_counter()
        result = run(scheme, ivs, digits, guard_digits=args.guard, max_iters=args.max_iters)
        elapsed = time.perf_counter() - started
        verified = min(digits, compare_digits(pi_digits(result.pi, digits), reference))
        rows.append({"scheme": scheme.value, "iterations": result.iterations_used,
                     "seconds": round(elapsed, 4), "digits_verified": verified})
    if args.format == "json":
        print(json.dumps({"identity": ivs.identity_id, "digits": digits, "oracle": oracle, "runs": rows}, indent=2))
    else:
        print(f"{'scheme':<12} {'iters':>6} {'seconds':>10} {'verified':>9}")
        for row in rows:
            print(f"{row['scheme']:<12} {row['iterations']:>6} {row['seconds']:>10.4f} {row['digits_verified']:>9}")
    return 0 if all(row["digits_verified"] >= digits for row in rows) else 2


HANDLERS = {
    "compute": _compute,
    "verify-identities": _verify_identities,
    "verify-wz": _verify_wz,
    "verify-transforms": _verify_transforms,
    "bench": _bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
        if args.identity is not None and args.identity not in IDENTITY_IDS:
            raise DomainError("identity must be 1..5")
        if args.digits is not None and args.digits < 1:
            raise DomainError("--digits must be positive")
        return HANDLERS[args.mode](args)
    except (UsageError, BorweinPiError, ValueError) as exc:
        print(f"borwein-pi: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
