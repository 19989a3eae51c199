"""Exact radical expressions: rationals closed under + - * / sqrt and root4.

Expressions are immutable trees.  They are built either with Python
operators::

    >>> d0 = 3 - 2 * sqrt(2)
    >>> str(d0)
    '3 - 2*sqrt(2)'

or parsed from text with :func:`parse`, which accepts the same infix syntax
(``+ - * /``, unary minus, parentheses, integer and decimal literals,
``sqrt(...)`` and ``root4(...)``).  Evaluation happens at any precision via
:func:`evaluate`; no symbolic simplification is attempted.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .numeric import BigReal, PrecisionContext, root4 as _root4, sqrt as _sqrt, to_real

Operand = Union["RadicalExpr", int, Fraction]


def _lift(value: Operand) -> "RadicalExpr":
    if isinstance(value, RadicalExpr):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Rational(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in a radical expression")


class RadicalExpr:
    """Base node.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    # precedence for printing: 0 sum/diff, 1 product/quotient, 2 atom
    _prec = 2

    def __add__(self, other: Operand) -> "RadicalExpr":
        return Add(self, _lift(other))

    def __radd__(self, other: Operand) -> "RadicalExpr":
        return Add(_lift(other), self)

    def __sub__(self, other: Operand) -> "RadicalExpr":
        return Sub(self, _lift(other))

    def __rsub__(self, other: Operand) -> "RadicalExpr":
        return Sub(_lift(other), self)

    def __mul__(self, other: Operand) -> "RadicalExpr":
        return Mul(self, _lift(other))

    def __rmul__(self, other: Operand) -> "RadicalExpr":
        return Mul(_lift(other), self)

    def __truediv__(self, other: Operand) -> "RadicalExpr":
        return Div(self, _lift(other))

    def __rtruediv__(self, other: Operand) -> "RadicalExpr":
        return Div(_lift(other), self)

    def __neg__(self) -> "RadicalExpr":
        return Sub(Rational(Fraction(0)), self)

    def __pow__(self, exponent: int) -> "RadicalExpr":
        if not isinstance(exponent, int) or exponent < 1:
            raise TypeError("only positive integer powers are supported")
        result: RadicalExpr = self
        for _ in range(exponent - 1):
            result = Mul(result, self)
        return result

    def evaluate(self, ctx: PrecisionContext) -> BigReal:
        return evaluate(self, ctx)


@dataclass(frozen=True)
class Rational(RadicalExpr):
    value: Fraction

    def __str__(self) -> str:
        return str(self.value)

    @property
    def _prec(self) -> int:  # type: ignore[override]
        return 1 if self.value.denominator != 1 or self.value < 0 else 2


@dataclass(frozen=True)
class _Binary(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr

    _symbol = "?"

    def __str__(self) -> str:
        lhs = _wrap(self.left, self._prec)
        # right operand of - and / binds tighter
        rhs = _wrap(self.right, self._prec + (1 if self._symbol in "-/" else 0))
        sep = f" {self._symbol} " if self._prec == 0 else self._symbol
        return f"{lhs}{sep}{rhs}"


class Add(_Binary):
    _symbol = "+"
    _prec = 0


class Sub(_Binary):
    _symbol = "-"
    _prec = 0

    def __str__(self) -> str:
        if self.left == Rational(Fraction(0)):
            return f"-{_wrap(self.right, 2)}"
        return super().__str__()


class Mul(_Binary):
    _symbol = "*"
    _prec = 1


class Div(_Binary):
    _symbol = "/"
    _prec = 1


@dataclass(frozen=True)
class Sqrt(RadicalExpr):
    arg: RadicalExpr

    def __str__(self) -> str:
        return f"sqrt({self.arg})"


@dataclass(frozen=True)
class Root4(RadicalExpr):
    arg: RadicalExpr

    def __str__(self) -> str:
        return f"root4({self.arg})"


def _wrap(node: RadicalExpr, min_prec: int) -> str:
    text = str(node)
    return f"({text})" if node._prec < min_prec else text


def sqrt(x: Operand) -> RadicalExpr:
    return Sqrt(_lift(x))


def root4(x: Operand) -> RadicalExpr:
    return Root4(_lift(x))


def rational(p: int, q: int = 1) -> RadicalExpr:
    return Rational(Fraction(p, q))


def evaluate(expr: RadicalExpr, ctx: PrecisionContext) -> BigReal:
    """Evaluate ``expr`` to ``ctx.working_digits`` significant digits.

    Raises :class:`DomainError` on a negative radicand or a zero divisor.
    """
    if isinstance(expr, Rational):
        return to_real(expr.value, ctx)
    if isinstance(expr, Sqrt):
        return _sqrt(evaluate(expr.arg, ctx), ctx)
    if isinstance(expr, Root4):
        return _root4(evaluate(expr.arg, ctx), ctx)
    if isinstance(expr, _Binary):
        lhs = evaluate(expr.left, ctx)
        rhs = evaluate(expr.right, ctx)
        dctx = ctx.decimal_context()
        if isinstance(expr, Add):
            return dctx.add(lhs, rhs)
        if isinstance(expr, Sub):
            return dctx.subtract(lhs, rhs)
        if isinstance(expr, Mul):
            return dctx.multiply(lhs, rhs)
        if rhs == 0:
            raise DomainError(f"division by zero in {expr}")
        return dctx.divide(lhs, rhs)
    raise TypeError(f"not a radical expression: {expr!r}")


_FUNCS = {"sqrt": Sqrt, "root4": Root4}


def parse(text: str) -> RadicalExpr:
    """Parse infix text such as ``"(sqrt(6) - sqrt(2))/4"``.

    Python's own expression grammar does the tokenising; anything that is not
    an arithmetic operator, a numeric literal or a ``sqrt``/``root4`` call is
    rejected.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed expression {text!r}: {exc.msg}") from None
    return _convert(tree.body, text)


def _convert(node: ast.AST, source: str) -> RadicalExpr:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        # go through the literal text so 0.1 stays exactly 1/10
        literal = ast.get_source_segment(source.strip(), node) or repr(node.value)
        return Rational(Fraction(literal))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        operand = _convert(node.operand, source)
        return -operand if isinstance(node.op, ast.USub) else operand
    if isinstance(node, ast.BinOp):
        lhs = _convert(node.left, source)
        rhs = _convert(node.right, source)
        if isinstance(node.op, ast.Add):
            return Add(lhs, rhs)
        if isinstance(node.op, ast.Sub):
            return Sub(lhs, rhs)
        if isinstance(node.op, ast.Mult):
            return Mul(lhs, rhs)
        if isinstance(node.op, ast.Div):
            return Div(lhs, rhs)
        if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant) and isinstance(node.right.value, int):
            return lhs ** node.right.value
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        if len(node.args) != 1 or node.keywords:
            raise ValueError(f"{node.func.id}() takes exactly one argument")
        return _FUNCS[node.func.id](_convert(node.args[0], source))
    raise ValueError(f"unsupported syntax in {source!r}: {ast.dump(node)[:60]}")
