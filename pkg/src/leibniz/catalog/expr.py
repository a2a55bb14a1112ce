"""Tiny exact expression language for catalog data.

Entries such as ``"sqrt_t*(e3 + i*e2)"`` or ``"-1/(2*t**3)"`` are parsed with
:mod:`ast` and evaluated over Scalars (and vectors, when basis names ``e1``,
``e2``, ... are bound).  Only arithmetic is allowed: numbers, names, ``+ - * /``
and integer powers.
"""

from __future__ import annotations

import ast
from typing import Mapping

from ..exactnum import I, ONE, ZERO, Scalar, as_scalar


class Vec:
    """Coordinate vector used while evaluating vector-valued expressions."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    def __add__(self, other):
        if isinstance(other, Vec):
            return Vec(a + b for a, b in zip(self.coords, other.coords))
        if not as_scalar(other):
            return self
        raise ValueError("cannot add a scalar to a vector")

    __radd__ = __add__

    def __neg__(self):
        return Vec(-a for a in self.coords)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Vec):
            raise ValueError("product of two vectors")
        c = as_scalar(c)
        return Vec(c * a for a in self.coords)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * as_scalar(c).inv()


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


class ExprError(ValueError):
    pass


def _eval(node, env):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Scalar(node.value)
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id == "i":
            return I
        raise ExprError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval(node.left, env)
            exp = _eval(node.right, env)
            if isinstance(base, Vec) or isinstance(exp, Vec) or exp.im or exp.re.denominator != 1:
                raise ExprError("only integer powers of scalars are supported")
            return base ** int(exp.re)
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ExprError(f"operator {type(node.op).__name__} not allowed")
        left, right = _eval(node.left, env), _eval(node.right, env)
        if isinstance(node.op, ast.Div) and isinstance(right, Vec):
            raise ExprError("division by a vector")
        try:
            return op(left, right)
        except ZeroDivisionError:
            raise ExprError("division by zero") from None
    raise ExprError(f"unsupported syntax: {ast.dump(node)[:40]}")


def evaluate(src: str | int, env: Mapping | None = None):
    """Evaluate ``src`` with the bindings in ``env`` (``i`` is the imaginary unit)."""
    if isinstance(src, int) and not isinstance(src, bool):
        return Scalar(src)
    if not isinstance(src, str):
        raise ExprError(f"expected an expression string, got {type(src).__name__}")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError:
        raise ExprError(f"cannot parse {src!r}") from None
    return _eval(tree, dict(env or {}))


def basis_env(dim: int) -> dict:
    env = {}
    for k in range(dim):
        env[f"e{k + 1}"] = Vec(ONE if j == k else ZERO for j in range(dim))
    return env


def vector(src: str, dim: int, env: Mapping | None = None) -> tuple:
    """Evaluate a vector expression in ``e1..e<dim>``; ``"0"`` is the zero vector."""
    full = basis_env(dim)
    full.update(env or {})
    v = evaluate(src, full)
    if isinstance(v, Vec):
        return v.coords
    if not v:
        return (ZERO,) * dim
    raise ExprError(f"{src!r} is a scalar, expected a vector in e1..e{dim}")


def scalar(src, env: Mapping | None = None) -> Scalar:
    v = evaluate(src, env)
    if isinstance(v, Vec):
        raise ExprError(f"{src!r} is a vector, expected a scalar")
    return v
