"""Parse coefficient expressions in ``u = e^x``, ``v = e^y``.

Accepts Python arithmetic syntax over integer literals, the names ``u``
and ``v`` and ``sqrt(n)`` for integer ``n``, e.g. ``u*v/(16*(u - v)**2)``.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .errors import ParseError
from .kernel.coeff import CoeffElem, U, V
from .kernel.scalars import sqrt_scalar

__all__ = ["parse_coeff", "parse_scalar"]

_NAMES = {"u": U, "v": V}


def _fail(node, msg: str, offset: int = 0):
    col = getattr(node, "col_offset", None)
    raise ParseError(msg, line=getattr(node, "lineno", None), column=None if col is None else col + 1 + offset)


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            _fail(node, f"only integer literals are allowed, got {node.value!r}")
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            _fail(node, f"unknown name {node.id!r}")
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        x = _eval(node.operand)
        return -x if isinstance(node.op, ast.USub) else x
    if isinstance(node, ast.Call):
        if not (isinstance(node.func, ast.Name) and node.func.id == "sqrt") or len(node.args) != 1 or node.keywords:
            _fail(node, "only sqrt(<integer>) calls are allowed")
        arg = _eval(node.args[0])
        if isinstance(arg, CoeffElem):
            _fail(node, "sqrt of a non-constant")
        return sqrt_scalar(arg)
    if isinstance(node, ast.BinOp):
        a, b = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if (b.is_zero() if isinstance(b, CoeffElem) else b == 0):
                _fail(node, "division by zero")
            return a / b
        if isinstance(node.op, ast.Pow):
            if not isinstance(b, Fraction) or b.denominator != 1:
                _fail(node.right, "exponent must be an integer literal")
            return a ** int(b)
    _fail(node, f"unsupported syntax: {type(node).__name__}")


def parse_coeff(text: str) -> CoeffElem:
    """Exact :class:`CoeffElem` for ``text``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed expression: {exc.msg}", line=exc.lineno, column=exc.offset) from exc
    value = _eval(tree)
    return value if isinstance(value, CoeffElem) else CoeffElem.const(value)


def parse_scalar(text: str):
    """A ground-field constant (rational or quadratic)."""
    e = parse_coeff(text)
    if not e.is_constant():
        raise ParseError(f"expected a constant, got {text!r}")
    return e.constant_value()
