"""Reference data for the worked example session.

``FUNCTIONS`` lists the four simplest functions with a pole on ``f = 0``
(numerator monomials ``(k, l) -> coeff`` meaning ``z1^k w1^(m-k) z2^l
w2^(m-l)``).  ``OPERATORS`` holds reference operator entries,
written term by term as expressions in ``u = e^x``, ``v = e^y``.
Entries whose original rendering had unbalanced delimiters are listed in
``UNVERIFIED``; their text is a best reading and is never used
for string comparison.
"""

from __future__ import annotations

from .expr import parse_coeff
from .kernel.forms import BiForm
from .operators import DiffOp, MatrixDiffOp
from .session import Session
from .solver import FunctionOnGamma, validate_function

__all__ = [
    "FUNCTIONS",
    "OPERATORS",
    "UNVERIFIED",
    "function",
    "reference_entry",
    "reference_operator",
    "compare_entry",
]

FUNCTIONS = {
    "lambda1": (1, {(0, 1): 1}),
    "lambda2": (2, {(1, 2): 1}),
    "lambda3": (2, {(1, 1): 1}),
    "lambda4": (2, {(1, 0): 1, (2, 1): 1}),
}

_Q = "1/4"

OPERATORS = {
    "lambda1": {
        (1, 1): {(1, 0): _Q, (0, 1): _Q},
        (1, 2): {},
        (2, 1): {},
        (2, 2): {(1, 0): _Q, (0, 1): _Q},
    },
    "lambda2": {
        (1, 1): {
            (2, 0): "u/(8*(u-v))",
            (0, 2): "-u/(8*(u-v))",
            (1, 0): "-u*v/(4*(u-v)**2)",
            (0, 1): "-u*v/(4*(u-v)**2)",
        },
        (1, 2): {
            (2, 0): "u*v/(16*(u-v)**2)",
            (1, 1): "2*u*v/(16*(u-v)**2)",
            (0, 2): "u*v/(16*(u-v)**2)",
        },
        (2, 1): {
            (2, 0): "(v/u - u/v - 2)/8",
            (0, 2): "(u/v - v/u - 2)/8",
            (1, 1): "1/2",
            (1, 0): "(u + u**2/v + 5*v - v**2/u)/(4*(u-v))",
            (0, 1): "(3*u - u**2/v + 3*v + v**2/u)/(4*(v-u))",
            (0, 0): "-v*(2*u + v)/(u-v)**2",
        },
        (2, 2): {
            (2, 0): "u/(8*(v-u))",
            (1, 1): "-1/4",
            (0, 2): "(u - 2*v)/(8*(v-u))",
            (1, 0): "v*(2*u + v)/(8*(u-v)**2)",
            (0, 1): "v*(2*u + v)/(8*(u-v)**2)",
        },
    },
    "lambda3": {
        (1, 1): {
            (2, 0): "(u + v)/(8*(v-u))",
            (0, 2): "-(u + v)/(8*(v-u))",
            (1, 0): "(u**2 + v**2)/(4*(v-u)**2)",
            (0, 1): "(u**2 + v**2)/(4*(v-u)**2)",
        },
        (1, 2): {
            (2, 0): "u*v/(8*(v-u)**2)",
            (1, 1): "-2*u*v/(8*(v-u)**2)",
            (0, 2): "u*v/(8*(v-u)**2)",
        },
        (2, 1): {
            (2, 0): "(2 + u/v - v/u)/4",
            (1, 1): "-1",
            (0, 2): "(2 - u/v + v/u)/4",
            (1, 0): "(2*u + u**2/v + 4*v - v**2/u)/(2*(v-u))",
            (0, 1): "(4*u - u**2/v + 2*v + v**2/u)/(2*(u-v))",
            (0, 0): "(u**2 + v**2 + 4*u*v)/(u-v)**2",
        },
        (2, 2): {
            (2, 0): "(3*u - v)/(8*(u-v))",
            (1, 1): "1/2",
            (0, 2): "(u - 3*v)/(8*(u-v))",
            (1, 0): "-3*u*v/(2*(v-u)**2)",
            (0, 1): "-3*u*v/(2*(v-u)**2)",
        },
    },
    "lambda4": {
        (1, 1): {
            (2, 0): "(u + 3*v)/(4*(u-v))",
            (1, 1): "1/2",
            (0, 2): "-(3*u + v)/(4*(u-v))",
            (1, 0): "-(u**2 + 3*v**2)/(2*(u-v)**2)",
            (0, 1): "-(3*u**2 + v**2)/(2*(u-v)**2)",
            (0, 0): "-2*u*v/(v-u)**2",
        },
        (1, 2): {
            (2, 0): "u*v/(2*(v-u)**2)",
            (1, 1): "2*u*v/(2*(v-u)**2)",
            (0, 2): "u*v/(2*(v-u)**2)",
            (1, 0): "u*v/(2*(v-u)**2)",
            (0, 1): "u*v/(2*(v-u)**2)",
        },
        (2, 1): {
            (2, 0): "v/u - u/v - 2",
            (1, 1): "4",
            (0, 2): "u/v - v/u - 2",
            (1, 0): "(5*u + u**2/v + 9*v - 3*v**2/u)/(u-v)",
            (0, 1): "(9*u - 3*u**2/v + 5*v + v**2/u)/(u-v)",
            (0, 0): "2*(u**4 + v**4 - 6*u**2*v**2 - 4*u**3*v - 4*u*v**3)/(u*v*(u-v)**2)",
        },
        (2, 2): {
            (2, 0): "(7*u - 3*v)/(4*(v-u))",
            (1, 1): "-3/2",
            (0, 2): "(3*u - 7*v)/(4*(v-u))",
            (1, 0): "-(u**2 + 3*v**2 - 16*u*v)/(2*(u-v)**2)",
            (0, 1): "-(3*u**2 + v**2 - 16*u*v)/(2*(u-v)**2)",
        },
    },
}

UNVERIFIED = frozenset({("lambda2", (2, 1)), ("lambda3", (1, 1))})


def function(name: str, session: Session) -> FunctionOnGamma:
    m, terms = FUNCTIONS[name]
    return validate_function(BiForm.from_terms(m, terms), m, session)


def reference_entry(name: str, ij: tuple[int, int]) -> DiffOp:
    return DiffOp({ab: parse_coeff(text) for ab, text in OPERATORS[name][ij].items()})


def reference_operator(name: str) -> MatrixDiffOp:
    return MatrixDiffOp([[reference_entry(name, (i, j)) for j in (1, 2)] for i in (1, 2)])


def compare_entry(name: str, ij: tuple[int, int], computed: DiffOp) -> list:
    """Monomials ``(a, b)`` where ``computed`` differs from the reference."""
    ref = reference_entry(name, ij)
    keys = sorted(set(ref.coeffs) | set(computed.coeffs))
    return [ab for ab in keys if ref.coefficient(*ab) != computed.coefficient(*ab)]

