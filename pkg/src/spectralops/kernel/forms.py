"""Bihomogeneous forms of bidegree (n, n) on CP1 x CP1.

``BiForm(n, c)`` denotes ``sum c[k][l] z1^k w1^(n-k) z2^l w2^(n-l)`` with
:class:`CoeffElem` coefficients.  Projective points are pairs ``(a, b)``
meaning ``(a : b)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InvalidProjectivePoint
from .coeff import ONE, ZERO, CoeffElem
from .scalars import Quad, as_scalar

__all__ = ["BiForm", "check_point", "normalize_point", "points_equal"]


def _c(x) -> CoeffElem:
    return x if isinstance(x, CoeffElem) else CoeffElem._coerce(x)


def _is_zero_scalar(x) -> bool:
    return not isinstance(x, Quad) and x == 0


def check_point(point) -> tuple:
    a, b = point
    if _is_zero_scalar(a) and _is_zero_scalar(b):
        raise InvalidProjectivePoint("(0:0) is not a point of CP1")
    return a, b


def normalize_point(point) -> tuple:
    """Scale so the last nonzero coordinate is 1."""
    a, b = check_point(point)
    if not _is_zero_scalar(b):
        return as_scalar(a) / as_scalar(b), Fraction(1)
    return Fraction(1), Fraction(0)


def points_equal(p, q) -> bool:
    return normalize_point(p) == normalize_point(q)


def _binom_row(n: int, a, b) -> list:
    """``[a^k b^(n-k) for k in 0..n]``."""
    pa = [1] * (n + 1)
    pb = [1] * (n + 1)
    for k in range(1, n + 1):
        pa[k] = pa[k - 1] * a
        pb[k] = pb[k - 1] * b
    return [pa[k] * pb[n - k] for k in range(n + 1)]


class BiForm:
    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs: Sequence[Sequence] | None = None):
        if n < 0:
            raise ValueError("negative bidegree")
        if coeffs is None:
            coeffs = [[ZERO] * (n + 1) for _ in range(n + 1)]
        if len(coeffs) != n + 1 or any(len(row) != n + 1 for row in coeffs):
            raise ValueError(f"coefficient array must be {n + 1}x{n + 1}")
        self.n = n
        self.c = tuple(tuple(_c(x) for x in row) for row in coeffs)
        self._hash = None

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "BiForm":
        return cls(n)

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "BiForm":
        """``terms`` maps ``(k, l)`` (powers of z1 and z2) to coefficients."""
        rows = [[ZERO] * (n + 1) for _ in range(n + 1)]
        for (k, l), v in terms.items():
            if not (0 <= k <= n and 0 <= l <= n):
                raise ValueError(f"monomial ({k}, {l}) outside bidegree {n}")
            rows[k][l] = rows[k][l] + _c(v)
        return cls(n, rows)

    @classmethod
    def bilinear(cls, alpha, beta, gamma, delta) -> "BiForm":
        """``alpha z1 z2 + beta z1 w2 + gamma w1 z2 + delta w1 w2``."""
        return cls(1, [[delta, gamma], [beta, alpha]])

    @classmethod
    def one(cls) -> "BiForm":
        return cls(0, [[ONE]])

    # access ----------------------------------------------------------------

    def terms(self) -> dict:
        return {
            (k, l): x
            for k, row in enumerate(self.c)
            for l, x in enumerate(row)
            if not x.is_zero()
        }

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.c for x in row)

    def is_constant_coefficient(self) -> bool:
        return all(x.is_constant() for row in self.c for x in row)

    def monomial_count(self) -> int:
        return sum(1 for row in self.c for x in row if not x.is_zero())

    def flat(self) -> list:
        return [x for row in self.c for x in row]

    def bilinear_coeffs(self) -> tuple:
        """``(alpha, beta, gamma, delta)`` of a bidegree-1 form."""
        if self.n != 1:
            raise ValueError("not a bilinear form")
        return self.c[1][1], self.c[1][0], self.c[0][1], self.c[0][0]

    # arithmetic ------------------------------------------------------------

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.n != other.n:
            raise ValueError(f"bidegree mismatch: {self.n} vs {other.n}")
        return BiForm(self.n, [[a + b for a, b in zip(r, s)] for r, s in zip(self.c, other.c)])

    def __sub__(self, other: "BiForm") -> "BiForm":
        if self.n != other.n:
            raise ValueError(f"bidegree mismatch: {self.n} vs {other.n}")
        return BiForm(self.n, [[a - b for a, b in zip(r, s)] for r, s in zip(self.c, other.c)])

    def __neg__(self):
        return BiForm(self.n, [[-a for a in r] for r in self.c])

    def scale(self, e) -> "BiForm":
        e = _c(e)
        if e.is_zero():
            return BiForm(self.n)
        return BiForm(self.n, [[a * e for a in r] for r in self.c])

    def __mul__(self, other):
        if not isinstance(other, BiForm):
            return self.scale(other)
        n, m = self.n, other.n
        rows = [[ZERO] * (n + m + 1) for _ in range(n + m + 1)]
        right = other.terms()
        for (k, l), a in self.terms().items():
            for (p, q), b in right.items():
                rows[k + p][l + q] = rows[k + p][l + q] + a * b
        return BiForm(n + m, rows)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "BiForm":
        result = BiForm.one()
        for _ in range(e):
            result = result * self
        return result

    def derive(self, axis: str) -> "BiForm":
        return BiForm(self.n, [[a.derive(axis) for a in r] for r in self.c])

    # evaluation ------------------------------------------------------------

    def eval_line(self, slot: str, point) -> list:
        """Substitute ``point`` into one factor of CP1 x CP1.

        Returns the ``n + 1`` coefficients of the resulting form in the free
        factor's coordinates ``(t1 : t2)``, indexed by the power of ``t1``.
        """
        a, b = check_point(point)
        weights = _binom_row(self.n, a, b)
        n = self.n
        out = []
        if slot == "first":
            for l in range(n + 1):
                acc = ZERO
                for k in range(n + 1):
                    w = weights[k]
                    if not _is_zero_scalar(w) and not self.c[k][l].is_zero():
                        acc = acc + self.c[k][l] * w
                out.append(acc)
        elif slot == "second":
            for k in range(n + 1):
                acc = ZERO
                for l in range(n + 1):
                    w = weights[l]
                    if not _is_zero_scalar(w) and not self.c[k][l].is_zero():
                        acc = acc + self.c[k][l] * w
                out.append(acc)
        else:
            raise ValueError(f"slot must be 'first' or 'second', not {slot!r}")
        return out

    def eval_point(self, p1, p2) -> CoeffElem:
        """Value at ``(p1, p2)`` for the given (not rescaled) representatives."""
        return sum(
            (x * w for x, w in zip(self.eval_line("first", p1), _binom_row(self.n, *check_point(p2)))),
            ZERO,
        )

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.c))
        return self._hash

    def __repr__(self):
        return f"BiForm({self.n}, {self})"

    def __str__(self):
        from .printing import biform_str

        return biform_str(self)
