"""Differential operators ``sum c_ab(x, y) dx^a dy^b`` with coefficients on
the left, their 2x2 matrices, and their action on module elements."""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

from .bamodule import BAElement, add_elements, derivative, scale_element
from .kernel.coeff import ONE, ZERO, CoeffElem
from .kernel.forms import BiForm
from .session import Session

__all__ = [
    "DiffOp",
    "MatrixDiffOp",
    "op_compose",
    "commutator",
    "apply_to_ba",
    "matrix_apply",
]


def _derive_n(c: CoeffElem, a: int, b: int, cache: dict) -> CoeffElem:
    key = (c, a, b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if a == 0 and b == 0:
        r = c
    elif a > 0:
        r = _derive_n(c, a - 1, b, cache).derive("x")
    else:
        r = _derive_n(c, 0, b - 1, cache).derive("y")
    cache[key] = r
    return r


class DiffOp:
    """Scalar differential operator; ``coeffs`` maps ``(a, b)`` to the
    coefficient of ``dx^a dy^b``.  Zero coefficients are never stored."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping | None = None):
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            if not isinstance(c, CoeffElem):
                c = CoeffElem._coerce(c)
            if a < 0 or b < 0:
                raise ValueError("negative derivative order")
            if not c.is_zero():
                clean[(a, b)] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls({(0, 0): ONE})

    @classmethod
    def dx(cls) -> "DiffOp":
        return cls({(1, 0): ONE})

    @classmethod
    def dy(cls) -> "DiffOp":
        return cls({(0, 1): ONE})

    @classmethod
    def scalar(cls, c) -> "DiffOp":
        return cls({(0, 0): c})

    @property
    def order(self) -> int:
        return max((a + b for a, b in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, a: int, b: int) -> CoeffElem:
        return self.coeffs.get((a, b), ZERO)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return DiffOp(out)

    def __neg__(self):
        return DiffOp({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        """Left multiplication by a coefficient."""
        return DiffOp({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return op_compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def sorted_terms(self):
        """Terms by total order descending, then ``dx`` power descending."""
        return sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __repr__(self):
        return f"DiffOp({self})"

    def __str__(self):
        from .emit import diffop_text

        return diffop_text(self)


def op_compose(d: DiffOp, e: DiffOp) -> DiffOp:
    """The product ``d o e``, moving derivatives right with Leibniz' rule."""
    out: dict = {}
    cache: dict = {}
    for (a, b), c in d.coeffs.items():
        for (p, q), g in e.coeffs.items():
            for i in range(a + 1):
                for j in range(b + 1):
                    dg = _derive_n(g, i, j, cache)
                    if dg.is_zero():
                        continue
                    term = c * dg * (comb(a, i) * comb(b, j))
                    key = (a - i + p, b - j + q)
                    out[key] = out[key] + term if key in out else term
    return DiffOp(out)


class MatrixDiffOp:
    """2x2 matrix of :class:`DiffOp` entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable[DiffOp]]):
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("MatrixDiffOp needs a 2x2 grid")
        self.entries = rows

    @classmethod
    def identity(cls) -> "MatrixDiffOp":
        i, z = DiffOp.identity(), DiffOp()
        return cls([[i, z], [z, i]])

    @classmethod
    def zero(cls) -> "MatrixDiffOp":
        return cls([[DiffOp(), DiffOp()], [DiffOp(), DiffOp()]])

    @classmethod
    def diagonal(cls, d: DiffOp) -> "MatrixDiffOp":
        return cls([[d, DiffOp()], [DiffOp(), d]])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def order(self) -> int:
        return max(e.order for r in self.entries for e in r)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def __add__(self, other):
        return MatrixDiffOp([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return MatrixDiffOp([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return MatrixDiffOp([[-a for a in r] for r in self.entries])

    def scale(self, c) -> "MatrixDiffOp":
        return MatrixDiffOp([[a.scale(c) for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, MatrixDiffOp):
            e, f = self.entries, other.entries
            return MatrixDiffOp(
                [[op_compose(e[i][0], f[0][j]) + op_compose(e[i][1], f[1][j]) for j in range(2)] for i in range(2)]
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, MatrixDiffOp):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"MatrixDiffOp({self.entries!r})"


def commutator(D: MatrixDiffOp, E: MatrixDiffOp) -> MatrixDiffOp:
    return D * E - E * D


def apply_to_ba(d: DiffOp, e: BAElement, session: Session) -> BAElement:
    """``d psi`` at pole order ``n + order(d)``."""
    order = e.order + d.order
    if d.is_zero():
        return BAElement(order, BiForm.zero(order), e.lam)
    parts = [scale_element(derivative(e, a, b, session), c) for (a, b), c in d.coeffs.items()]
    out = add_elements(session, *parts)
    if out.order < order:
        out = add_elements(session, out, BAElement(order, BiForm.zero(order), e.lam))
    return out


def matrix_apply(D: MatrixDiffOp, psi, session: Session) -> tuple[BAElement, BAElement]:
    """Row-wise action on the vector ``(psi1, psi2)``."""
    return tuple(
        add_elements(session, apply_to_ba(D[i, 0], psi[0], session), apply_to_ba(D[i, 1], psi[1], session))
        for i in range(2)
    )
