"""Exact linear algebra.

``rref``/``nullspace``/``rank`` work over any exact field whose elements
support ``+ - * /`` (ground-field scalars or :class:`CoeffElem`).
``solve_fraction_free`` is the workhorse for operator construction: it
clears row denominators, runs Bareiss elimination over the Laurent
polynomial ring and only forms fractions during back substitution.
"""

from __future__ import annotations

from .coeff import CoeffElem, ZERO
from .laurent import LPoly, lpoly_divexact, lpoly_gcd
from .scalars import Quad

__all__ = [
    "is_zero",
    "rref",
    "rank",
    "nullspace",
    "NotUnique",
    "Inconsistent",
    "solve_fraction_free",
]


class NotUnique(ArithmeticError):
    """The coefficient matrix has a nontrivial kernel."""


class Inconsistent(ArithmeticError):
    """Some right-hand side is outside the column space."""


def is_zero(x) -> bool:
    if isinstance(x, (CoeffElem, LPoly)):
        return x.is_zero()
    return not isinstance(x, Quad) and x == 0


def _size(x) -> int:
    if isinstance(x, CoeffElem):
        return x.size()
    if isinstance(x, LPoly):
        return len(x)
    return 1


def rref(rows):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivots are chosen per column among the remaining rows by fewest
    monomials, ties going to the lowest row index.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(m)):
            if not is_zero(m[i][col]):
                if best is None or _size(m[i][col]) < _size(m[best][col]):
                    best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        piv = m[r][col]
        m[r] = [x / piv if not is_zero(x) else x for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][col]):
                f = m[i][col]
                m[i] = [a - f * b if not is_zero(b) else a for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int, zero=0, one=1):
    """Basis of the right kernel, one vector per free column (in order)."""
    if not rows:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            if not is_zero(row[fc]):
                v[pc] = -row[fc]
        basis.append(v)
    return basis


# --------------------------------------------------------------------------


def _lcm(a: LPoly, b: LPoly) -> LPoly:
    if a.is_one():
        return b
    if b.is_one() or a == b:
        return a
    g = lpoly_gcd(a, b)
    return a * lpoly_divexact(b, g)


def _clear_row(row) -> list:
    den = LPoly.const(1)
    for x in row:
        if not x.den.is_one():
            den = _lcm(den, x.den)
    if den.is_one():
        return [x.num for x in row]
    return [x.num * lpoly_divexact(den, x.den) if not x.is_zero() else x.num for x in row]


def solve_fraction_free(a_rows, b_rows):
    """Solve ``A X = B`` for the unique ``X``.

    ``a_rows`` is ``neq x nunk`` and ``b_rows`` is ``neq x nrhs``, both of
    :class:`CoeffElem`.  Overdetermined systems are fine as long as they
    are consistent.  Raises :class:`NotUnique` when a column has no pivot
    and :class:`Inconsistent` when a right-hand side is not reachable.
    Returns ``X`` as a list of ``nunk`` rows.
    """
    nunk = len(a_rows[0]) if a_rows else 0
    m = [_clear_row(list(ar) + list(br)) for ar, br in zip(a_rows, b_rows)]
    neq = len(m)
    width = len(m[0]) if m else 0
    prev = LPoly.const(1)
    for col in range(nunk):
        best = None
        for i in range(col, neq):
            if m[i][col]:
                if best is None or len(m[i][col]) < len(m[best][col]):
                    best = i
        if best is None:
            raise NotUnique(f"no pivot in column {col}")
        m[col], m[best] = m[best], m[col]
        piv = m[col]
        p = piv[col]
        for i in range(col + 1, neq):
            row = m[i]
            f = row[col]
            new = row[: col + 1]
            new[col] = LPoly({}, True)
            for j in range(col + 1, width):
                t = p * row[j]
                if f and piv[j]:
                    t = t - f * piv[j]
                new.append(lpoly_divexact(t, prev) if t else t)
            m[i] = new
        prev = p
    for i in range(nunk, neq):
        if any(m[i][j] for j in range(nunk, width)):
            raise Inconsistent(f"equation {i} cannot be satisfied")
    nrhs = width - nunk
    x = [[ZERO] * nrhs for _ in range(nunk)]
    for k in range(nunk - 1, -1, -1):
        row = m[k]
        pk = CoeffElem(row[k])
        for c in range(nrhs):
            acc = CoeffElem(row[nunk + c])
            for j in range(k + 1, nunk):
                if row[j] and not x[j][c].is_zero():
                    acc = acc - CoeffElem(row[j]) * x[j][c]
            x[k][c] = acc / pk
    return x
