"""Baker-Akhiezer module elements ``psi = F / f**n * exp(x F1 + y F2)``.

Only the numerator ``F`` (a bidegree-(n, n) form with coefficients in
``x, y``) and the pole order ``n`` are stored; the exponential factor is
common to every element of a session.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from statistics import median_low

from .errors import DegenerateModule, InvalidLift, WitnessUndefined
from .kernel.coeff import ONE, ZERO, CoeffElem
from .kernel.forms import BiForm
from .kernel.laurent import LPoly, lpoly_divexact, lpoly_gcd
from .kernel.linalg import nullspace, rank
from .kernel.scalars import as_scalar
from .session import Session
from .surface import SurfacePoint, evaluate_at

__all__ = [
    "ANY",
    "BAElement",
    "BasisPair",
    "ExponentialFactor",
    "membership_check",
    "ba_derive",
    "ba_lift",
    "ba_scale_by_function",
    "rank_M",
    "default_basis",
    "ratio_witness",
]


class _Any:
    """Marker for numerators that vanish on both glued lines."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY"


ANY = _Any()


def combine_tags(a, b):
    if a is ANY:
        return b
    if b is ANY:
        return a
    if a is None or b is None or a != b:
        return None
    return a


@dataclass(frozen=True)
class BAElement:
    order: int
    numerator: BiForm
    lam: object = ANY

    def __post_init__(self):
        if self.numerator.n != self.order:
            raise ValueError(f"numerator bidegree {self.numerator.n} != pole order {self.order}")

    def is_zero(self) -> bool:
        return self.numerator.is_zero()


@dataclass(frozen=True)
class ExponentialFactor:
    """``exp(x f1/f + y f2/f)`` for one session."""

    f: BiForm
    f1: BiForm
    f2: BiForm

    @classmethod
    def of(cls, session: Session) -> "ExponentialFactor":
        return cls(session.f, session.f1, session.f2)

    def exponents_at(self, point: SurfacePoint):
        """``(F1(P), F2(P))``; undefined on ``f = 0``."""
        fv = evaluate_at(self.f, point)
        return evaluate_at(self.f1, point) / fv, evaluate_at(self.f2, point) / fv


@dataclass(frozen=True)
class BasisPair:
    psi1: BAElement
    psi2: BAElement

    def __iter__(self):
        return iter((self.psi1, self.psi2))

    def __getitem__(self, i):
        return (self.psi1, self.psi2)[i]


# --------------------------------------------------------------------------


def membership_check(numerator: BiForm, session: Session):
    """The constant ``Lambda`` with
    ``F(p1, t) = Lambda * A**n * exp(-c1 x - c2 y) * F(t, p2)``.

    Returns :data:`ANY` when both restrictions vanish and ``None`` when no
    constant works.
    """
    n = numerator.n
    left = numerator.eval_line("first", session.p1)
    right = numerator.eval_line("second", session.p2)
    lz = all(x.is_zero() for x in left)
    rz = all(x.is_zero() for x in right)
    if lz and rz:
        return ANY
    if rz:
        return None
    edge = session.edge_factor(n)
    j = next(i for i, x in enumerate(right) if not x.is_zero())
    ratio = left[j] / (edge * right[j])
    if not ratio.is_constant():
        return None
    lam = ratio.constant_value()
    for lx, rx in zip(left, right):
        if lx != edge * rx * lam:
            return None
    return lam


def ba_derive(e: BAElement, axis: str, session: Session) -> BAElement:
    """``d/dx`` or ``d/dy``: numerator ``f * dF + f_axis * F`` at order ``n + 1``."""
    key = ("derive", e.numerator, axis)

    def compute():
        num = session.f * e.numerator.derive(axis) + session.flow_form(axis) * e.numerator
        return num

    return BAElement(e.order + 1, session.memo(key, compute), e.lam)


def ba_lift(e: BAElement, m: int, session: Session) -> BAElement:
    """The same function written over ``f**m``."""
    if m < e.order:
        raise InvalidLift(f"cannot lift order {e.order} to {m}")
    if m == e.order:
        return e
    key = ("fpow", m - e.order)
    fp = session.memo(key, lambda: session.f ** (m - e.order))
    return BAElement(m, fp * e.numerator, e.lam)


def ba_scale_by_function(e: BAElement, lam, session: Session) -> BAElement:
    """Multiply by a function ``g / f**m`` on the glued surface."""
    return BAElement(e.order + lam.order, lam.numerator * e.numerator, e.lam)


def add_elements(session: Session, *elems: BAElement) -> BAElement:
    order = max(e.order for e in elems)
    num = BiForm.zero(order)
    tag = ANY
    for e in elems:
        num = num + ba_lift(e, order, session).numerator
        if not e.is_zero():
            tag = combine_tags(tag, e.lam)
    return BAElement(order, num, tag)


def scale_element(e: BAElement, c: CoeffElem) -> BAElement:
    return BAElement(e.order, e.numerator.scale(c), e.lam)


def derivative(e: BAElement, a: int, b: int, session: Session) -> BAElement:
    """``d^a/dx^a d^b/dy^b`` applied to ``e``."""
    for _ in range(a):
        e = ba_derive(e, "x", session)
    for _ in range(b):
        e = ba_derive(e, "y", session)
    return e


# --------------------------------------------------------------------------


def _constraint_rows(n: int, mu: CoeffElem, session: Session) -> list:
    """Rows (one per power of t) of ``F(p1,t) - mu * F(t,p2)`` in the
    flattened unknowns ``c[k][l]``, index ``k*(n+1) + l``."""
    a1, b1 = session.p1
    a2, b2 = session.p2
    w1 = [as_scalar(a1) ** k * as_scalar(b1) ** (n - k) for k in range(n + 1)]
    w2 = [as_scalar(a2) ** l * as_scalar(b2) ** (n - l) for l in range(n + 1)]
    size = (n + 1) ** 2
    rows = []
    for j in range(n + 1):
        row = [ZERO] * size
        for k in range(n + 1):
            row[k * (n + 1) + j] = row[k * (n + 1) + j] + w1[k]
        for l in range(n + 1):
            row[j * (n + 1) + l] = row[j * (n + 1) + l] - mu * w2[l]
        rows.append(row)
    return rows


def rank_M(n: int, session: Session) -> int:
    """Rank over the coefficient field of the pole-order-``n`` part.

    ``(n+1)**2`` minus the generic rank of the ``n + 1`` edge conditions.
    The conditions depend on ``Lambda`` polynomially with degree at most
    ``n + 1`` in every minor, so the maximum rank over ``n + 2`` distinct
    sample values is the generic one.
    """
    if n < 1:
        raise ValueError("pole order must be at least 1")
    edge = session.edge_factor(n)
    best = 0
    for lam in range(1, n + 3):
        r = rank(_constraint_rows(n, edge * lam, session))
        best = max(best, r)
        if best == n + 1:
            break
    return (n + 1) ** 2 - best


def _primitive(vec: list) -> list:
    """Clear denominators, strip the common factor, balance exponents."""
    den = LPoly.const(1)
    for x in vec:
        if not x.den.is_one():
            g = lpoly_gcd(den, x.den)
            den = den * lpoly_divexact(x.den, g)
    polys = [x.num * lpoly_divexact(den, x.den) if not x.is_zero() else x.num for x in vec]
    g = None
    for p in polys:
        if p:
            g = p if g is None else lpoly_gcd(g, p)
    if g is not None and not g.is_one():
        polys = [lpoly_divexact(p, g) if p else p for p in polys]
    rs = [r for p in polys for (r, _) in p.terms]
    ss = [s for p in polys for (_, s) in p.terms]
    r0, s0 = median_low(rs), median_low(ss)
    polys = [p.shift(-r0, -s0) for p in polys]
    lead = next(p for p in reversed(polys) if p).leading()[1]
    return [CoeffElem(p.scale(1 / as_scalar(lead))) for p in polys]


def default_basis(session: Session) -> BasisPair:
    """Two independent solutions of the edge conditions at pole order 1.

    Solves with ``Lambda = 1``, brings each kernel vector to a primitive,
    exponent-balanced form and keeps the two with fewest monomials (ties
    by support, lexicographically).
    """

    def compute():
        rows = _constraint_rows(1, session.edge_factor(1), session)
        kernel = nullspace(rows, 4, zero=ZERO, one=ONE)
        cands = []
        for vec in kernel:
            if all(x.is_zero() for x in vec):
                continue
            vec = _primitive(vec)
            support = tuple(i for i, x in enumerate(vec) if not x.is_zero())
            cands.append((len(support), support, vec))
        cands.sort(key=lambda t: (t[0], t[1]))
        chosen = []
        for _, _, vec in cands:
            if rank([v for v in chosen] + [vec]) == len(chosen) + 1:
                chosen.append(vec)
            if len(chosen) == 2:
                break
        if len(chosen) < 2:
            raise DegenerateModule("fewer than two independent elements of pole order 1")
        elems = []
        for vec in chosen:
            num = BiForm(1, [vec[0:2], vec[2:4]])
            elems.append(BAElement(1, num, membership_check(num, session)))
        return BasisPair(*elems)

    return session.memo(("default_basis",), compute)


def make_basis(h1: BiForm, h2: BiForm, session: Session) -> BasisPair:
    """Wrap two order-1 numerators, checking membership and independence."""
    elems = []
    for h in (h1, h2):
        tag = membership_check(h, session)
        if tag is None:
            raise DegenerateModule(f"{h} does not satisfy the edge condition")
        elems.append(BAElement(1, h, tag))
    if rank([h1.flat(), h2.flat()]) != 2:
        raise DegenerateModule("basis numerators are dependent")
    if combine_tags(elems[0].lam, elems[1].lam) is None:
        raise DegenerateModule("basis elements have different Lambda")
    return BasisPair(*elems)


def ratio_witness(basis: BasisPair, point: SurfacePoint) -> CoeffElem:
    """``h1(P) / h2(P)`` at the normalized representative of ``P``."""
    h1 = evaluate_at(basis.psi1.numerator, point)
    h2 = evaluate_at(basis.psi2.numerator, point)
    if h2.is_zero():
        raise WitnessUndefined(f"h2 vanishes identically at {point}")
    return h1 / h2
