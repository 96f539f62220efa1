"""The glued surface: CP1 x CP1 with ``p1 x CP1`` identified with ``CP1 x p2``.

Everything here works with bilinear forms whose coefficients are
ground-field constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateGluing,
    DegeneratePencil,
    NonGenericData,
    ZeroForm,
)
from .kernel.coeff import CoeffElem
from .kernel.forms import BiForm, check_point, normalize_point, points_equal
from .kernel.linalg import is_zero, nullspace, rank
from .kernel.scalars import Quad, as_scalar, sqrt_scalar

__all__ = [
    "GluingData",
    "FlowForm",
    "SurfacePoint",
    "check_section",
    "flow_form_space",
    "choose_flow_pair",
    "intersection_points",
    "check_distinct_witnesses",
    "constant_coeffs",
]

_BILINEAR_BASIS = (
    BiForm.bilinear(1, 0, 0, 0),
    BiForm.bilinear(0, 1, 0, 0),
    BiForm.bilinear(0, 0, 1, 0),
    BiForm.bilinear(0, 0, 0, 1),
)


@dataclass(frozen=True)
class GluingData:
    p1: tuple
    p2: tuple
    A: object = None

    def __post_init__(self):
        check_point(self.p1)
        check_point(self.p2)
        a1, b1 = self.p1
        a2, b2 = self.p2
        if is_zero(as_scalar(a1) * as_scalar(b2) - as_scalar(a2) * as_scalar(b1)):
            raise DegenerateGluing("p1 equals p2")
        if self.A is not None and is_zero(self.A):
            raise DegenerateGluing("gluing factor A must be nonzero")


@dataclass(frozen=True)
class FlowForm:
    form: BiForm
    c: object

    def vector(self) -> list:
        return [*constant_coeffs(self.form), self.c]


@dataclass(frozen=True)
class SurfacePoint:
    """A point of CP1 x CP1, stored with each factor normalized."""

    first: tuple
    second: tuple
    _norm: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_norm", (normalize_point(self.first), normalize_point(self.second)))

    def normalized(self) -> tuple:
        return self._norm

    def __eq__(self, other):
        if not isinstance(other, SurfacePoint):
            return NotImplemented
        return self._norm == other._norm

    def __hash__(self):
        return hash(self._norm)

    def __str__(self):
        from .kernel.scalars import scalar_str

        (a, b), (c, d) = self._norm
        return f"({scalar_str(a)}:{scalar_str(b)}, {scalar_str(c)}:{scalar_str(d)})"


def constant_coeffs(form: BiForm) -> list:
    """``[alpha, beta, gamma, delta]`` as scalars; the form must be bilinear
    with constant coefficients."""
    if form.n != 1:
        raise ValueError("expected a bidegree (1,1) form")
    return [c.constant_value() for c in form.bilinear_coeffs()]


def _line_scalars(form: BiForm, slot: str, point) -> list:
    return [c.constant_value() for c in form.eval_line(slot, point)]


def check_section(form: BiForm, gluing: GluingData):
    """The factor ``A`` with ``form(p1, t) = A * form(t, p2)`` for all ``t``,
    or ``None`` when no nonzero constant works."""
    if form.is_zero():
        raise ZeroForm("the section form is identically zero")
    left = _line_scalars(form, "first", gluing.p1)
    right = _line_scalars(form, "second", gluing.p2)
    if all(is_zero(x) for x in right) or all(is_zero(x) for x in left):
        return None
    j = next(i for i, x in enumerate(right) if not is_zero(x))
    A = left[j] / right[j]
    if any(not is_zero(lx - A * rx) for lx, rx in zip(left, right)):
        return None
    return A


def _flow_system(f: BiForm, gluing: GluingData, A) -> list:
    """Rows (one per power of t) in the unknowns alpha, beta, gamma, delta, c."""
    cols = []
    for e in _BILINEAR_BASIS:
        left = _line_scalars(e, "first", gluing.p1)
        right = _line_scalars(e, "second", gluing.p2)
        cols.append([lx - A * rx for lx, rx in zip(left, right)])
    fr = _line_scalars(f, "second", gluing.p2)
    cols.append([-A * x for x in fr])
    return [[col[t] for col in cols] for t in range(2)]


def flow_form_space(f: BiForm, gluing: GluingData) -> list[FlowForm]:
    """Basis of the bilinear forms ``h`` with constants ``c`` satisfying
    ``h(p1,t) - A h(t,p2) - A c f(t,p2) = 0``."""
    A = gluing.A if gluing.A is not None else check_section(f, gluing)
    if A is None:
        raise DegenerateGluing("form does not satisfy the section condition")
    rows = _flow_system(f, gluing, A)
    basis = nullspace(rows, 5, zero=Fraction(0), one=Fraction(1))
    if len(basis) != 3:
        raise DegenerateGluing(f"flow-form space has dimension {len(basis)}, expected 3")
    return [FlowForm(BiForm.bilinear(*v[:4]), v[4]) for v in basis]


def _in_span(vec, basis) -> bool:
    return rank([list(b) for b in basis] + [list(vec)]) == rank([list(b) for b in basis])


def choose_flow_pair(
    basis: Sequence[FlowForm],
    f: BiForm,
    preferences: Sequence[FlowForm] = (),
) -> tuple[FlowForm, FlowForm]:
    """Two flow forms independent of each other and of ``f``.

    Preferred forms are tried first, in order, and kept only if they lie
    in the span of ``basis``; the rest of the pair is filled greedily from
    ``basis``.
    """
    if len(basis) != 3:
        raise DegenerateGluing(f"flow-form basis has dimension {len(basis)}, expected 3")
    bvecs = [b.vector() for b in basis]
    chosen: list[FlowForm] = []
    picked = [constant_coeffs(f)]
    candidates = [p for p in preferences if _in_span(p.vector(), bvecs)] + list(basis)
    for cand in candidates:
        v = constant_coeffs(cand.form)
        if rank(picked + [v]) == len(picked) + 1:
            chosen.append(cand)
            picked.append(v)
            if len(chosen) == 2:
                return chosen[0], chosen[1]
    raise DegenerateGluing("no flow forms independent of f")


def _sort_key(point: SurfacePoint):
    def parts(x):
        if isinstance(x, Quad):
            return (x.b, x.a)
        return (Fraction(0), Fraction(x))

    (a1, b1), (a2, b2) = point.normalized()
    # points with w = 0 go last
    return (b1 == 0, parts(a1), b2 == 0, parts(a2))


def intersection_points(f: BiForm, h: BiForm, d: int | None = None) -> tuple[SurfacePoint, SurfacePoint]:
    """The two points where ``f = 0`` and ``h = 0`` meet.

    Roots may need ``Q(sqrt(disc))``; ``d`` pins the extension already in
    use.  The pair is ordered by the first coordinate ``z1/w1``: smaller
    irrational part first, then smaller rational part.
    """
    al, be, ga, de = constant_coeffs(f)
    al2, be2, ga2, de2 = constant_coeffs(h)
    if rank([[al, be, ga, de], [al2, be2, ga2, de2]]) < 2:
        raise DegeneratePencil("forms are proportional")
    # f = z1*(al z2 + be w2) + w1*(ga z2 + de w2); eliminate (z1 : w1)
    qa = al * ga2 - ga * al2
    qb = al * de2 + be * ga2 - ga * be2 - de * al2
    qc = be * de2 - de * be2
    if all(is_zero(x) for x in (qa, qb, qc)):
        raise NonGenericData("curves share a component")
    roots = []
    if not is_zero(qa):
        disc = qb * qb - 4 * qa * qc
        if is_zero(disc):
            raise NonGenericData("curves are tangent: coincident intersection points")
        s = sqrt_scalar(disc, d)
        for sign in (1, -1):
            roots.append(((-qb + sign * s) / (2 * qa), Fraction(1)))
    else:
        if is_zero(qb):
            raise NonGenericData("coincident intersection points at w2 = 0")
        roots = [(Fraction(1), Fraction(0)), (-qc / qb, Fraction(1))]
    points = []
    for z2, w2 in roots:
        l1 = al * z2 + be * w2
        l0 = ga * z2 + de * w2
        if is_zero(l1) and is_zero(l0):
            l1 = al2 * z2 + be2 * w2
            l0 = ga2 * z2 + de2 * w2
        if is_zero(l1) and is_zero(l0):
            raise NonGenericData("a whole line lies on both curves")
        points.append(SurfacePoint((-l0, l1), (z2, w2)))
    points.sort(key=_sort_key)
    if points[0] == points[1]:
        raise NonGenericData("coincident intersection points")
    return points[0], points[1]


def check_distinct_witnesses(*points: SurfacePoint) -> bool:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                return False
    return True


def evaluate_at(form: BiForm, point: SurfacePoint) -> CoeffElem:
    """Value at the normalized representative of ``point``."""
    first, second = point.normalized()
    return form.eval_point(first, second)
