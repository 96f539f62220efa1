"""A computation session: gluing data, section form and the chosen flow forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DegenerateGluing
from .kernel.coeff import CoeffElem
from .kernel.forms import BiForm
from .kernel.scalars import Quad
from .surface import (
    FlowForm,
    GluingData,
    check_section,
    choose_flow_pair,
    flow_form_space,
)

__all__ = ["Session", "worked_example_session"]


def _denominator(c) -> int:
    if isinstance(c, Quad):
        raise DegenerateGluing("flow constants must be rational to define exponentials")
    return Fraction(c).denominator


@dataclass(frozen=True, eq=False)
class Session:
    gluing: GluingData
    f: BiForm
    flow1: FlowForm
    flow2: FlowForm
    d: int | None = None
    _memo: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(
        cls,
        p1,
        p2,
        f: BiForm,
        flow_preferences: Sequence[FlowForm] = (),
        d: int | None = None,
        A=None,
    ) -> "Session":
        """Validate the section form, solve for the flow forms and pick a pair."""
        gluing = GluingData(tuple(p1), tuple(p2))
        found = check_section(f, gluing)
        if found is None:
            raise DegenerateGluing("form violates the section condition")
        if A is not None and A != found:
            raise DegenerateGluing(f"stated A = {A} but the section condition gives A = {found}")
        gluing = GluingData(gluing.p1, gluing.p2, found)
        basis = flow_form_space(f, gluing)
        f1, f2 = choose_flow_pair(basis, f, flow_preferences)
        return cls(gluing, f, f1, f2, d)

    @property
    def A(self):
        return self.gluing.A

    @property
    def p1(self):
        return self.gluing.p1

    @property
    def p2(self):
        return self.gluing.p2

    @property
    def f1(self) -> BiForm:
        return self.flow1.form

    @property
    def f2(self) -> BiForm:
        return self.flow2.form

    @property
    def c1(self):
        return self.flow1.c

    @property
    def c2(self):
        return self.flow2.c

    @property
    def exponent_denominator(self) -> int:
        """Common denominator of the exponent lattice for ``exp(-c1 x - c2 y)``."""
        return lcm(_denominator(self.c1), _denominator(self.c2))

    def edge_factor(self, n: int) -> CoeffElem:
        """``A**n * exp(-c1 x - c2 y)``, relating the two edge restrictions."""
        return CoeffElem.exp(-Fraction(self.c1), -Fraction(self.c2), self.A ** n)

    def flow_form(self, axis: str) -> BiForm:
        return self.f1 if axis == "x" else self.f2

    def memo(self, key, compute):
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value


def worked_example_session() -> Session:
    """The worked example: ``p1 = (1:0)``, ``p2 = (0:1)``,
    ``f = z1 z2 + z1 w2 + w1 w2`` with its standard pair of flow forms."""
    f = BiForm.bilinear(1, 1, 0, 1)
    prefs = (
        FlowForm(BiForm.bilinear(1, 0, 2, -1), Fraction(1)),
        FlowForm(BiForm.bilinear(-1, 0, 2, 1), Fraction(-1)),
    )
    return Session.build((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), f, prefs)
