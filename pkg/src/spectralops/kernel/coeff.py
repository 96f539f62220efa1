"""Fractions of exponential Laurent polynomials: the coefficient field.

A :class:`CoeffElem` is kept in canonical form

* the denominator is an ordinary polynomial with no monomial factor
  (every variable occurs to exponent 0 in some term),
* numerator and denominator are coprime,
* the lexicographically leading coefficient of the denominator is 1.

so equality is a comparison of two term dictionaries.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero
from .laurent import LPoly, lpoly_divexact, lpoly_gcd
from .scalars import Quad, as_scalar

__all__ = ["CoeffElem", "normalize", "ZERO", "ONE", "U", "V"]

_ONE_POLY = LPoly.const(1)


class CoeffElem:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical: bool = False):
        if not isinstance(num, LPoly):
            num = LPoly.const(num)
        if den is None:
            den = _ONE_POLY
            _canonical = True
        elif not isinstance(den, LPoly):
            den = LPoly.const(den)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors ----------------------------------------------------------

    @classmethod
    def const(cls, c) -> "CoeffElem":
        return cls(LPoly.const(c))

    @classmethod
    def exp(cls, r=0, s=0, c=1) -> "CoeffElem":
        """``c * exp(r*x + s*y)``."""
        return cls(LPoly.monomial(r, s, c))

    # predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} depends on x, y")
        return self.num.constant_value()

    def size(self) -> int:
        """Number of monomials in numerator plus denominator."""
        return len(self.num) + len(self.den)

    # arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, CoeffElem):
            return other
        if isinstance(other, LPoly):
            return CoeffElem(other)
        if isinstance(other, (int, Fraction, Quad)):
            return CoeffElem(LPoly.const(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return CoeffElem(self.num + other.num, _ONE_POLY, True)
        if d1.is_one():
            # n2 is coprime to d2, hence so is n1*d2 + n2
            return CoeffElem(self.num * d2 + other.num, d2, True)
        if d2.is_one():
            return CoeffElem(self.num + other.num * d1, d1, True)
        if d1 == d2:
            return CoeffElem(self.num + other.num, d1)
        g = lpoly_gcd(d1, d2)
        if g.is_one():
            return CoeffElem(self.num * d2 + other.num * d1, d1 * d2)
        c1 = lpoly_divexact(d2, g)
        c2 = lpoly_divexact(d1, g)
        return CoeffElem(self.num * c1 + other.num * c2, d1 * c1)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(-self.num, self.den, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            if not isinstance(other, Quad) and other == 0:
                return ZERO
            return CoeffElem(self.num.scale(other), self.den, True)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return CoeffElem(self.num * other.num, _ONE_POLY, True)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cross cancellation; the quotients keep leading coefficient 1 and
        # no monomial factor, so the product is already canonical
        if not d2.is_one():
            g = lpoly_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = lpoly_divexact(n1, g), lpoly_divexact(d2, g)
        if not d1.is_one():
            g = lpoly_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = lpoly_divexact(n2, g), lpoly_divexact(d1, g)
        return CoeffElem(n1 * n2, d1 * d2, True)

    __rmul__ = __mul__

    def inverse(self) -> "CoeffElem":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero coefficient")
        return CoeffElem(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            if not isinstance(other, Quad) and other == 0:
                raise DivisionByZero("division by zero")
            return CoeffElem(self.num.scale(1 / as_scalar(other)), self.den, True)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.den.is_one():
            return CoeffElem(self.num ** n, _ONE_POLY, True)
        # coprime stays coprime under powers
        return CoeffElem(self.num ** n, self.den ** n, True)

    def derive(self, axis: str) -> "CoeffElem":
        """Exact ``d/dx`` or ``d/dy`` (``axis`` is ``'x'`` or ``'y'``)."""
        if self.den.is_one():
            return CoeffElem(self.num.derive(axis), _ONE_POLY, True)
        n, d = self.num, self.den
        return CoeffElem(n.derive(axis) * d - n * d.derive(axis), d * d)

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"CoeffElem({self})"

    def __str__(self):
        from .printing import coeff_str

        return coeff_str(self)


def _canonicalize(num: LPoly, den: LPoly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, _ONE_POLY
    if den.is_monomial():
        (k, c), = den.terms.items()
        return num.shift(-k[0], -k[1]).scale(1 / as_scalar(c)), _ONE_POLY
    r0, s0 = den.min_exponents()
    if r0 != 0 or s0 != 0:
        den = den.shift(-r0, -s0)
        num = num.shift(-r0, -s0)
    if not num.is_monomial():
        g = lpoly_gcd(num, den)
        if not g.is_one():
            num = lpoly_divexact(num, g)
            den = lpoly_divexact(den, g)
            r0, s0 = den.min_exponents()
            if r0 != 0 or s0 != 0:
                den = den.shift(-r0, -s0)
                num = num.shift(-r0, -s0)
    lc = den.leading()[1]
    if lc != 1:
        inv = 1 / as_scalar(lc)
        num, den = num.scale(inv), den.scale(inv)
    if den.is_one():
        den = _ONE_POLY
    return num, den


def normalize(e: CoeffElem) -> CoeffElem:
    """Canonical form of ``e``.  Values are canonical from construction, so
    this re-runs the reduction from scratch and is idempotent."""
    return CoeffElem(e.num, e.den)


ZERO = CoeffElem(LPoly({}, True))
ONE = CoeffElem(LPoly.const(1))
U = CoeffElem.exp(1, 0)
V = CoeffElem.exp(0, 1)
