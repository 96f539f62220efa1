"""Ground field: the rationals and one real or imaginary quadratic extension.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
``Q(sqrt(d))`` with a nonzero irrational part are :class:`Quad`; every
operation that produces a zero irrational part hands back a ``Fraction``
instead, so the two variants never overlap.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import UnsupportedExtension

__all__ = [
    "Quad",
    "quad",
    "as_scalar",
    "is_scalar",
    "squarefree_decompose",
    "sqrt_scalar",
    "scalar_str",
    "conjugate",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Quad:
    """``a + b*sqrt(d)`` with ``b != 0`` and ``d`` square-free, ``d != 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        b = _frac(b)
        if b == 0:
            raise ValueError("Quad with b == 0; use quad() to get a demoted value")
        if d in (0, 1):
            raise ValueError(f"d = {d} does not define a quadratic extension")
        self.a = _frac(a)
        self.b = b
        self.d = int(d)

    # coercion helpers ---------------------------------------------------

    def _split(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise UnsupportedExtension(
                    f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return quad(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        c, e = o
        return quad(self.a * c + self.b * e * self.d, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        # n == 0 would need d to be a rational square, which d is not
        return quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        if isinstance(other, Quad):
            return self * other.inverse()
        if o[0] == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return quad(self.a / o[0], self.b / o[0], self.d)

    def __rtruediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return self.inverse() * Fraction(o[0])

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Quad):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return scalar_str(self)


def quad(a, b, d: int):
    """Build ``a + b*sqrt(d)``, demoting to ``Fraction`` when ``b == 0``."""
    b = _frac(b)
    if b == 0:
        return _frac(a)
    return Quad(a, b, d)


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Quad))


def as_scalar(x):
    """Coerce ints, strings ``"p/q"`` and ``Quad`` values to field elements."""
    if isinstance(x, Quad):
        return x
    return _frac(x)


def conjugate(x):
    if isinstance(x, Quad):
        return Quad(x.a, -x.b, x.d)
    return x


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * r`` with ``r`` square-free; returns ``(s, r)``.

    The sign stays with ``r``.  Trial division: inputs are small.
    """
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, r = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1 if p == 2 else 2
    r *= n
    return s, sign * r


def _sqrt_rational(q: Fraction):
    """Square root of a rational in ``Q`` or ``Q(sqrt(r))``."""
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    s, r = squarefree_decompose(num * den)
    if r == 1:
        return Fraction(s, den)
    return Quad(0, Fraction(s, den), r)


def sqrt_scalar(x, d: int | None = None):
    """Exact square root of ``x`` inside a quadratic field.

    ``d`` is the extension already in use, if any.  A rational ``x`` whose
    root needs a different extension raises :class:`UnsupportedExtension`;
    so does a ``Quad`` that is not a square in its own field.  The returned
    root is one of the two; callers pick signs themselves.
    """
    if isinstance(x, Quad):
        if d is not None and d != x.d:
            raise UnsupportedExtension(f"Q(sqrt({x.d})) value in a Q(sqrt({d})) session")
        return _sqrt_quad(x)
    root = _sqrt_rational(_frac(x))
    if isinstance(root, Quad) and d is not None and root.d != d:
        raise UnsupportedExtension(
            f"sqrt({x}) needs Q(sqrt({root.d})) but the session already uses Q(sqrt({d}))"
        )
    return root


def _sqrt_quad(x: Quad):
    # (p + q*sqrt(d))^2 = a + b*sqrt(d) with p, q rational forces
    # p^2 = (a +- sqrt(a^2 - d b^2)) / 2 and q = b / (2p)
    a, b, d = x.a, x.b, x.d
    root_norm = _sqrt_rational(x.norm())
    if not isinstance(root_norm, Quad):
        for p2 in ((a + root_norm) / 2, (a - root_norm) / 2):
            p = _sqrt_rational(p2)
            if isinstance(p, Quad) or p == 0:
                continue
            return quad(p, b / (2 * p), d)
    raise UnsupportedExtension(f"{x} is not a square in Q(sqrt({d}))")


def scalar_str(x) -> str:
    """Compact exact text form: ``3/4``, ``-1+2*sqrt(2)``, ``sqrt(2)/2``."""
    if isinstance(x, Quad):
        parts = []
        if x.a != 0:
            parts.append(str(x.a))
        b = x.b
        root = f"sqrt({x.d})"
        if b == 1:
            irr = root
        elif b == -1:
            irr = "-" + root
        else:
            irr = f"{b}*{root}"
        if parts and not irr.startswith("-"):
            irr = "+" + irr
        parts.append(irr)
        return "".join(parts)
    return str(Fraction(x))
