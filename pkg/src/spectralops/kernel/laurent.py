"""Exponential Laurent polynomials: finite sums ``sum c * u**r * v**s``.

``u`` stands for ``exp(x)`` and ``v`` for ``exp(y)``; exponents are exact
rationals (``int`` whenever integral), coefficients live in the ground
field of :mod:`.scalars`.  The gcd below works on the polynomial part
after all exponents are scaled onto a common integer lattice.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .heugcd import heu_gcd
from .scalars import Quad, as_scalar

__all__ = ["LPoly", "lpoly_gcd", "lpoly_divexact", "exponent_denominator"]


def _exp(e):
    if type(e) is int:
        return e
    e = Fraction(e)
    return e.numerator if e.denominator == 1 else e


def _zero_coeff(c) -> bool:
    return not isinstance(c, Quad) and c == 0


class LPoly:
    """Immutable sparse Laurent polynomial in ``u, v``.

    ``terms`` maps ``(r, s)`` to a nonzero field element.  Instances are
    hashable and compare by value.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None, _clean: bool = False):
        if _clean:
            self.terms = terms
        else:
            clean = {}
            for (r, s), c in (terms or {}).items():
                c = as_scalar(c)
                if not _zero_coeff(c):
                    key = (_exp(r), _exp(s))
                    c = clean.get(key, 0) + c
                    if _zero_coeff(c):
                        clean.pop(key, None)
                    else:
                        clean[key] = c
            self.terms = clean
        self._hash = None

    # constructors ------------------------------------------------------------

    @classmethod
    def const(cls, c) -> "LPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, r=0, s=0, c=1) -> "LPoly":
        return cls({(r, s): c})

    # predicates --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0)) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms[(0, 0)]

    def __len__(self):
        return len(self.terms)

    # ordering helpers --------------------------------------------------------

    def leading(self):
        """Lexicographically largest exponent pair and its coefficient."""
        key = max(self.terms)
        return key, self.terms[key]

    def min_exponents(self):
        rs = [k[0] for k in self.terms]
        ss = [k[1] for k in self.terms]
        return min(rs), min(ss)

    # arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        res = dict(self.terms)
        for k, c in other.terms.items():
            t = res.get(k)
            if t is None:
                res[k] = c
            else:
                t = t + c
                if _zero_coeff(t):
                    del res[k]
                else:
                    res[k] = t
        return LPoly(res, True)

    __radd__ = __add__

    def __neg__(self):
        return LPoly({k: -c for k, c in self.terms.items()}, True)

    def __sub__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return LPoly.const(other) - self

    def scale(self, c) -> "LPoly":
        if _zero_coeff(c):
            return LPoly({}, True)
        if c == 1:
            return self
        return LPoly({k: v * c for k, v in self.terms.items()}, True)

    def shift(self, r, s) -> "LPoly":
        """Multiply by the monomial ``u**r * v**s``."""
        if r == 0 and s == 0:
            return self
        return LPoly({(_exp(a + r), _exp(b + s)): c for (a, b), c in self.terms.items()}, True)

    def __mul__(self, other):
        if not isinstance(other, LPoly):
            return self.scale(as_scalar(other))
        if not self.terms or not other.terms:
            return LPoly({}, True)
        if len(other.terms) == 1:
            (k, c), = other.terms.items()
            return self.shift(*k).scale(c)
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return other.shift(*k).scale(c)
        res = {}
        for (a, b), c in self.terms.items():
            for (e, f), g in other.terms.items():
                key = (a + e, b + f)
                if type(key[0]) is not int or type(key[1]) is not int:
                    key = (_exp(key[0]), _exp(key[1]))
                t = res.get(key)
                res[key] = c * g if t is None else t + c * g
        return LPoly({k: c for k, c in res.items() if not _zero_coeff(c)}, True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only of monomials")
            (k, c), = self.terms.items()
            return LPoly({(_exp(k[0] * n), _exp(k[1] * n)): 1 / c ** (-n)}, True)
        result = LPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derive(self, axis: str) -> "LPoly":
        """``d/dx`` (``axis='x'``) or ``d/dy`` of the function ``sum c e^(rx+sy)``."""
        i = 0 if axis == "x" else 1
        res = {}
        for k, c in self.terms.items():
            e = k[i]
            if e != 0:
                res[k] = c * e
        return LPoly(res, True)

    # comparison --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Quad)):
            return self == LPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        """Terms in decreasing lexicographic exponent order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __repr__(self):
        if not self.terms:
            return "LPoly(0)"
        return f"LPoly({self.to_str()})"

    def to_str(self) -> str:
        from .printing import lpoly_str

        return lpoly_str(self)


def exponent_denominator(*polys: LPoly) -> int:
    """Smallest ``q`` putting every exponent of ``polys`` on ``(1/q) Z``."""
    q = 1
    for p in polys:
        for r, s in p.terms:
            if type(r) is not int:
                q = lcm(q, r.denominator)
            if type(s) is not int:
                q = lcm(q, s.denominator)
    return q


# --------------------------------------------------------------------------
# dense univariate polynomials over the ground field (lists, low -> high)


def _trim(p):
    while p and _zero_coeff(p[-1]):
        p.pop()
    return p


def _u_sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return _trim(out)


def _u_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _zero_coeff(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _trim(out)


def _u_scale(p, c):
    return _trim([a * c for a in p])


def _u_divmod(p, q):
    r = list(p)
    dq = len(q) - 1
    inv = 1 / as_scalar(q[-1])
    quo = [0] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        c = r[-1] * inv
        shift = len(r) - 1 - dq
        quo[shift] = c
        for j in range(dq + 1):
            r[shift + j] = r[shift + j] - c * q[j]
        r.pop()
        _trim(r)
    return _trim(quo), r


def _u_monic(p):
    if not p:
        return p
    inv = 1 / as_scalar(p[-1])
    return [a * inv for a in p]


def _u_gcd(p, q):
    p, q = list(p), list(q)
    while q:
        p, q = q, _u_divmod(p, q)[1]
    return _u_monic(p)


def _u_divexact(p, q):
    quo, rem = _u_divmod(p, q)
    if rem:
        raise ArithmeticError("inexact univariate division")
    return quo


# --------------------------------------------------------------------------
# dense bivariate polynomials: list indexed by u-degree of K[v] lists


def _b_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _b_content(p):
    g = []
    for c in p:
        if c:
            g = _u_gcd(g, c) if g else _u_monic(c)
            if len(g) == 1:
                break
    return g


def _b_primitive(p):
    g = _b_content(p)
    if len(g) == 1:
        inv = 1 / as_scalar(g[0])
        return [_u_scale(c, inv) for c in p] if g[0] != 1 else p
    return [_u_divexact(c, g) if c else [] for c in p]


def _b_prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` in ``K[v][u]``."""
    r = [list(c) for c in a]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [_u_mul(c, lb) for c in r]
        for j in range(db + 1):
            if b[j]:
                r[shift + j] = _u_sub(r[shift + j], _u_mul(lr, b[j]))
        r.pop()
        _b_trim(r)
    return r


def _b_gcd(a, b):
    ca, cb = _b_content(a), _b_content(b)
    c = _u_gcd(ca, cb)
    a, b = _b_primitive(a), _b_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            # primitive and free of u: a unit
            a = [[1]]
            break
        r = _b_prem(a, b)
        a, b = b, (_b_primitive(r) if r else [])
    return [_u_mul(x, c) for x in a]


def _b_divexact(a, b):
    r = [list(c) for c in a]
    db = len(b) - 1
    quo = [[] for _ in range(max(len(a) - db, 0))]
    while r and len(r) - 1 >= db:
        c = _u_divexact(r[-1], b[-1])
        shift = len(r) - 1 - db
        quo[shift] = c
        for j in range(db + 1):
            if b[j]:
                r[shift + j] = _u_sub(r[shift + j], _u_mul(c, b[j]))
        if r[-1]:
            raise ArithmeticError("inexact bivariate division")
        r.pop()
        _b_trim(r)
    if r:
        raise ArithmeticError("inexact bivariate division")
    return _b_trim(quo)


def _to_dense(p: LPoly, q: int):
    """Drop the monomial factor of ``p`` and scale exponents by ``q``."""
    r0, s0 = p.min_exponents()
    out: list[list] = []
    for (r, s), c in p.terms.items():
        i = int((r - r0) * q)
        j = int((s - s0) * q)
        while len(out) <= i:
            out.append([])
        row = out[i]
        while len(row) <= j:
            row.append(0)
        row[j] = c
    return out


def _from_dense(d, q: int) -> LPoly:
    terms = {}
    for i, row in enumerate(d):
        for j, c in enumerate(row):
            if not _zero_coeff(c):
                terms[(_exp(Fraction(i, q)), _exp(Fraction(j, q)))] = c
    return LPoly(terms, True)


def lpoly_gcd(a: LPoly, b: LPoly) -> LPoly:
    """Greatest common divisor, free of monomial factors and with
    lexicographically leading coefficient 1.  ``gcd(0, 0) = 0``."""
    if a.is_zero() and b.is_zero():
        return LPoly({}, True)
    if a.is_zero() or b.is_zero():
        p = b if a.is_zero() else a
        r0, s0 = p.min_exponents()
        p = p.shift(-r0, -s0)
        return p.scale(1 / as_scalar(p.leading()[1]))
    if a.is_monomial() or b.is_monomial():
        return LPoly.const(1)
    q = exponent_denominator(a, b)
    da, db = _to_dense(a, q), _to_dense(b, q)
    d = _rational_gcd(da, db)
    if d is None:
        d = _b_gcd(da, db)
    g = _from_dense(d, q)
    return g.scale(1 / as_scalar(g.leading()[1]))


def _to_integer_dict(d):
    if any(isinstance(c, Quad) for row in d for c in row):
        return None
    den = 1
    for row in d:
        for c in row:
            den = lcm(den, Fraction(c).denominator)
    return {(i, j): int(c * den) for i, row in enumerate(d) for j, c in enumerate(row) if c != 0}


def _rational_gcd(da, db):
    # fast path over Q; PRS below handles quadratic coefficients and misses
    ia, ib = _to_integer_dict(da), _to_integer_dict(db)
    if ia is None or ib is None:
        return None
    h = heu_gcd(ia, ib, 2)
    if h is None:
        return None
    out = []
    for (i, j), c in h.items():
        while len(out) <= i:
            out.append([])
        row = out[i]
        while len(row) <= j:
            row.append(0)
        row[j] = Fraction(c)
    return out


def lpoly_divexact(a: LPoly, b: LPoly) -> LPoly:
    """``a / b`` when ``b`` divides ``a`` in the Laurent ring.

    Raises ``ArithmeticError`` on inexact division and ``ZeroDivisionError``
    for ``b == 0``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_monomial():
        (k, c), = b.terms.items()
        return a.shift(-k[0], -k[1]).scale(1 / as_scalar(c))
    q = exponent_denominator(a, b)
    ra, sa = a.min_exponents()
    rb, sb = b.min_exponents()
    quo = _from_dense(_b_divexact(_to_dense(a, q), _to_dense(b, q)), q)
    return quo.shift(ra - rb, sa - sb)
