"""Heuristic gcd of multivariate integer polynomials.

Polynomials are dicts ``{exponent tuple: int}`` with nonnegative
exponents.  The last variable is evaluated at a large integer ``xi``, the
gcd of the images is computed recursively, and the result is lifted back
by reading its coefficients as balanced base-``xi`` digits.  A candidate
is accepted only after it divides both inputs exactly, so the answer is
always correct; ``None`` means the heuristic gave up.
"""

from __future__ import annotations

from math import gcd

__all__ = ["heu_gcd"]

_ATTEMPTS = 6


def _content(p: dict) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _norm(p: dict) -> int:
    return max(abs(c) for c in p.values())


def _leading(p: dict):
    return max(p)


def _normalize_sign(p: dict) -> dict:
    if p[_leading(p)] < 0:
        return {k: -c for k, c in p.items()}
    return p


def _evaluate_last(p: dict, xi: int) -> dict:
    out: dict = {}
    for k, c in p.items():
        head = k[:-1]
        out[head] = out.get(head, 0) + c * xi ** k[-1]
    return {k: c for k, c in out.items() if c}


def _interpolate(h: dict, xi: int) -> dict:
    """Lift ``h`` back one variable through balanced base-``xi`` digits."""
    out = {}
    half = xi // 2
    for head, c in h.items():
        e = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            if d:
                out[head + (e,)] = d
            c = (c - d) // xi
            e += 1
    return out


def _divides(a: dict, b: dict) -> bool:
    """Whether ``b`` divides ``a`` exactly over the integers."""
    r = dict(a)
    lb = _leading(b)
    cb = b[lb]
    while r:
        lr = _leading(r)
        shift = tuple(x - y for x, y in zip(lr, lb))
        if min(shift) < 0:
            return False
        q, rem = divmod(r[lr], cb)
        if rem:
            return False
        for k, c in b.items():
            key = tuple(x + y for x, y in zip(k, shift))
            v = r.get(key, 0) - q * c
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return True


def heu_gcd(f: dict, g: dict, nvars: int):
    """Primitive gcd with positive leading coefficient, or ``None``."""
    if not f or not g:
        raise ValueError("heu_gcd needs nonzero inputs")
    if nvars == 0:
        return {(): 1}
    cf, cg = _content(f), _content(g)
    f = {k: c // cf for k, c in f.items()}
    g = {k: c // cg for k, c in g.items()}
    xi = 2 * min(_norm(f), _norm(g)) + 29
    for _ in range(_ATTEMPTS):
        fe, ge = _evaluate_last(f, xi), _evaluate_last(g, xi)
        if fe and ge:
            he = _heu_value(fe, ge, nvars - 1)
            if he is not None:
                h = _interpolate(he, xi)
                if h:
                    ch = _content(h)
                    h = _normalize_sign({k: c // ch for k, c in h.items()})
                    if _divides(f, h) and _divides(g, h):
                        return h
        xi = xi * 73794 // 27011 + 1
    return None


def _heu_value(f: dict, g: dict, nvars: int):
    """Full gcd (content included) of the evaluated images."""
    cf, cg = _content(f), _content(g)
    c = gcd(cf, cg)
    if nvars == 0:
        return {(): c}
    h = heu_gcd(f, g, nvars)
    if h is None:
        return None
    return {k: v * c for k, v in h.items()}
