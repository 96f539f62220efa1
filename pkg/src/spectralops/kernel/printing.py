"""Plain-text rendering of kernel values (``u`` = e^x, ``v`` = e^y)."""

from __future__ import annotations

from fractions import Fraction

from .scalars import Quad, scalar_str


def _monomial_str(r, s) -> str:
    parts = []
    for name, e in (("u", r), ("v", s)):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        else:
            es = str(e)
            parts.append(f"{name}^{es}" if type(e) is int and e > 0 else f"{name}^({es})")
    return "*".join(parts)


def _term_str(c, r, s) -> tuple[str, str]:
    """Sign and magnitude text of one term."""
    mono = _monomial_str(r, s)
    if isinstance(c, Quad):
        body = f"({scalar_str(c)})"
        sign = "+"
    else:
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        body = scalar_str(abs(c))
    if mono:
        if body == "1":
            return sign, mono
        return sign, f"{body}*{mono}"
    return sign, body


def lpoly_str(p) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (r, s), c in p.sorted_terms():
        sign, body = _term_str(c, r, s)
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def coeff_str(e) -> str:
    num = lpoly_str(e.num)
    if e.den.is_one():
        return num
    den = lpoly_str(e.den)
    if len(e.num) > 1:
        num = f"({num})"
    if len(e.den) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def _var_power(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def biform_monomial_str(n: int, k: int, l: int) -> str:
    parts = [
        _var_power("z1", k),
        _var_power("w1", n - k),
        _var_power("z2", l),
        _var_power("w2", n - l),
    ]
    return "*".join(p for p in parts if p) or "1"


def biform_str(f) -> str:
    terms = f.terms()
    if not terms:
        return "0"
    out = []
    for (k, l), c in sorted(terms.items(), reverse=True):
        mono = biform_monomial_str(f.n, k, l)
        cs = coeff_str(c)
        if cs == "1":
            out.append(mono)
        elif cs == "-1":
            out.append("-" + mono)
        else:
            if len(c.num) > 1 and c.den.is_one():
                cs = f"({cs})"
            out.append(f"{cs}*{mono}")
    return " + ".join(out).replace("+ -", "- ")
