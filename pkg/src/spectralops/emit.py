"""Rendering of operators as text, LaTeX and a versioned JSON schema."""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .kernel.coeff import CoeffElem
from .kernel.laurent import LPoly
from .kernel.printing import coeff_str
from .kernel.scalars import Quad, quad
from .operators import DiffOp, MatrixDiffOp

__all__ = [
    "SCHEMA_VERSION",
    "diffop_text",
    "emit",
    "emit_text",
    "emit_latex",
    "emit_json",
    "parse_json",
    "matrix_to_obj",
    "matrix_from_obj",
]

SCHEMA_VERSION = 1


def _deriv_text(a: int, b: int) -> str:
    parts = []
    for name, e in (("dx", a), ("dy", b)):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def diffop_text(d: DiffOp) -> str:
    if d.is_zero():
        return "0"
    out = []
    for (a, b), c in d.sorted_terms():
        cs = coeff_str(c)
        der = _deriv_text(a, b)
        neg = cs.startswith("-") and len(c.num) == 1
        if neg:
            cs = cs[1:]
        if not der:
            body = cs
        elif cs == "1":
            body = der
        else:
            if not (len(c.num) == 1 and c.den.is_one()):
                cs = f"({cs})"
            body = f"{cs}*{der}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def emit_text(D: MatrixDiffOp) -> str:
    lines = []
    for i in range(2):
        for j in range(2):
            lines.append(f"D[{i + 1},{j + 1}] = {diffop_text(D[i, j])}")
    return "\n".join(lines) + "\n"


# LaTeX -------------------------------------------------------------------


def _latex_scalar(c) -> str:
    if isinstance(c, Quad):
        a = "" if c.a == 0 else _latex_scalar(c.a)
        b = c.b
        sign = "-" if b < 0 else "+"
        mag = abs(b)
        core = r"\sqrt{%d}" % c.d if mag == 1 else r"%s\sqrt{%d}" % (_latex_scalar(mag), c.d)
        if not a:
            return ("-" if b < 0 else "") + core
        return f"({a}{sign}{core})"
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return r"%s\frac{%d}{%d}" % (sign, abs(c.numerator), c.denominator)


def _latex_exp(r, s) -> str:
    def piece(e, name):
        if e == 0:
            return ""
        if e == 1:
            return name
        if e == -1:
            return "-" + name
        return f"{e}{name}"

    px, py = piece(r, "x"), piece(s, "y")
    if px and py:
        expo = px + (py if py.startswith("-") else "+" + py)
    else:
        expo = px or py
    if not expo:
        return ""
    return "e^{%s}" % expo if expo not in ("x", "y") else f"e^{expo}"


def _latex_lpoly(p: LPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (r, s), c in p.sorted_terms():
        mono = _latex_exp(r, s)
        neg = not isinstance(c, Quad) and c < 0
        mag = -c if neg else c
        cs = _latex_scalar(mag)
        if mono:
            body = mono if cs == "1" else f"{cs}{mono}"
        else:
            body = cs
        if isinstance(mag, Quad) and mono and not cs.startswith("("):
            body = f"({cs}){mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _latex_coeff(c: CoeffElem) -> str:
    num = _latex_lpoly(c.num)
    if c.den.is_one():
        return num
    return r"\frac{%s}{%s}" % (num, _latex_lpoly(c.den))


def _latex_deriv(a: int, b: int) -> str:
    parts = []
    for name, e in ((r"\partial_x", a), (r"\partial_y", b)):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "".join(parts)


def diffop_latex(d: DiffOp) -> str:
    if d.is_zero():
        return "0"
    out = []
    for (a, b), c in d.sorted_terms():
        cs = _latex_coeff(c)
        der = _latex_deriv(a, b)
        simple = c.den.is_one() and len(c.num) == 1
        neg = simple and cs.startswith("-")
        if neg:
            cs = cs[1:]
        if not der:
            body = cs
        elif cs == "1":
            body = der
        elif c.den.is_one() and len(c.num) > 1:
            body = f"({cs}){der}"
        else:
            body = f"{cs}{der}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def emit_latex(D: MatrixDiffOp) -> str:
    rows = [" & ".join(diffop_latex(D[i, j]) for j in range(2)) for i in range(2)]
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}\n"


# JSON --------------------------------------------------------------------


def _num_to_obj(x):
    if isinstance(x, Quad):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    return str(Fraction(x))


def _num_from_obj(o):
    if isinstance(o, dict):
        try:
            return quad(Fraction(o["a"]), Fraction(o["b"]), int(o["d"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed quadratic number {o!r}") from exc
    if isinstance(o, int) and not isinstance(o, bool):
        return Fraction(o)
    if isinstance(o, str):
        try:
            return Fraction(o)
        except ValueError as exc:
            raise ParseError(f"malformed rational {o!r}") from exc
    raise ParseError(f"expected an exact number, got {o!r}")


def _exp_to_obj(e):
    return e if type(e) is int else str(e)


def _exp_from_obj(o):
    e = _num_from_obj(o)
    if isinstance(e, Quad):
        raise ParseError("exponents must be rational")
    return int(e) if e.denominator == 1 else e


def _poly_to_obj(p: LPoly) -> list:
    return [{"u": _exp_to_obj(r), "v": _exp_to_obj(s), "c": _num_to_obj(c)} for (r, s), c in p.sorted_terms()]


def _poly_from_obj(o) -> LPoly:
    if not isinstance(o, list):
        raise ParseError("monomial list expected")
    terms = {}
    for m in o:
        try:
            key = (_exp_from_obj(m["u"]), _exp_from_obj(m["v"]))
            c = _num_from_obj(m["c"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed monomial {m!r}") from exc
        terms[key] = terms.get(key, 0) + c
    return LPoly(terms)


def _diffop_to_obj(d: DiffOp) -> list:
    return [
        {"a": a, "b": b, "coefficient": {"num": _poly_to_obj(c.num), "den": _poly_to_obj(c.den)}}
        for (a, b), c in d.sorted_terms()
    ]


def _diffop_from_obj(o) -> DiffOp:
    if not isinstance(o, list):
        raise ParseError("entry must be a list of terms")
    coeffs = {}
    for t in o:
        try:
            a, b = int(t["a"]), int(t["b"])
            num = _poly_from_obj(t["coefficient"]["num"])
            den = _poly_from_obj(t["coefficient"]["den"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed term {t!r}") from exc
        if den.is_zero():
            raise ParseError("zero denominator")
        coeffs[(a, b)] = CoeffElem(num, den)
    return DiffOp(coeffs)


def matrix_to_obj(D: MatrixDiffOp) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "entries": [[_diffop_to_obj(D[i, j]) for j in range(2)] for i in range(2)],
    }


def matrix_from_obj(obj) -> MatrixDiffOp:
    if not isinstance(obj, dict) or obj.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"unsupported operator document (schema {obj.get('schema') if isinstance(obj, dict) else None})")
    entries = obj.get("entries")
    if not (isinstance(entries, list) and len(entries) == 2 and all(isinstance(r, list) and len(r) == 2 for r in entries)):
        raise ParseError("entries must be a 2x2 list")
    return MatrixDiffOp([[_diffop_from_obj(e) for e in row] for row in entries])


def emit_json(D: MatrixDiffOp) -> str:
    return json.dumps(matrix_to_obj(D), indent=2) + "\n"


def parse_json(text: str) -> MatrixDiffOp:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return matrix_from_obj(obj)


def emit(D: MatrixDiffOp, fmt: str = "text") -> str:
    if fmt == "json":
        return emit_json(D)
    if fmt == "latex":
        return emit_latex(D)
    if fmt == "text":
        return emit_text(D)
    raise ValueError(f"unknown format {fmt!r}")

