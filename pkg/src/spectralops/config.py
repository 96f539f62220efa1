"""Session documents.

A session is a small YAML mapping.  Numbers are exact: integers or
``"p/q"`` strings, and quadratic irrationals ``a + b sqrt(d)`` are written
as ``{a: ..., b: ..., d: ...}``.  Floats are rejected.

    p1: [1, 0]
    p2: [0, 1]
    A: 1                      # optional; checked against the form
    form: {alpha: 1, beta: 1, gamma: 0, delta: 1}
    d: 2                      # optional extension for intersection points
    flow_preferences:         # optional, tried in order
      - {alpha: 1, beta: 0, gamma: 2, delta: -1, c: 1}

``form`` is ``alpha z1 z2 + beta z1 w2 + gamma w1 z2 + delta w1 w2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import yaml

from .errors import ParseError, ValidationError
from .kernel.forms import BiForm
from .kernel.linalg import is_zero
from .kernel.scalars import Quad, as_scalar, quad, squarefree_decompose
from .session import Session
from .surface import FlowForm

__all__ = [
    "SessionConfig",
    "parse_session",
    "dump_session",
    "load_session",
    "WORKED_EXAMPLE",
]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_FORM_KEYS = ("alpha", "beta", "gamma", "delta")
_TOP_KEYS = {"p1", "p2", "A", "form", "d", "flow_preferences"}


@dataclass(frozen=True)
class SessionConfig:
    p1: tuple
    p2: tuple
    form: tuple
    A: object = None
    d: int | None = None
    flow_preferences: tuple = ()

    def __post_init__(self):
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if len(p) != 2 or all(is_zero(x) for x in p):
                raise ValidationError(f"{name} is not a projective point")
        (a1, b1), (a2, b2) = self.p1, self.p2
        if is_zero(as_scalar(a1) * as_scalar(b2) - as_scalar(a2) * as_scalar(b1)):
            raise ValidationError("p1 equals p2")
        if len(self.form) != 4:
            raise ValidationError("form needs alpha, beta, gamma, delta")
        if all(is_zero(x) for x in self.form):
            raise ValidationError("form is identically zero")
        if self.A is not None and is_zero(self.A):
            raise ValidationError("A must be nonzero")
        if self.d is not None and (self.d == 1 or squarefree_decompose(self.d)[0] != 1):
            raise ValidationError(f"d = {self.d} must be a squarefree integer other than 1")

    def section_form(self) -> BiForm:
        return BiForm.bilinear(*self.form)

    def to_session(self) -> Session:
        prefs = tuple(FlowForm(BiForm.bilinear(*coeffs), c) for coeffs, c in self.flow_preferences)
        return Session.build(self.p1, self.p2, self.section_form(), prefs, d=self.d, A=self.A)


WORKED_EXAMPLE = SessionConfig(
    p1=(Fraction(1), Fraction(0)),
    p2=(Fraction(0), Fraction(1)),
    form=(Fraction(1), Fraction(1), Fraction(0), Fraction(1)),
    A=Fraction(1),
    flow_preferences=(
        ((Fraction(1), Fraction(0), Fraction(2), Fraction(-1)), Fraction(1)),
        ((Fraction(-1), Fraction(0), Fraction(2), Fraction(1)), Fraction(-1)),
    ),
)


# parsing ------------------------------------------------------------------


def _err(node, msg: str) -> ParseError:
    mark = node.start_mark
    return ParseError(msg, line=mark.line + 1, column=mark.column + 1)


def _rational(node) -> Fraction:
    if not isinstance(node, yaml.ScalarNode) or not _RATIONAL.match(node.value.strip()):
        raise _err(node, f"expected an exact rational, got {getattr(node, 'value', node.tag)!r}")
    return Fraction(node.value.strip())


def _number(node):
    if isinstance(node, yaml.MappingNode):
        m = _mapping(node, {"a", "b", "d"}, required={"a", "b", "d"})
        d = _rational(m["d"])
        if d.denominator != 1:
            raise _err(m["d"], "d must be an integer")
        d = int(d)
        if d == 1 or squarefree_decompose(d)[0] != 1:
            raise _err(m["d"], f"d = {d} must be a squarefree integer other than 1")
        return quad(_rational(m["a"]), _rational(m["b"]), d)
    return _rational(node)


def _mapping(node, allowed: set, required: set = frozenset()) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise _err(node, "expected a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode) or k.value not in allowed:
            raise _err(k, f"unknown key {getattr(k, 'value', '?')!r}")
        if k.value in out:
            raise _err(k, f"duplicate key {k.value!r}")
        out[k.value] = v
    missing = sorted(required - set(out))
    if missing:
        raise _err(node, f"missing key {missing[0]!r}")
    return out


def _sequence(node, length: int | None = None) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise _err(node, "expected a list")
    if length is not None and len(node.value) != length:
        raise _err(node, f"expected {length} entries, got {len(node.value)}")
    return node.value


def _form(node, extra: tuple = ()) -> tuple:
    m = _mapping(node, set(_FORM_KEYS) | set(extra), required=set(_FORM_KEYS) | set(extra))
    return tuple(_number(m[k]) for k in _FORM_KEYS), {k: m[k] for k in extra}


def parse_session(text: str) -> SessionConfig:
    """Parse and validate a session document."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(
            f"malformed document: {exc.problem or exc.context}",
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
        ) from exc
    if root is None:
        raise ParseError("empty document")
    top = _mapping(root, _TOP_KEYS, required={"p1", "p2", "form"})
    p1 = tuple(_number(n) for n in _sequence(top["p1"], 2))
    p2 = tuple(_number(n) for n in _sequence(top["p2"], 2))
    form, _ = _form(top["form"])
    A = _number(top["A"]) if "A" in top else None
    d = None
    if "d" in top:
        dv = _rational(top["d"])
        if dv.denominator != 1:
            raise _err(top["d"], "d must be an integer")
        d = int(dv)
    prefs = []
    if "flow_preferences" in top:
        for item in _sequence(top["flow_preferences"]):
            coeffs, extra = _form(item, ("c",))
            c = _number(extra["c"])
            if isinstance(c, Quad):
                raise _err(extra["c"], "flow constants must be rational")
            prefs.append((coeffs, c))
    return SessionConfig(p1=p1, p2=p2, form=form, A=A, d=d, flow_preferences=tuple(prefs))


def load_session(path) -> SessionConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())


# dumping -------------------------------------------------------------------


def _num_text(x) -> str:
    if isinstance(x, Quad):
        return f"{{a: {_num_text(x.a)}, b: {_num_text(x.b)}, d: {x.d}}}"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f'"{x}"'


def _form_text(coeffs, c=None) -> str:
    parts = [f"{k}: {_num_text(v)}" for k, v in zip(_FORM_KEYS, coeffs)]
    if c is not None:
        parts.append(f"c: {_num_text(c)}")
    return "{" + ", ".join(parts) + "}"


def dump_session(cfg: SessionConfig) -> str:
    """Deterministic document text; ``parse_session`` inverts it exactly."""
    lines = [
        f"p1: [{_num_text(cfg.p1[0])}, {_num_text(cfg.p1[1])}]",
        f"p2: [{_num_text(cfg.p2[0])}, {_num_text(cfg.p2[1])}]",
    ]
    if cfg.A is not None:
        lines.append(f"A: {_num_text(cfg.A)}")
    lines.append(f"form: {_form_text(cfg.form)}")
    if cfg.d is not None:
        lines.append(f"d: {cfg.d}")
    if cfg.flow_preferences:
        lines.append("flow_preferences:")
        for coeffs, c in cfg.flow_preferences:
            lines.append(f"  - {_form_text(coeffs, c)}")
    return "\n".join(lines) + "\n"
