"""Independent reference implementations built on sympy."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from spectralops.kernel.scalars import Quad

U, V = sp.symbols("U V", positive=True)


def scalar(c):
    if isinstance(c, Quad):
        return sp.Rational(c.a.numerator, c.a.denominator) + sp.Rational(c.b.numerator, c.b.denominator) * sp.sqrt(c.d)
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def lpoly(p):
    return sum((scalar(c) * U ** sp.Rational(r) * V ** sp.Rational(s) for (r, s), c in p.terms.items()), sp.Integer(0))


def coeff(e):
    return lpoly(e.num) / lpoly(e.den)


def is_zero(expr) -> bool:
    return sp.simplify(sp.radsimp(sp.cancel(sp.together(expr)))) == 0


def derive(expr, axis: str):
    """The derivation ``d/dx`` with ``U = e^x`` acts as ``U d/dU``."""
    sym = U if axis == "x" else V
    return sym * sp.diff(expr, sym)


def form_value(form, z1, w1, z2, w2):
    n = form.n
    return sum(
        (coeff(form.c[k][l]) * z1**k * w1 ** (n - k) * z2**l * w2 ** (n - l) for k in range(n + 1) for l in range(n + 1)),
        sp.Integer(0),
    )


def eigen_residuals(session, basis, lam, D, samples):
    """Residuals of ``D psi = lambda psi`` at sample points.

    Each sample fixes a point ``(z1:1, z2:1)`` of the surface and values of
    ``U, V``.  With the point fixed the exponential is ``exp(a x + b y)``
    for rational ``a, b``, so ``d/dx`` acts on the prefactor ``G(U, V)`` as
    ``U dG/dU + a G``.
    """
    out = []
    for z1, z2, u0, v0 in samples:
        f = form_value(session.f, z1, 1, z2, 1)
        a = form_value(session.f1, z1, 1, z2, 1) / f
        b = form_value(session.f2, z1, 1, z2, 1) / f
        psi = [form_value(e.numerator, z1, 1, z2, 1) / f for e in basis]
        lam_val = form_value(lam.numerator, z1, 1, z2, 1) / f**lam.order

        def apply(op, g):
            total = sp.Integer(0)
            for (p, q), c in op.coeffs.items():
                h = g
                for _ in range(p):
                    h = U * sp.diff(h, U) + a * h
                for _ in range(q):
                    h = V * sp.diff(h, V) + b * h
                total += coeff(c) * h
            return total

        for i in range(2):
            r = apply(D[i, 0], psi[0]) + apply(D[i, 1], psi[1]) - lam_val * psi[i]
            out.append(sp.cancel(r.subs({U: u0, V: v0})))
    return out
