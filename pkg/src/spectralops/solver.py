"""Construction of the matrix operator ``D(lambda)`` with ``D(lambda) psi = lambda psi``.

For a function ``lambda = g / f**m`` and each row ``i`` we look for
``d_i1, d_i2`` of order at most ``m`` with

    sum_j sum_{a+b<=m} c^j_ab f**(m-a-b) N^j_ab = g h_i,

where ``N^j_ab`` is the numerator of ``dx^a dy^b psi_j`` (bidegree
``1+a+b``).  The default method peels this off one derivative level at a
time: reduced modulo ``f`` only the top level survives, so its
coefficients come from a small system in the ``2k + 3`` normal-form
coordinates; the solved part is then subtracted and the rest divided by
``f`` exactly.  ``method="full"`` solves all ``(m+2)**2`` coefficient
equations at once and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bamodule import BAElement, BasisPair, ba_lift, derivative
from .errors import (
    BasisNotFree,
    BasisNotGenerating,
    NotAFunctionOnGamma,
    SpectralParameterOnly,
)
from .kernel.coeff import ZERO
from .kernel.forms import BiForm
from .kernel.linalg import Inconsistent, NotUnique, solve_fraction_free
from .operators import DiffOp, MatrixDiffOp, commutator, matrix_apply
from .session import Session

__all__ = [
    "FunctionOnGamma",
    "SpectralAssignment",
    "validate_function",
    "divmod_by_f",
    "construct_operator",
    "assign",
    "verify_eigen",
    "verify_commute_pair",
    "verify_homomorphism",
]


@dataclass(frozen=True)
class FunctionOnGamma:
    """``numerator / f**order``."""

    order: int
    numerator: BiForm

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("pole order must be non-negative")
        if self.numerator.n != self.order:
            raise ValueError(f"numerator bidegree {self.numerator.n} != pole order {self.order}")

    @classmethod
    def constant(cls, c=1) -> "FunctionOnGamma":
        return cls(0, BiForm.one().scale(c))

    def lift(self, m: int, f: BiForm) -> "FunctionOnGamma":
        if m < self.order:
            raise ValueError(f"cannot lift order {self.order} to {m}")
        if m == self.order:
            return self
        return FunctionOnGamma(m, f ** (m - self.order) * self.numerator)

    def __mul__(self, other: "FunctionOnGamma") -> "FunctionOnGamma":
        return FunctionOnGamma(self.order + other.order, self.numerator * other.numerator)

    def scale(self, c) -> "FunctionOnGamma":
        return FunctionOnGamma(self.order, self.numerator.scale(c))


def combine(f: BiForm, *terms: tuple) -> FunctionOnGamma:
    """``sum c_i lambda_i`` over a common pole order."""
    m = max(lam.order for _, lam in terms)
    num = BiForm.zero(m)
    for c, lam in terms:
        num = num + lam.lift(m, f).numerator.scale(c)
    return FunctionOnGamma(m, num)


def validate_function(g: BiForm, m: int, session: Session) -> FunctionOnGamma:
    """Check that ``g / f**m`` is a function of the spectral parameter
    alone and takes equal values on the two glued lines."""
    if g.n != m:
        raise ValueError(f"numerator bidegree {g.n} != pole order {m}")
    if not g.is_constant_coefficient():
        raise SpectralParameterOnly("numerator depends on x or y")
    left = g.eval_line("first", session.p1)
    right = g.eval_line("second", session.p2)
    scale = session.A**m
    for j, (lx, rx) in enumerate(zip(left, right)):
        if lx != rx * scale:
            raise NotAFunctionOnGamma(f"descent fails at t^{j}: {lx} vs {rx * scale}")
    return FunctionOnGamma(m, g)


# --------------------------------------------------------------------------
# division by f


def _corner(f: BiForm) -> tuple[int, int]:
    for corner in ((1, 1), (1, 0), (0, 1), (0, 0)):
        if not f.c[corner[0]][corner[1]].is_zero():
            return corner
    raise ValueError("zero section form")


def _remainder_monomials(n: int, corner) -> list:
    P, Q = corner
    kfree = 0 if P else n
    lfree = 0 if Q else n
    return [(k, l) for k in range(n + 1) for l in range(n + 1) if k == kfree or l == lfree]


def divmod_by_f(F: BiForm, f: BiForm) -> tuple[BiForm | None, BiForm]:
    """``F = q f + r`` with ``r`` supported on the ``2n + 1`` monomials not
    divisible by the chosen leading monomial of ``f``.  ``q`` is ``None``
    for ``n = 0``."""
    n = F.n
    P, Q = _corner(f)
    lead = f.c[P][Q]
    inv = lead.inverse()
    rem = [list(row) for row in F.c]
    if n == 0:
        return None, F
    quo = [[ZERO] * n for _ in range(n)]

    def cdeg(kl):
        k, l = kl
        return (k if P else n - k) + (l if Q else n - l)

    reducible = [
        (k, l)
        for k in range(n + 1)
        for l in range(n + 1)
        if (k >= 1 if P else k <= n - 1) and (l >= 1 if Q else l <= n - 1)
    ]
    reducible.sort(key=lambda kl: (-cdeg(kl), kl))
    for k, l in reducible:
        c = rem[k][l]
        if c.is_zero():
            continue
        t = c * inv
        qk, ql = k - P, l - Q
        quo[qk][ql] = quo[qk][ql] + t
        for fk in range(2):
            for fl in range(2):
                fc = f.c[fk][fl]
                if not fc.is_zero():
                    rem[qk + fk][ql + fl] = rem[qk + fk][ql + fl] - t * fc
    return BiForm(n - 1, quo), BiForm(n, rem)


def _normal_form(F: BiForm, f: BiForm) -> list:
    _, r = divmod_by_f(F, f)
    return [r.c[k][l] for k, l in _remainder_monomials(F.n, _corner(f))]


def _exact_quotient(F: BiForm, f: BiForm) -> BiForm:
    q, r = divmod_by_f(F, f)
    if not r.is_zero():
        raise BasisNotGenerating("residual not divisible by the section form")
    return q


# --------------------------------------------------------------------------


def _levels(k: int) -> list:
    return [(k - b, b) for b in range(k + 1)]


def _rows_to_ops(sol_rows, keys_per_row) -> list:
    """Collect solved coefficients into two rows of operator entries."""
    out = [[{}, {}], [{}, {}]]
    for (j, ab), row in zip(keys_per_row, sol_rows):
        for i in range(2):
            if not row[i].is_zero():
                out[i][j][ab] = row[i]
    return out


def _solve(a_rows, b_rows):
    try:
        return solve_fraction_free(a_rows, b_rows)
    except NotUnique as exc:
        raise BasisNotFree(f"operator coefficients not unique: {exc}") from exc
    except Inconsistent as exc:
        raise BasisNotGenerating(f"lambda*psi not reached: {exc}") from exc


def _construct_graded(lam: FunctionOnGamma, basis: BasisPair, session: Session) -> list:
    f = session.f
    m = lam.order
    residual = [lam.numerator * basis[i].numerator for i in range(2)]
    acc = [[{}, {}], [{}, {}]]
    for k in range(m, -1, -1):
        keys = [(j, ab) for j in range(2) for ab in _levels(k)]
        cols = {key: derivative(basis[key[0]], *key[1], session).numerator for key in keys}
        nf_cols = [_normal_form(cols[key], f) for key in keys]
        nf_rhs = [_normal_form(r, f) for r in residual]
        a_rows = [[col[t] for col in nf_cols] for t in range(len(nf_rhs[0]))]
        b_rows = [[rhs[t] for rhs in nf_rhs] for t in range(len(nf_rhs[0]))]
        sol = _solve(a_rows, b_rows)
        new = []
        for i in range(2):
            r = residual[i]
            for key, row in zip(keys, sol):
                if not row[i].is_zero():
                    r = r - cols[key].scale(row[i])
                    acc[i][key[0]][key[1]] = row[i]
            new.append(r)
        if k > 0:
            residual = [_exact_quotient(r, f) for r in new]
        elif any(not r.is_zero() for r in new):
            raise BasisNotGenerating("nonzero residual after the last level")
    return acc


def _construct_full(lam: FunctionOnGamma, basis: BasisPair, session: Session) -> list:
    m = lam.order
    keys = [(j, ab) for j in range(2) for k in range(m + 1) for ab in _levels(k)]
    cols = [ba_lift(derivative(basis[j], *ab, session), m + 1, session).numerator.flat() for j, ab in keys]
    rhs = [(lam.numerator * basis[i].numerator).flat() for i in range(2)]
    a_rows = [[col[t] for col in cols] for t in range(len(rhs[0]))]
    b_rows = [[r[t] for r in rhs] for t in range(len(rhs[0]))]
    sol = _solve(a_rows, b_rows)
    return _rows_to_ops(sol, keys)


def construct_operator(
    lam: FunctionOnGamma,
    basis: BasisPair,
    session: Session,
    method: str = "graded",
) -> MatrixDiffOp:
    """The unique ``D`` of order at most ``m`` with ``D psi = lambda psi``."""
    if method == "graded":
        entries = _construct_graded(lam, basis, session)
    elif method == "full":
        entries = _construct_full(lam, basis, session)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MatrixDiffOp([[DiffOp(entries[i][j]) for j in range(2)] for i in range(2)])


@dataclass(frozen=True)
class SpectralAssignment:
    lam: FunctionOnGamma
    D: MatrixDiffOp
    basis: BasisPair


def assign(lam: FunctionOnGamma, basis: BasisPair, session: Session, method: str = "graded") -> SpectralAssignment:
    return SpectralAssignment(lam, construct_operator(lam, basis, session, method), basis)


def verify_eigen(a: SpectralAssignment, session: Session) -> bool:
    """Exact check of ``D psi = lambda psi`` on both basis elements."""
    applied = matrix_apply(a.D, a.basis, session)
    for i in range(2):
        target = BAElement(
            a.basis[i].order + a.lam.order,
            a.lam.numerator * a.basis[i].numerator,
            a.basis[i].lam,
        )
        m = max(target.order, applied[i].order)
        lhs = ba_lift(applied[i], m, session).numerator
        rhs = ba_lift(target, m, session).numerator
        if lhs != rhs:
            return False
    return True


def verify_commute_pair(D1: MatrixDiffOp, D2: MatrixDiffOp) -> bool:
    return commutator(D1, D2).is_zero()


def verify_homomorphism(
    lam: FunctionOnGamma,
    mu: FunctionOnGamma,
    basis: BasisPair,
    session: Session,
) -> bool:
    """``D(lambda mu) = D(lambda) D(mu)`` with the product solved independently."""
    direct = construct_operator(lam * mu, basis, session)
    composed = construct_operator(lam, basis, session) * construct_operator(mu, basis, session)
    return direct == composed

