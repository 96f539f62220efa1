from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectralops.bamodule import ba_lift
from spectralops.kernel.coeff import ONE, U, V
from spectralops.operators import DiffOp, MatrixDiffOp, apply_to_ba, commutator, op_compose

from .strategies import small_coeffs

orders = st.tuples(st.integers(min_value=0, max_value=1), st.integers(min_value=0, max_value=1))
diffops = st.dictionaries(orders, small_coeffs, max_size=2).map(DiffOp)
matrices = st.lists(diffops, min_size=4, max_size=4).map(lambda e: MatrixDiffOp([e[:2], e[2:]]))

DX, DY = DiffOp.dx(), DiffOp.dy()


def test_leibniz_rule():
    # dx o u = u dx + u, since du/dx = u
    assert DX * DiffOp.scalar(U) == DiffOp({(1, 0): U, (0, 0): U})
    assert DY * DiffOp.scalar(U) == DiffOp({(0, 1): U})
    assert DX * DX == DiffOp({(2, 0): ONE})


def test_second_order_leibniz():
    # dx^2 o v^2 u = u v^2 (dx^2 + 2 dx + 1)
    c = U * V * V
    assert (DX * DX) * DiffOp.scalar(c) == DiffOp({(2, 0): c, (1, 0): c * 2, (0, 0): c})


def test_zero_coefficients_dropped():
    d = DiffOp({(1, 0): 0, (0, 1): Fraction(1, 2)})
    assert d.coeffs.keys() == {(0, 1)}
    assert d.order == 1
    assert DiffOp().is_zero() and DiffOp().order == 0


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        DiffOp({(-1, 0): 1})


def test_arithmetic():
    d = DiffOp({(1, 0): U})
    assert d - d == DiffOp()
    assert d + d == d.scale(2)
    assert (2 * d).coefficient(1, 0) == U * 2
    assert d.coefficient(0, 1).is_zero()


def test_matrix_identity_and_zero():
    d = MatrixDiffOp([[DX, DiffOp.scalar(U)], [DY, DX * DY]])
    assert MatrixDiffOp.identity() * d == d == d * MatrixDiffOp.identity()
    assert (d * MatrixDiffOp.zero()).is_zero()
    assert d.order == 2
    assert (d - d).is_zero() and -(-d) == d


@given(a=diffops, b=diffops, c=diffops)
def test_compose_associative(a, b, c):
    assert op_compose(op_compose(a, b), c) == op_compose(a, op_compose(b, c))


@given(a=diffops, b=diffops, c=diffops)
def test_compose_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(a=matrices, b=matrices)
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == -commutator(b, a)


@given(a=diffops, b=diffops, c=diffops)
def test_jacobi(a, b, c):
    def br(x, y):
        return x * y - y * x

    assert (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()


@given(a=diffops, b=diffops, which=st.integers(min_value=0, max_value=1))
def test_action_respects_composition(a, b, which, session, basis):
    psi = basis[which]
    lhs = apply_to_ba(a * b, psi, session)
    rhs = apply_to_ba(a, apply_to_ba(b, psi, session), session)
    m = max(lhs.order, rhs.order)
    assert ba_lift(lhs, m, session).numerator == ba_lift(rhs, m, session).numerator


def test_apply_sum_of_derivatives(session, basis):
    from spectralops.kernel.forms import BiForm

    out = apply_to_ba(DX + DY, basis[0], session)
    assert out.order == 2
    assert out.numerator == (session.f1 + session.f2) * BiForm.from_terms(1, {(0, 1): 1})
    assert apply_to_ba(DiffOp.scalar(ONE), basis[0], session) == basis[0]


def test_matrix_apply_zero_and_identity(session, basis):
    from spectralops.operators import matrix_apply

    zero = matrix_apply(MatrixDiffOp.zero(), basis, session)
    assert all(e.is_zero() for e in zero)
    ident = matrix_apply(MatrixDiffOp.diagonal(DiffOp.scalar(ONE)), basis, session)
    assert [e.numerator for e in ident] == [b.numerator for b in basis]


def test_commutator_with_multiplication():
    X = MatrixDiffOp.diagonal(DX)
    M = MatrixDiffOp.diagonal(DiffOp.scalar(U))
    assert commutator(X, M) == M
    assert commutator(X, X).is_zero()
