import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectralops.bamodule import (
    ANY,
    BAElement,
    ba_derive,
    ba_lift,
    ba_scale_by_function,
    make_basis,
    membership_check,
    rank_M,
    ratio_witness,
)
from spectralops.errors import DegenerateModule, InvalidLift, WitnessUndefined
from spectralops.expr import parse_coeff
from spectralops.kernel.coeff import U, V
from spectralops.kernel.forms import BiForm
from spectralops.surface import SurfacePoint, evaluate_at, intersection_points

from .strategies import small_coeffs


def test_membership_examples(session):
    assert membership_check(BiForm.from_terms(1, {(0, 1): 1}), session) is ANY
    assert membership_check(BiForm.from_terms(1, {(1, 0): 1}), session) is None
    h2 = BiForm.from_terms(1, {(1, 1): V / U, (1, 0): 1, (0, 0): U / V})
    assert membership_check(h2, session) == 1
    assert membership_check(h2.scale(U * V), session) == 1
    # Lambda = 0: only the second-slot restriction vanishes
    assert membership_check(BiForm.from_terms(1, {(1, 0): 0, (1, 1): 1}), session) is None


def test_default_basis(basis):
    assert basis[0].numerator == BiForm.from_terms(1, {(0, 1): 1})
    assert basis[1].numerator == BiForm.from_terms(1, {(1, 1): V / U, (1, 0): 1, (0, 0): U / V})
    assert basis[0].lam is ANY and basis[1].lam == 1


def test_rank_law(session):
    assert [rank_M(n, session) for n in range(1, 6)] == [n * (n + 1) for n in range(1, 6)]


def test_rank_needs_positive_order(session):
    with pytest.raises(ValueError):
        rank_M(0, session)


def test_ratio_witnesses(session, basis):
    P1, P2 = intersection_points(session.f, session.f1)
    assert not evaluate_at(basis[0].numerator, P1).is_zero()
    r1 = ratio_witness(basis, P1)
    r2 = ratio_witness(basis, P2)
    assert r1 == parse_coeff("-u*v/(sqrt(2)*(v - u)*(-u + (1 + sqrt(2))*v))")
    assert r2 == parse_coeff("-u*v/(sqrt(2)*(v - u)*(u + (-1 + sqrt(2))*v))")
    assert r1 != r2


def test_ratio_witness_undefined(session, basis):
    flipped = type(basis)(basis[1], basis[0])
    with pytest.raises(WitnessUndefined):
        ratio_witness(flipped, SurfacePoint((1, 0), (0, 1)))


def test_derive_example(session, basis):
    d = ba_derive(basis[0], "x", session)
    assert d.order == 2
    assert d.numerator == session.f1 * basis[0].numerator
    d = ba_derive(basis[1], "y", session)
    assert d.numerator == session.f * basis[1].numerator.derive("y") + session.f2 * basis[1].numerator


def test_lift_and_scale(session, basis):
    e = ba_lift(basis[1], 3, session)
    assert e.order == 3 and e.numerator == session.f**2 * basis[1].numerator
    assert ba_lift(e, 3, session) is e
    with pytest.raises(InvalidLift):
        ba_lift(e, 2, session)
    lam = type("Fn", (), {"order": 1, "numerator": session.f1})()
    s = ba_scale_by_function(basis[0], lam, session)
    assert s.order == 2 and s.numerator == session.f1 * basis[0].numerator


def test_element_bidegree_checked():
    with pytest.raises(ValueError):
        BAElement(2, BiForm.zero(1))


def test_make_basis_rejects_dependent(session, basis):
    h = basis[1].numerator
    with pytest.raises(DegenerateModule):
        make_basis(h, h.scale(U), session)
    with pytest.raises(DegenerateModule):
        make_basis(h, BiForm.from_terms(1, {(1, 0): 1}), session)


@given(a=small_coeffs, b=small_coeffs, axis=st.sampled_from("xy"), times=st.integers(min_value=1, max_value=2))
def test_derivatives_stay_in_module(a, b, axis, times, session, basis):
    num = basis[0].numerator.scale(a) + basis[1].numerator.scale(b)
    lam = membership_check(num, session)
    assert lam is ANY or lam == 1
    e = BAElement(1, num, lam)
    for _ in range(times):
        e = ba_derive(e, axis, session)
        tag = membership_check(e.numerator, session)
        assert tag is ANY or tag == 1


def test_mixed_partials_commute(session, basis):
    for e in basis:
        xy = ba_derive(ba_derive(e, "x", session), "y", session)
        yx = ba_derive(ba_derive(e, "y", session), "x", session)
        assert xy == yx


def test_lift_commutes_with_derive(session, basis):
    for e in basis:
        for axis in ("x", "y"):
            a = ba_lift(ba_derive(e, axis, session), 3, session)
            b = ba_derive(ba_lift(e, 2, session), axis, session)
            assert a == b


def test_scale_by_function(session, basis, lambdas):
    lam1 = lambdas["lambda1"]
    out = ba_scale_by_function(basis[0], lam1, session)
    assert out.order == 2
    assert out.numerator == BiForm.from_terms(1, {(0, 1): 1}) ** 2
    scaled = ba_scale_by_function(basis[1], lam1, session)
    # lambda1 vanishes on both glued lines, so any Lambda fits
    assert membership_check(scaled.numerator, session) is ANY


def test_lift_keeps_lambda_scaled_gluing():
    from spectralops.config import load_session
    from spectralops.bamodule import default_basis

    s = load_session("sessions/scaled_gluing.yaml").to_session()
    for e in default_basis(s):
        tag = membership_check(e.numerator, s)
        assert tag is not None
        assert membership_check(ba_lift(e, e.order + 2, s).numerator, s) == tag
