from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from spectralops import reference
from spectralops.errors import BasisNotFree, BasisNotGenerating, NotAFunctionOnGamma, SpectralParameterOnly
from spectralops.kernel.coeff import ONE, ZERO, U
from spectralops.kernel.forms import BiForm
from spectralops.operators import DiffOp, MatrixDiffOp
from spectralops.solver import (
    FunctionOnGamma,
    SpectralAssignment,
    _remainder_monomials,
    _solve,
    combine,
    construct_operator,
    divmod_by_f,
    validate_function,
    verify_commute_pair,
    verify_eigen,
    verify_homomorphism,
)

from . import oracle
from .strategies import biforms

QUARTER = DiffOp({(1, 0): Fraction(1, 4), (0, 1): Fraction(1, 4)})
SAMPLES = [
    (sp.Rational(3, 2), sp.Integer(5), sp.Integer(2), sp.Rational(7, 3)),
    (sp.Rational(-4, 3), sp.Rational(1, 2), sp.Rational(5, 2), sp.Integer(3)),
]


def test_first_operator(operators):
    assert operators["lambda1"] == MatrixDiffOp.diagonal(QUARTER)


def test_constant_function(session, basis):
    D = construct_operator(FunctionOnGamma.constant(), basis, session)
    assert D == MatrixDiffOp.identity()
    D = construct_operator(FunctionOnGamma.constant(Fraction(-3, 2)), basis, session)
    assert D == MatrixDiffOp.identity().scale(Fraction(-3, 2))


def test_clean_reference_entries(operators):
    for name, ij in [("lambda2", (1, 1)), ("lambda2", (1, 2)), ("lambda3", (2, 1)), ("lambda3", (2, 2))]:
        i, j = ij
        assert reference.compare_entry(name, ij, operators[name][i - 1, j - 1]) == []
    for ij in [(1, 1), (1, 2), (2, 2)]:
        assert reference.compare_entry("lambda4", ij, operators["lambda4"][ij[0] - 1, ij[1] - 1]) == []


def test_orders(operators, lambdas):
    for name, D in operators.items():
        assert D.order == lambdas[name].order


@pytest.mark.parametrize("name", sorted(reference.FUNCTIONS))
def test_eigen_relation(name, session, basis, lambdas, operators):
    assert verify_eigen(SpectralAssignment(lambdas[name], operators[name], basis), session)


@pytest.mark.parametrize("name", sorted(reference.FUNCTIONS))
def test_eigen_relation_against_oracle(name, session, basis, lambdas, operators):
    assert oracle.eigen_residuals(session, basis, lambdas[name], operators[name], SAMPLES) == [0] * 4


@pytest.mark.parametrize("name", sorted(reference.FUNCTIONS))
def test_graded_matches_full(name, session, basis, lambdas, operators):
    assert construct_operator(lambdas[name], basis, session, method="full") == operators[name]


def test_unknown_method(session, basis, lambdas):
    with pytest.raises(ValueError):
        construct_operator(lambdas["lambda1"], basis, session, method="guess")


def test_perturbation_breaks_eigen(session, basis, lambdas, operators):
    D = operators["lambda2"]
    bump = MatrixDiffOp([[DiffOp(), DiffOp({(0, 0): U})], [DiffOp(), DiffOp()]])
    assert not verify_eigen(SpectralAssignment(lambdas["lambda2"], D + bump, basis), session)


def test_linearity(session, basis, lambdas, operators):
    lam = combine(session.f, (2, lambdas["lambda2"]), (-1, lambdas["lambda3"]), (Fraction(1, 3), lambdas["lambda1"]))
    D = construct_operator(lam, basis, session)
    expected = operators["lambda2"].scale(2) - operators["lambda3"] + operators["lambda1"].scale(Fraction(1, 3))
    assert D == expected


@pytest.mark.parametrize("other", ["lambda1", "lambda2", "lambda3", "lambda4"])
def test_homomorphism(other, session, basis, lambdas):
    assert verify_homomorphism(lambdas["lambda1"], lambdas[other], basis, session)


def test_square_of_first(session, basis, lambdas):
    lam = lambdas["lambda1"]
    D = construct_operator(lam * lam, basis, session)
    assert D == MatrixDiffOp.diagonal(QUARTER * QUARTER)


def test_commuting(operators):
    names = sorted(operators)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            assert verify_commute_pair(operators[a], operators[b])


def test_validate_rejects_non_descending(session):
    with pytest.raises(NotAFunctionOnGamma):
        validate_function(BiForm.from_terms(1, {(1, 0): 1}), 1, session)


def test_validate_rejects_xy_dependence(session):
    with pytest.raises(SpectralParameterOnly):
        validate_function(BiForm.from_terms(1, {(0, 1): U}), 1, session)


def test_validate_checks_bidegree(session):
    with pytest.raises(ValueError):
        validate_function(BiForm.from_terms(1, {(0, 1): 1}), 2, session)


def test_function_times_f_is_lift(session, lambdas):
    lam = lambdas["lambda3"]
    assert lam.lift(3, session.f).numerator == session.f * lam.numerator


def test_solve_error_mapping():
    with pytest.raises(BasisNotFree):
        _solve([[ONE, ONE], [ONE, ONE]], [[ONE], [ONE]])
    with pytest.raises(BasisNotGenerating):
        _solve([[ONE], [ONE]], [[ONE], [ZERO]])


@given(F=biforms(2))
def test_divmod_by_f(F, session):
    f = session.f
    q, r = divmod_by_f(F, f)
    assert q * f + r == F
    allowed = set(_remainder_monomials(2, (1, 1)))
    assert all(r.c[k][l].is_zero() for k in range(3) for l in range(3) if (k, l) not in allowed)


def test_divmod_other_corner():
    f = BiForm.bilinear(0, 0, 0, 1)  # w1 w2
    F = BiForm.from_terms(1, {(0, 0): 3, (1, 1): 2})
    q, r = divmod_by_f(F, f)
    assert q == BiForm.from_terms(0, {(0, 0): 3}) and r == BiForm.from_terms(1, {(1, 1): 2})


def test_non_descending_product_form(session):
    with pytest.raises(NotAFunctionOnGamma):
        validate_function(BiForm.from_terms(1, {(1, 1): 1}), 1, session)


def test_zero_operator_is_not_an_eigen_solution(session, basis, lambdas):
    assert not verify_eigen(SpectralAssignment(lambdas["lambda1"], MatrixDiffOp.zero(), basis), session)


def test_multiplication_does_not_commute(operators):
    assert not verify_commute_pair(operators["lambda1"], MatrixDiffOp.diagonal(DiffOp.scalar(U)))
