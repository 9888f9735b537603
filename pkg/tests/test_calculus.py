import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homrho.calculus import (
    check_cartan,
    check_d_squared,
    check_degrees,
    d_mu,
    interior,
    is_hom_cochain,
    lie_derivative,
    random_cochain,
    random_derivation,
)
from homrho.derivations import apply_phiA
from homrho.dsl import load_spec, parse_element, parse_form
from homrho.errors import DomainError

import oracles
from conftest import CASES
from strategies import elements

SPECS = {case: load_spec(name) for case, name in CASES.items()}
PLANE = SPECS["Id"]
A, M = PLANE.algebra, PLANE.module


@given(elements(A))
def test_d_of_element_is_partial_derivatives(f):
    df = d_mu(f, M)
    assert df.component((0,)) == oracles.d_x(f)
    assert df.component((1,)) == oracles.d_y(f)


def test_d_of_element_needs_module():
    with pytest.raises(DomainError):
        d_mu(A.gen("x"))


def test_d_of_coordinate_is_dual_form():
    assert d_mu(A.gen("x"), M) == parse_form("dx", M)


def test_strict_d_rejects_non_hom_cochain():
    module = SPECS["diag(1,-1)"].module
    with pytest.raises(DomainError):
        d_mu(parse_form("dx + dy", module))


@pytest.mark.parametrize("case", ["Id", "-Id"])
@settings(max_examples=20)
@given(seed=st.integers(0, 10_000), arity=st.integers(0, 2))
def test_d_squared_vanishes_for_scalar_twists(case, seed, arity):
    module = SPECS[case].module
    alpha = random_cochain(module, arity, random.Random(seed))
    assert d_mu(d_mu(alpha, strict=False), strict=False).is_zero()


@pytest.mark.parametrize("case,value", [("diag(1,-1)", "-2*q"), ("diag(-1,1)", "2*q")])
def test_d_squared_on_elements_fails_for_mixed_twists(case, value):
    # d d f(d_x, d_y) = (lam_y - lam_x) d_x d_y f and d_x d_y (x y) = q
    spec = SPECS[case]
    ddf = d_mu(d_mu(parse_element("x*y", spec.algebra), spec.module), strict=False)
    assert ddf.component((0, 1)) == parse_element(value, spec.algebra)


@pytest.mark.parametrize("case", list(CASES))
def test_d_squared_vanishes_in_positive_arity(case):
    report = check_d_squared(SPECS[case].module, samples=15, max_arity=2, seed=3)
    assert report.status("d2=0[arity 1]") == "pass"
    assert report.status("d2=0[arity 2]") == "pass"


def test_cartan_identity_for_identity_twist():
    assert check_cartan(M, samples=30, seed=1).passed


def test_cartan_sign_mismatch_for_minus_identity():
    spec = SPECS["-Id"]
    module = spec.module
    alpha = parse_form("q^-1*x*dx^dy", module)
    assert alpha(module.basis(0), module.basis(1)) == spec.algebra.gen("x")
    assert is_hom_cochain(alpha)
    pX = apply_phiA(module.basis(0))
    lhs = lie_derivative(pX, alpha)
    rhs = d_mu(interior(pX, alpha), module, strict=False) + interior(pX, d_mu(alpha, strict=False))
    q_inv = parse_element("q^-1", spec.algebra)
    assert lhs.component((0, 1)) == q_inv
    assert rhs.component((0, 1)) == -q_inv
    assert not check_cartan(module, samples=30, seed=1).passed


def test_interior_of_area_form():
    omega = parse_form("dy ^ dx", M)
    dx, dy = M.bases
    # i_X omega (Y) = rho(|Y|, |X|) omega(X, Y) and rho(|d_y|, |d_x|) = q^-1
    assert interior(dx, omega) == parse_form("-q^-1*dy", M)
    assert interior(dx, interior(dx, omega)).is_zero()


def test_lie_derivative_of_element():
    x, y = A.gen("x"), A.gen("y")
    dy = M.basis(1)
    assert lie_derivative(dy, x * y).component(()) == parse_element("q*x", A)


@pytest.mark.parametrize("case", list(CASES))
def test_degree_laws(case):
    module = SPECS[case].module
    rng = random.Random(5)
    for arity in range(3):
        X = random_derivation(module, rng)
        alpha = random_cochain(module, arity, rng, hom=False)
        assert check_degrees(X, alpha).passed
