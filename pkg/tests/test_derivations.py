import pytest
from hypothesis import given

from homrho.derivations import (
    DerivationModule,
    apply_phiA,
    apply_phiA_inverse,
    check_hom_rho_lie,
    derivation_bracket,
    jacobi_sum,
)
from homrho.dsl import load_spec
from homrho.scalars import ONE, Q, ZERO

import oracles
from strategies import derivations, elements, monomials

PLANE = load_spec("quantum_plane")
A = PLANE.algebra
M = PLANE.module
MODULES = {name: load_spec(f).module for name, f in {
    "Id": "quantum_plane", "diag(1,-1)": "quantum_plane_pm", "-Id": "quantum_plane_mm", "diag(-1,1)": "quantum_plane_mp",
}.items()}


def rho(a, b):
    return A.cocycle(a.degree, b.degree)


@given(elements(A))
def test_basis_action_matches_closed_form(f):
    dx, dy = M.bases
    assert dx(f) == oracles.d_x(f)
    assert dy(f) == oracles.d_y(f)


def test_dy_on_monomial_picks_up_q_power():
    f = A.monomial((2, 3))
    assert M.basis(1)(f) == A.monomial((2, 2), 3 * Q**2)


@given(derivations(M), monomials(A), elements(A))
def test_twisted_leibniz_rule(X, f, g):
    assert X(f * g) == X(f) * g + rho(X, f) * (f * X(g))


@given(derivations(M), derivations(M), monomials(A))
def test_bracket_is_the_rho_commutator(X, Y, f):
    lhs = derivation_bracket(X, Y)(f)
    assert lhs == X(Y(f)) - rho(X, Y) * Y(X(f))


@pytest.mark.parametrize("case", list(MODULES))
def test_rho_antisymmetry(case):
    module = MODULES[case]

    @given(derivations(module), derivations(module))
    def run(X, Y):
        assert derivation_bracket(X, Y) == -(module.algebra.cocycle(X.degree, Y.degree) * derivation_bracket(Y, X))

    run()


@pytest.mark.parametrize("case", ["Id", "-Id"])
def test_rho_jacobi_scalar_twists(case):
    module = MODULES[case]

    @given(derivations(module), derivations(module), derivations(module))
    def run(X, Y, Z):
        assert jacobi_sum(X, Y, Z).is_zero()

    run()


@pytest.mark.parametrize("case,sign", [("diag(1,-1)", 1), ("diag(-1,1)", -1)])
def test_rho_jacobi_fails_for_mixed_twists(case, sign):
    # hand expansion: the cyclic terms are sign*q^-1 d_y, sign*q^-1 d_y and 0
    module = MODULES[case]
    alg = module.algebra
    dx, dy = module.bases
    x = alg.gen("x")
    residual = jacobi_sum(dx, x * dx, x * dy)
    expected = module.derivation([alg.zero(), alg.scalar(2 * sign * Q**-1)])
    assert residual == expected
    report = check_hom_rho_lie([dx, dy, x * dx, x * dy, alg.gen("y") * dx])
    assert report.status("rho-antisymmetry") == "pass"
    assert report.status("rho-jacobi") == "fail"


def test_mixed_twist_is_not_a_bracket_morphism():
    module = MODULES["diag(1,-1)"]
    y = module.algebra.gen("y")
    dx, dy = module.bases
    X, Y = y * dx, dy
    assert apply_phiA(derivation_bracket(X, Y)) == -(Q * dx)
    assert derivation_bracket(apply_phiA(X), apply_phiA(Y)) == Q * dx


@pytest.mark.parametrize("case", list(MODULES))
def test_phiA_inverse_round_trip(case):
    module = MODULES[case]

    @given(derivations(module))
    def run(X):
        assert apply_phiA_inverse(apply_phiA(X)) == X

    run()


def test_phiA_evenness_reported():
    odd = DerivationModule(A, [[ONE, ZERO], [ONE, ONE]])
    report = odd.is_even()
    assert report.status("phiA-even") == "fail"
    assert MODULES["diag(1,-1)"].is_even().passed
