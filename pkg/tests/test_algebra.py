import itertools

import pytest
from hypothesis import given

from homrho.algebra import (
    STRUCTURE_TABLE,
    Algebra,
    Generator,
    check_structure,
    rho_commutator,
    rho_of,
    specialize_algebra,
)
from homrho.errors import DomainError, StructureError
from homrho.grading import CocycleSpec, GradingGroup, hyperplane_cocycle
from homrho.scalars import ONE, Q

from homrho.dsl import load_spec
from strategies import elements, monomials

_A = load_spec("quantum_plane").algebra


def plane_with_phi(a, b):
    gens = [Generator("x", (1, 0), True), Generator("y", (0, 1), True)]
    phi = {(0, 1): a, (1, 1): a, (0, -1): b, (1, -1): b}
    return Algebra("A2q", GradingGroup(2), hyperplane_cocycle(2), gens, phi=phi)


QUAT_TABLE = {
    ("i", "i"): {"e": -1}, ("j", "j"): {"e": -1}, ("k", "k"): {"e": -1},
    ("i", "j"): {"k": 1}, ("j", "i"): {"k": -1},
    ("j", "k"): {"i": 1}, ("k", "j"): {"i": -1},
    ("k", "i"): {"j": 1}, ("i", "k"): {"j": -1},
}


def quaternion_with_phi(a, b, c, table=QUAT_TABLE):
    gens = [Generator("e", (0, 0, 0)), Generator("i", (0, 1, 1)), Generator("j", (1, 0, 1)), Generator("k", (1, 1, 0))]
    return Algebra(
        "H", GradingGroup(3, (2, 2, 2)), CocycleSpec(-1, [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]), gens,
        STRUCTURE_TABLE, phi={"i": {"i": a}, "j": {"j": b}, "k": {"k": c}}, table=table, unit="e",
    )


def test_plane_relation(plane):
    A = plane.algebra
    x, y = A.gen("x"), A.gen("y")
    assert x * y == Q * (y * x)
    assert Q * y * x == x * y
    assert x * A.gen("x", -1) == A.one()
    assert rho_commutator(x, y).is_zero()


def test_normalize_word(plane):
    A = plane.algebra
    # y x y^-1 = q^-1 x
    assert A.normalize_word([("y", 1), ("x", 1), ("y", -1)]) == A.gen("x") * Q**-1


def test_unknown_generator_and_bad_powers(plane, quaternion):
    with pytest.raises(StructureError):
        plane.algebra.gen("z")
    with pytest.raises(DomainError):
        quaternion.algebra.gen("i", -1)


@pytest.mark.parametrize("a,b", [(ONE, ONE), (2, 2), (-1, -1), (Q, Q), (ONE, 2), (2, ONE), (-1, ONE), (Q, ONE)])
def test_plane_hom_associative_iff_a_equals_b(a, b):
    report = check_structure(plane_with_phi(a, b))
    assert report.status("rho-commutativity") == "pass"
    assert (report.status("hom-associativity") == "pass") == (a == b)


def test_quaternion_rho_commutative_on_all_pairs(quaternion):
    H = quaternion.algebra
    basis = [H.basis(n) for n in H.names]
    assert len(list(itertools.product(basis, repeat=2))) == 16
    for f, g in itertools.product(basis, repeat=2):
        assert f * g == rho_of(f, g) * (g * f)


def test_quaternion_rho_commutator_of_i_j_vanishes(quaternion):
    H = quaternion.algebra
    assert rho_commutator(H.basis("i"), H.basis("j")).is_zero()
    assert H.basis("i") * H.basis("j") == H.basis("k")


@pytest.mark.parametrize("abc", list(itertools.product([1, 2, -1], repeat=3)))
def test_quaternion_hom_associative_iff_equal_twists(abc):
    report = check_structure(quaternion_with_phi(*abc))
    assert (report.status("hom-associativity") == "pass") == (len(set(abc)) == 1)


def test_corrupted_quaternion_table_breaks_commutativity():
    table = dict(QUAT_TABLE)
    table[("j", "i")] = {"k": 1}
    report = check_structure(quaternion_with_phi(1, 1, 1, table))
    assert report.status("rho-commutativity") == "fail"
    assert "f=i, g=j" in report.get("rho-commutativity").witness


def test_specialize_rejects_vanishing_base(plane):
    with pytest.raises(ZeroDivisionError):
        specialize_algebra(plane.algebra, 0)
    A2 = specialize_algebra(plane.algebra, 2)
    assert A2.gen("x") * A2.gen("y") == 2 * (A2.gen("y") * A2.gen("x"))


@given(elements(_A), elements(_A), elements(_A, max_terms=2))
def test_multiplication_is_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@given(monomials(_A), monomials(_A))
def test_monomials_rho_commute(f, g):
    assert f * g == rho_of(f, g) * (g * f)


@given(monomials(_A))
def test_unit_term_inverse(f):
    assert f * f.inverse() == _A.one()
    assert f.inverse() * f == _A.one()
