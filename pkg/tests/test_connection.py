import pytest

from homrho.connection import (
    Connection,
    check_connection,
    christoffel,
    curvature,
    levi_civita,
    nabla,
    torsion,
)
from homrho.derivations import apply_phiA
from homrho.dsl import load_spec

import oracles
from conftest import CASES

SPECS = {case: load_spec(name) for case, name in CASES.items()}
REPORTS = {}


def report_for(case):
    if case not in REPORTS:
        spec = SPECS[case]
        REPORTS[case] = check_connection(levi_civita(spec.metric), spec.metric)
    return REPORTS[case]


@pytest.mark.parametrize("case", list(CASES))
def test_christoffel_matches_published_tables(case):
    spec = SPECS[case]
    assert christoffel(spec.metric) == oracles.closed_form_gamma(spec.algebra, case)


@pytest.mark.parametrize("case", list(CASES))
def test_torsion_free_on_basis(case):
    spec = SPECS[case]
    C = levi_civita(spec.metric)
    for X in spec.module.bases:
        for Y in spec.module.bases:
            assert torsion(C, X, Y).is_zero()


@pytest.mark.parametrize("case", list(CASES))
def test_curvature_matches_direct_expansion(case):
    spec = SPECS[case]
    C = levi_civita(spec.metric)
    gamma = oracles.closed_form_gamma(spec.algebra, case)
    lam = oracles.LAMBDAS[case]
    B = spec.module.bases
    for i in range(2):
        for j in range(2):
            for k in range(2):
                R = curvature(C, B[i], B[j], B[k])
                assert list(R.components) == oracles.curvature_basis(gamma, lam, i, j, k)
                assert R.is_zero()


def test_nabla_on_basis_id_case():
    spec = SPECS["Id"]
    C = levi_civita(spec.metric)
    dx, dy = spec.module.bases
    x_inv = spec.algebra.gen("x", -1)
    assert nabla(C, dx, dx) == -(x_inv * dx)
    assert nabla(C, dx, dy).is_zero()


@pytest.mark.parametrize("case", ["Id", "-Id"])
def test_scalar_twists_pass_definitions(case):
    report = report_for(case)
    for check in ("torsion-free", "metric-compatibility", "koszul", "bianchi-1", "bianchi-2"):
        assert report.status(check) == "pass", check


@pytest.mark.parametrize("case,residual", [("diag(1,-1)", "-2*q*x^-2*y^-1"), ("diag(-1,1)", "2*q*x^-2*y^-1")])
def test_mixed_twists_fail_compatibility(case, residual):
    # X = Y = d_x, Z = d_y: lhs phiA(d_x)(q x^-1 y^-1), rhs from nabla_{d_x} d_x = lam_x Gamma^1_11 d_x
    entry = report_for(case).get("metric-compatibility")
    assert entry.status == "fail"
    assert entry.witness == "X=d1, Y=d1, Z=d2"
    assert entry.residual == residual
    assert report_for(case).status("torsion-free") == "pass"
    assert report_for(case).status("bianchi-1") == "pass"


@pytest.mark.parametrize("case", list(CASES))
def test_curvature_antisymmetry_lemma(case):
    assert report_for(case).status("curvature-lemma-a") == "pass"


def test_nabla_r_cyclic_needs_hypothesis():
    ok = report_for("Id")
    assert ok.get("nablaR-hypothesis").witness == "holds"
    assert ok.status("nablaR-cyclic") == "pass"
    report = report_for("-Id")
    entry = report.get("nablaR-hypothesis")
    assert entry.status == "note" and entry.witness.startswith("does not hold")
    assert "nablaR-hypothesis" not in [e.check for e in report.failures()]
    assert report.get("nablaR-cyclic").status == "n/a"


def test_every_failure_carries_a_witness():
    for case in CASES:
        for entry in report_for(case).failures():
            assert entry.witness


def test_sign_flip_in_gamma_is_detected():
    spec = SPECS["Id"]
    gamma = christoffel(spec.metric)
    gamma[0][0][0] = -gamma[0][0][0]
    C = Connection.from_gamma(spec.module, gamma)
    report = check_connection(C, spec.metric)
    entry = report.get("metric-compatibility")
    assert entry.status == "fail" and entry.witness and entry.residual


def test_hypothesis_equation_for_id():
    spec = SPECS["Id"]
    C = levi_civita(spec.metric)
    for X in spec.module.bases:
        for Y in spec.module.bases:
            assert nabla(C, apply_phiA(X), apply_phiA(Y)) == apply_phiA(nabla(C, X, Y))
