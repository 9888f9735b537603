import pytest
from hypothesis import given
from hypothesis import strategies as st

from homrho.algebra import STRUCTURE_TABLE
from homrho.dsl import bundled_specs, load_spec, parse_element, parse_spec, tokenize
from homrho.errors import SpecError
from homrho.render import render_element
from homrho.scalars import Q, Scalar

from strategies import elements

PLANE = load_spec("quantum_plane")
A = PLANE.algebra

HEADER = """algebra T {
  parameter q;
  group Z^2;
  cocycle q ^ [[0,1],[-1,0]];
  generator x degree (1,0) invertible;
  generator y degree (0,1) invertible;
"""


def spec_with(body):
    return parse_spec(HEADER + body + "}\n")


def test_bundled_models_are_listed():
    assert bundled_specs() == [
        "quantum_plane.rg", "quantum_plane_mm.rg", "quantum_plane_mp.rg", "quantum_plane_pm.rg", "quaternion.rg",
    ]


def test_quantum_plane_model():
    assert A.names == ("x", "y")
    assert A.cocycle.base == Q
    assert A.cocycle.form == ((0, 1), (-1, 0))
    assert PLANE.metric is not None and PLANE.symplectic is not None


def test_quaternion_model(quaternion):
    H = quaternion.algebra
    assert H.backend == STRUCTURE_TABLE
    assert H.group.moduli == (2, 2, 2)
    assert H.basis("i") * H.basis("j") == H.basis("k")
    assert quaternion.module is None


def test_rank_mismatch_is_reported_with_location():
    with pytest.raises(SpecError) as err:
        parse_spec("algebra T {\n  group Z^2;\n  cocycle q ^ [[0,1],[-1,0]];\n  parameter q;\n  generator x degree (1);\n}")
    assert err.value.line == 5 and err.value.col == 13
    assert "rank" in str(err.value)


@pytest.mark.parametrize("text,expected", [
    ("x^-2", "x^-2"),
    ("q*y*x", "x*y"),
    ("1/(1-q^2) * x^2", "-1/(q^2 - 1)*x^2"),
    ("-x^2", "-x^2"),
    ("-2*x + 3*x", "x"),
    ("(x + y)^2", "x^2 + (q + 1)/q*x*y + y^2"),
    ("x - -y", "x + y"),
    ("x/y", "x*y^-1"),
    ("x^(-1)", "x^-1"),
    ("3/6", "1/2"),
])
def test_parse_examples(text, expected):
    assert render_element(parse_element(text, A)) == expected


def test_q_rewrite_example():
    # q * y * x = q * q^-1 x y
    assert parse_element("q*y*x", A) == A.gen("x") * A.gen("y")


def test_coefficient_scalar():
    f = parse_element("1/(1-q^2) * x^2", A)
    assert f.terms[(2, 0)] == 1 / (1 - Q**2)


@pytest.mark.parametrize("text,col", [("x +", 4), ("z*x", 1), ("x/(x+y)", 2), ("x ^ y", 3), ("x $ y", 3), ("(x", 3)])
def test_element_errors_have_columns(text, col):
    with pytest.raises(SpecError) as err:
        parse_element(text, A)
    assert err.value.line == 1 and err.value.col == col


@given(elements(A))
def test_render_parse_round_trip(f):
    assert parse_element(render_element(f), A) == f


@given(elements(A), st.integers(-3, 3))
def test_round_trip_with_rational_coefficients(f, k):
    g = f * (1 / (1 - Q**2)) + A.scalar(Scalar((k, 1), (1, 0, 1)))
    assert parse_element(render_element(g), A) == g


def test_quaternion_round_trip(quaternion):
    H = quaternion.algebra
    f = H.basis("i") * 2 - H.basis("k") + H.one() * Q
    assert parse_element(render_element(f), H) == f


def test_phi_block():
    spec = spec_with("  phi { x -> 2*x; x^-1 -> 2*x^-1; y -> q*y; }\n")
    alg = spec.algebra
    assert alg.phi(alg.gen("x")) == 2 * alg.gen("x")
    assert alg.phi(alg.gen("y")) == Q * alg.gen("y")
    assert alg.phi(alg.gen("y", -1)) == alg.gen("y", -1)


def test_phi_must_be_diagonal_on_torus():
    with pytest.raises(SpecError) as err:
        spec_with("  phi { x -> y; }\n")
    assert err.value.line == 7


def test_comments_and_whitespace():
    spec = spec_with("  # a comment\n  phiA [[1, 0], [0, -1]];  # trailing\n")
    assert spec.module.phi_a[1][1] == -1


@pytest.mark.parametrize("body,message", [
    ("  metric [[x^-2, w], [x, y]];\n", "unknown generator 'w'"),
    ("  phiA [[1,0,0],[0,1,0],[0,0,1]];\n", "phiA must be 2x2"),
    ("  phiA [[1,0],[0,1]];\n  phiA [[1,0],[0,1]];\n", "duplicate 'phiA'"),
    ("  symplectic x*y;\n", "2-form"),
    ("  poisson { (x,z) -> x; }\n", "unknown generator 'z'"),
    ("  frobnicate;\n", "unknown statement"),
    ("  generator x degree (1,1);\n", "duplicate generator"),
    ("  generator e degree (0,0) unit;\n", "mult"),
])
def test_semantic_errors(body, message):
    with pytest.raises(SpecError) as err:
        spec_with(body)
    assert message in str(err.value)
    assert err.value.line is not None


def test_missing_group():
    with pytest.raises(SpecError, match="missing 'group'"):
        parse_spec("algebra T { parameter q; cocycle q ^ [[0]]; generator x degree (1); }")


def test_structure_table_needs_unit():
    text = """algebra H {
      group Z^1 mod (2);
      cocycle -1 ^ [[0]];
      generator a degree (1);
      mult { (a,a) -> a; }
    }"""
    with pytest.raises(SpecError, match="unit"):
        parse_spec(text)


def test_tokenizer_positions():
    toks = tokenize("x ->\n  q^-1")
    assert [(t.text, t.line, t.col) for t in toks[:-1]] == [
        ("x", 1, 1), ("->", 1, 3), ("q", 2, 3), ("^", 2, 4), ("-", 2, 5), ("1", 2, 6),
    ]
