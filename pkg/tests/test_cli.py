import io
import json
import subprocess
import sys

import pytest

from homrho.cli import run_command
from homrho.dsl import load_spec
from homrho.render import render
from homrho.report import Report


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_poisson_coordinates():
    assert run("poisson", "quantum_plane.rg", "-f", "x", "-g", "y") == (0, "q\n", "")


def test_christoffel_json_two_nonzero_entries():
    code, out, _ = run("christoffel", "quantum_plane_pm.rg", "--format", "json")
    table = json.loads(out)
    assert code == 0
    assert {k: v for k, v in table.items() if v != "0"} == {"1,1,1": "-x^-1", "2,2,2": "y^-1"}


def test_global_flags_before_subcommand():
    code, out, _ = run("--format", "json", "christoffel", "quantum_plane")
    assert code == 0 and json.loads(out)["1,1,1"] == "-x^-1"


def test_validate_quaternion_passes():
    code, out, _ = run("validate", "quaternion.rg")
    assert code == 0 and "FAIL" not in out


def test_validate_reports_twist_failure():
    code, out, _ = run("validate", "quantum_plane.rg", "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["passed"] is False
    symplectic = next(r for r in data["reports"] if r["name"] == "symplectic")
    failing = [e for e in symplectic["entries"] if e["status"] == "fail"]
    assert failing == [{"check": "phiA-twist", "status": "fail", "witness": "X=d1, Y=d2", "residual": "-2"}]


def failing_checks(out):
    data = json.loads(out)
    return sorted(e["check"] for r in data["reports"] for e in r["entries"] if e["status"] == "fail")


def test_connection_check_exit_codes():
    code, out, _ = run("connection-check", "quantum_plane", "--format", "json")
    # only the printed curvature lemmas (c) and (d) fail for the identity twist
    assert code == 1 and failing_checks(out) == ["curvature-lemma-c", "curvature-lemma-d"]
    code, out, _ = run("connection-check", "quantum_plane_pm")
    assert code == 1 and "metric-compatibility  witness: X=d1, Y=d1, Z=d2" in out


def test_curvature_single_index():
    code, out, _ = run("curvature", "quantum_plane_mm", "--indices", "1", "2", "1")
    assert code == 0 and out == "R(dx,dy)dx = 0\n"


def test_curvature_index_out_of_range():
    assert run("curvature", "quantum_plane", "--indices", "1", "2", "3")[0] == 2


def test_hamiltonian_json():
    code, out, _ = run("hamiltonian", "quantum_plane", "-f", "y", "--format", "json")
    assert code == 0 and json.loads(out) == {"x": "q", "y": "0"}


def test_sampling_commands_are_deterministic():
    first = run("d2", "quantum_plane_mp", "--samples", "5", "--seed", "3")
    second = run("d2", "quantum_plane_mp", "--samples", "5", "--seed", "3")
    assert first == second
    assert first[0] == 1  # arity-0 failure for the mixed twist


def test_cartan_command():
    assert run("cartan", "quantum_plane", "--samples", "6")[0] == 0


def test_poisson_check_on_plane():
    code, out, _ = run("poisson-check", "quantum_plane", "--samples", "8", "--format", "json")
    assert code == 1 and failing_checks(out) == ["hamiltonian-commutator"]


@pytest.mark.parametrize("argv", [("frobnicate", "quantum_plane"), ("christoffel",), ("poisson", "quantum_plane", "-f", "x")])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_missing_spec_file():
    code, _, err = run("validate", "no_such_model.rg")
    assert code == 2 and "no such spec" in err


def test_parse_error_reports_location(tmp_path):
    path = tmp_path / "bad.rg"
    path.write_text("algebra B {\n  group Z^2;\n  cocycle q ^ [[0,1],[-1,0]]\n}\n")
    code, _, err = run("validate", str(path))
    assert code == 2 and "line 4, col 1" in err


def test_bad_expression_is_usage_error():
    code, _, err = run("poisson", "quantum_plane", "-f", "x +", "-g", "y")
    assert code == 2 and "col" in err


def test_missing_metric_is_usage_error():
    assert run("christoffel", "quaternion")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "homrho", "poisson", "quantum_plane.rg", "-f", "x", "-g", "y"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "q\n"


def test_render_examples():
    A = load_spec("quantum_plane").algebra
    assert render(-A.gen("x", -1)) == "-x^-1"
    report = Report("r")
    report.fail("check", witness="f=x", residual="q")
    assert json.loads(render(report, "json")) == [{"check": "check", "status": "fail", "witness": "f=x", "residual": "q"}]
