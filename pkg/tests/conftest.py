import pytest
from hypothesis import HealthCheck, settings

from homrho.dsl import load_spec

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CASES = {
    "Id": "quantum_plane",
    "diag(1,-1)": "quantum_plane_pm",
    "-Id": "quantum_plane_mm",
    "diag(-1,1)": "quantum_plane_mp",
}

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def plane():
    return load_spec("quantum_plane")


@pytest.fixture(scope="session")
def quaternion():
    return load_spec("quaternion")


@pytest.fixture(scope="session", params=list(CASES), ids=list(CASES))
def case(request):
    return request.param, load_spec(CASES[request.param])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
