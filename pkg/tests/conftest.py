import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

import digitgen  # noqa: E402
from betadigits.field import NumberField  # noqa: E402
from betadigits.roots import select_root  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []

GOLDEN_TOML = """
[field]
polynomial = "-1,-1,1"
root = 0
[instance]
A = [["-1"], ["2"]]
pi = ["{pi}"]
[digits]
source = "greedy"
xi = ["1/2"]
[run]
n_max = {n_max}
schedule = [100, 1000, 10000]
"""

COMPLEX_TOML = """
[field]
polynomial = "2,2,1"
root = 0
[instance]
A = [["-2"], ["0"], ["9"]]
pi = ["9"]
[digits]
source = "file"
path = "{path}"
[run]
n_max = {n_max}
schedule = [100, 1000, 10000]
"""


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def golden():
    F = NumberField([-1, -1, 1])
    return F, select_root(F, 0)


@pytest.fixture(scope="session")
def complex_digit_file(tmp_path_factory):
    """Digits of sqrt(2)/3 in base -1+i, written once per session."""
    path = tmp_path_factory.mktemp("digits") / "complex_digits.txt"
    return digitgen.write(path, 100_002)


@pytest.fixture
def golden_config(tmp_path):
    def make(pi="2", n_max=10_000):
        p = tmp_path / f"golden_{pi}_{n_max}.toml"
        p.write_text(GOLDEN_TOML.format(pi=pi, n_max=n_max))
        return p

    return make


@pytest.fixture
def complex_config(tmp_path, complex_digit_file):
    def make(n_max=100_000, path=None):
        p = tmp_path / f"complex_{n_max}.toml"
        p.write_text(COMPLEX_TOML.format(path=path or complex_digit_file, n_max=n_max))
        return p

    return make
