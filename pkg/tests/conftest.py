import numpy as np
import pytest

from hardy_extremal.circle import make_grid
from hardy_extremal.inner import InnerFunctionSpec

Z_VALUES = [0.0, 0.3, 0.5, 0.5 + 0.2j]
PHASES = [0.0, 1.1]
PHI_SPECS = {
    "one": InnerFunctionSpec(),
    "t": InnerFunctionSpec(power=1),
    "t3": InnerFunctionSpec(power=3),
    "blaschke2": InnerFunctionSpec(zeros=(0.4, -0.3j)),
}


def threshold_of(z):
    return 2.0 / (1.0 - abs(z) ** 2)


@pytest.fixture(scope="session")
def grid4096():
    return make_grid(4096)


@pytest.fixture(scope="session")
def grid8192():
    return make_grid(8192)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
