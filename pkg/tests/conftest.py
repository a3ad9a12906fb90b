import numpy as np
import pytest

from ccnet.fixtures import FIXTURES, load_fixture
from ccnet.monoid import monoid_closure

TABLES = {name: monoid_closure(load_fixture(name).network) for name in FIXTURES}


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


@pytest.fixture
def tab(fixture_name):
    return TABLES[fixture_name]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
