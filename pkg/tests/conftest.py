import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kronkit import _backend  # noqa: E402
from oracles import ACCEPTANCE_RESULTS  # noqa: E402


@pytest.fixture
def rng(request):
    # stable per-test seed
    seed = sum(map(ord, request.node.name))
    return np.random.default_rng(seed)


@pytest.fixture(params=_backend.available())
def backend(request):
    with _backend.use(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


def pytest_addoption(parser):
    parser.addoption(
        "--kernel-backend",
        choices=["compiled", "python"],
        default=None,
        help="run the whole suite on one kernel backend (default: compiled if built)",
    )


def pytest_configure(config):
    choice = config.getoption("--kernel-backend")
    if choice is not None:
        _backend.set_backend(choice)


def pytest_report_header(config):
    return f"kronkit kernel backend: {_backend.name()} (available: {', '.join(_backend.available())})"
