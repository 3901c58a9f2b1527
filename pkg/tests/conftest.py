"""Shared fixtures and the acceptance-criteria reporter."""

import numpy as np
import pytest

import epsqueeze as ep

# criterion id -> (passed, one line of detail); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def fig2a_params():
    return ep.paper_preset("fig2a")


@pytest.fixture(scope="session")
def fig2a_op(fig2a_params):
    return ep.operating_point(fig2a_params)


@pytest.fixture(scope="session")
def fig2a_system(fig2a_op, fig2a_params):
    return ep.build_system(fig2a_op, fig2a_params)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def record_criterion(name, passed, detail):
    ACCEPTANCE_RESULTS[name] = (bool(passed), detail)
    assert passed, f"{name}: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[name]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict} {name}: {detail}")
