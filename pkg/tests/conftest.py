import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from mspec.fixtures import load_fixture

settings.register_profile("default", max_examples=50, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def fixture_tensor():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one PASS/FAIL line per acceptance criterion, printed after the run
_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not report.failed:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]  # test_cNN_description
    ok = _criteria.get(name, True)
    _criteria[name] = ok and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        num, label = name[len("test_c"):].split("_", 1)
        verdict = "PASS" if _criteria[name] else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {int(num)}: {label.replace('_', ' ')}")
