import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks")


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(key, True)
        _CRITERIA[key] = prev and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name.replace('_', ' ')}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="session")
def t77():
    from kempetorus import build_shifted_grid

    return build_shifted_grid(7, 7, 1)


@pytest.fixture(scope="session")
def t99():
    from kempetorus import build_shifted_grid

    return build_shifted_grid(9, 9, 1)


@pytest.fixture(scope="session")
def c37():
    from kempetorus import build_circulant

    return build_circulant(37, 10)
