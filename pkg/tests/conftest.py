import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperbricks import load_fixture  # noqa: E402

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def F1():
    return load_fixture("F1")


@pytest.fixture(scope="session")
def F2():
    return load_fixture("F2")


@pytest.fixture(scope="session")
def F3():
    return load_fixture("F3")


@pytest.fixture(scope="session")
def F4():
    return load_fixture("F4")


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    n = int(match.group(1))
    failed = report.failed or (report.when == "call" and report.skipped)
    if failed:
        _ACCEPTANCE[n] = False
    else:
        _ACCEPTANCE.setdefault(n, True)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {'PASS' if _ACCEPTANCE[n] else 'FAIL'}")
