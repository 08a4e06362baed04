import re

import pytest

from ncq import FieldMode, build_rewrite_system, type_s_prime_cy

MODES = {
    "minus1": "cyclotomic(2,1)",
    "zeta6": "cyclotomic(6,1)",
    "generic": "generic",
}

_systems = {}


def system(mode_name):
    if mode_name not in _systems:
        _systems[mode_name] = build_rewrite_system(type_s_prime_cy(FieldMode.parse(mode_name)))
    return _systems[mode_name]


@pytest.fixture(params=list(MODES.values()), ids=list(MODES))
def cy(request):
    return system(request.param)


@pytest.fixture
def generic():
    return system("generic")


@pytest.fixture
def minus1():
    return system("cyclotomic(2,1)")


@pytest.fixture
def zeta6():
    return system("cyclotomic(6,1)")


# -- acceptance summary: one PASS/FAIL line per numbered criterion ----------------

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[n] = report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _acceptance[n] else 'FAIL'}")
