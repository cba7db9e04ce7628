import re

import pytest

from recurrent_aft.selftest import load_golden

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes: dict[int, list[str]] = {}


@pytest.fixture(scope="session")
def golden():
    return {name: load_golden(f"{name}.kb") for name in ("ex1", "ex1_rule4", "ex3", "lookahead")}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m and (report.when == "call" or report.outcome != "passed"):
        _outcomes.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        ok = all(o == "passed" for o in _outcomes[n])
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}")
