import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record the outcome of one acceptance criterion: ``acceptance(n, desc)``."""
    state = {}

    def record(number, description):
        state["key"] = (number, description)
        ACCEPTANCE[(number, description)] = "FAIL"

    yield record
    if "key" in state:
        rep = getattr(request.node, "rep_call", None)
        if rep is not None and rep.passed:
            ACCEPTANCE[state["key"]] = "PASS"


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, desc), verdict in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"ACCEPTANCE criterion {number}: {verdict} - {desc}")
