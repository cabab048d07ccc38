import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from bposit import FormatSpec  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_BPOSITS = [(8, 6, 3), (8, 3, 1), (9, 6, 5), (10, 4, 2), (7, 2, 0), (12, 6, 5)]
SMALL_POSITS = [(8, 0), (8, 2), (6, 1), (10, 3)]


@pytest.fixture(params=SMALL_BPOSITS, ids=lambda p: "bposit:%d:%d:%d" % p)
def small_bposit(request):
    return FormatSpec.bposit(*request.param)


@pytest.fixture(params=SMALL_POSITS, ids=lambda p: "posit:%d:%d" % p)
def small_posit(request):
    return FormatSpec.posit(*request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
