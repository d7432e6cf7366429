import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from heckestab.fields import prime_field, rationals  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# q values sampled by the suites: the group-algebra point, a unit with
# nontrivial inverse powers, its inverse, and a negative unit
Q_VALUES = ["1", "2", "1/3", "-1"]


@pytest.fixture(params=Q_VALUES)
def sc_q(request):
    return rationals(request.param)


@pytest.fixture
def sc2():
    return rationals("2")


@pytest.fixture
def sc_p():
    return prime_field(10007, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
