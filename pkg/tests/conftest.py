from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from phidelta.localize import mult_closure, trivial_multset
from phidelta.rings import zmod

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def z12():
    return zmod(12)


@pytest.fixture
def z80():
    return zmod(80)


@pytest.fixture
def trivial(z12):
    return trivial_multset(z12)


@pytest.fixture
def closure():
    return mult_closure


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
