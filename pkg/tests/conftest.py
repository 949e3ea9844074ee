import os

import hypothesis
import numpy as np
import pytest

from cesaro_lab.measure import Atomic, Lebesgue, MeasureSpec, PowerLogTail

np.seterr(all="warn", under="ignore")

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def plt(s, gamma=0.0, c=1.0):
    return MeasureSpec.of(PowerLogTail(s, gamma, c))


@pytest.fixture
def lebesgue():
    return MeasureSpec.of(Lebesgue())


@pytest.fixture
def half_atom():
    return MeasureSpec.of(Atomic(((0.5, 1.0),)))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
