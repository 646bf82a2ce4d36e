import math

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from poincare_orbits import CoadjointPoint, OrbitClass, representative

R2 = 1.0 / math.sqrt(2.0)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
vec3 = arrays(np.float64, (3,), elements=finite)
vec4 = arrays(np.float64, (4,), elements=finite)


@st.composite
def points(draw):
    return CoadjointPoint.from_parts(draw(vec3), draw(vec3), draw(vec4))


def random_point(rng, size=3.0):
    return CoadjointPoint.from_parts(
        rng.uniform(-size, size, 3), rng.uniform(-size, size, 3), rng.uniform(-size, size, 4)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260119)


@pytest.fixture
def case1():
    return representative(OrbitClass.massive_spinning(2.0, 3.0))


@pytest.fixture
def case2():
    return representative(OrbitClass.massive_spinless(3.0))


@pytest.fixture
def case3():
    return representative(OrbitClass.massless_helicity(1.0))


SUITE_BUDGET_S = 60.0
_session = {}


def pytest_sessionstart(session):
    import time

    _session["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time

    elapsed = time.perf_counter() - _session["start"]
    ok = elapsed < SUITE_BUDGET_S
    _session["ok"] = ok
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] criterion 7: test session wall time {elapsed:.1f}s < {SUITE_BUDGET_S:.0f}s"
    )


def pytest_sessionfinish(session, exitstatus):
    import time

    if time.perf_counter() - _session.get("start", time.perf_counter()) >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
