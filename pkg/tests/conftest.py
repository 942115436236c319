from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dp3asym.cas_kernel import get_space

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@st.composite
def field_elements(draw, names=("a", "b"), terms=4, deg=3):
    sp = get_space(names)
    acc = sp.zero()
    for _ in range(draw(st.integers(0, terms))):
        re = Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 7)))
        im = draw(st.integers(-3, 3))
        mono = sp.one()
        for nm in names:
            mono = mono * sp.sym(nm) ** draw(st.integers(0, deg))
        acc = acc + (sp.const(re) + sp.I * im) * mono
    return acc


@st.composite
def nonzero_field_elements(draw, names=("a", "b")):
    e = draw(field_elements(names))
    return e if not e.is_zero() else e + 1


@pytest.fixture(scope="session")
def trig_space():
    return get_space(("alpha", "kappa", "b1m1"))
