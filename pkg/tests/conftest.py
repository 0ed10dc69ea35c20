import numpy as np
import pytest
from hypothesis import assume, strategies as st

from scalespace2x2.conditions import is_feasible
from scalespace2x2.spectral import DesignParams

GRID = np.linspace(0.0, np.pi, 256)

NON_GAUSSIAN = DesignParams(1.0, 0.0, -0.5, 0.25)
SHARP = DesignParams(1.0, 0.48, -0.26, 0.25)
GAUSS_EQUAL = DesignParams(1.0, 1.0, 0.0, 0.25)
GAUSS_SWITCH = DesignParams(1.0, 0.5, 0.0, 0.25)
REFERENCE_FILTERS = [GAUSS_EQUAL, GAUSS_SWITCH, NON_GAUSSIAN, SHARP]


@st.composite
def feasible_params(draw, t=None, d=None):
    """Points of the feasible region, drawn through the interval box."""
    d = draw(st.floats(-1.0, 0.0)) if d is None else d
    b = draw(st.floats(-d, 2.0 + d))
    c = draw(st.floats(-1.0, 1.0 + 2.0 * d))
    tt = draw(st.floats(0.0, 0.25)) if t is None else t
    assume(is_feasible(b, c, d))
    return DesignParams(b, c, d, tt)


@pytest.fixture(params=REFERENCE_FILTERS, ids=lambda p: f"b{p.b}-c{p.c}-d{p.d}")
def reference_filter(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(test_acceptance.RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
