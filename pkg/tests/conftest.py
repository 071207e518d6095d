import math

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from origami_tori.torus import TorusParams, rho_interval

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# the 12 valid (rho, sigma) pairs on the n = 8, d = 16 grid, in sixteenths
REFERENCE_PAIRS_16 = [
    (5, -3), (4, -2), (5, -1),
    (3, -1), (4, 0), (5, 1),
    (-7, -3), (-6, -2), (-5, -1),
    (-7, -1), (-6, 0), (-7, 1),
]


def reference_params(h=1.0):
    return [TorusParams(8, (s - r) // 2, r / 16, h) for r, s in REFERENCE_PAIRS_16]


@st.composite
def torus_params(draw, n_min=5, n_max=12, h_min=0.1, h_max=10.0, margin=0.02):
    """Valid parameters away from the interval endpoints."""
    n = draw(st.integers(n_min, n_max))
    k = draw(st.integers(2, n - 3))
    ell = k if draw(st.booleans()) else -k
    lo, hi = rho_interval(n, ell)
    u = draw(st.floats(margin, 1 - margin))
    h = draw(st.floats(h_min, h_max))
    return TorusParams(n, ell, lo + u * (hi - lo), h)


def annulus_twists(n, margin=0.01):
    return st.floats(-0.5 + margin, 0.5 - 1.0 / n - margin)


TWO_PI = 2 * math.pi


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
