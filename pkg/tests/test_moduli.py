import cmath
import math

import numpy as np
import pytest
from conftest import torus_params
from hypothesis import given
from hypothesis import strategies as st

from origami_tori.errors import OrigamiError
from origami_tori.moduli import (
    convergence_check,
    coverage_region_contains,
    cycloid_cusp,
    cycloid_large,
    cycloid_small,
    gamma,
    gamma_partials,
    jacobian_fd,
    jacobian_gamma,
    limit_curve,
    modulus_flat,
    modulus_from_development,
    modulus_value,
    reduce_modulus,
    region_contains,
    tangent_direction,
    torus_modulus,
)
from origami_tori.torus import TorusParams, assemble_torus, mirror_params

# development oracle output for n=8, ell=2, rho=-3/8, h=1, frozen
REFERENCE = complex(0.16161165235168157, 0.4320360760830445)


def test_reference_modulus():
    p = TorusParams(8, 2, -3 / 8, 1.0)
    assert abs(modulus_value(8, 2, -3 / 8, 1.0) - REFERENCE) <= 1e-12
    assert abs(modulus_from_development(assemble_torus(p)) - REFERENCE) <= 1e-12
    m = torus_modulus(p)
    assert m.value == modulus_value(8, 2, -3 / 8, 1.0)
    assert abs(m.normalized) >= 1 and abs(m.normalized.real) <= 0.5


def test_torus_modulus_invalid():
    with pytest.raises(OrigamiError) as e:
        torus_modulus(TorusParams(8, 2, -0.1))
    assert e.value.code == "invalid-pairing"


@given(torus_params())
def test_closed_form_matches_development(p):
    z = modulus_from_development(assemble_torus(p))
    assert abs(z - modulus_value(p.n, p.ell, p.rho, p.h)) <= 1e-9


@given(torus_params(), st.floats(0.01, 100), st.floats(0.01, 100))
def test_real_part_height_independent(p, h1, h2):
    a = modulus_value(p.n, p.ell, p.rho, h1)
    b = modulus_value(p.n, p.ell, p.rho, h2)
    assert abs(a.real - b.real) <= 1e-12
    if h1 < h2:
        assert a.imag < b.imag


@given(torus_params())
def test_flat_limit(p):
    flat = modulus_flat(p.n, p.ell, p.rho)
    errs = [abs(modulus_value(p.n, p.ell, p.rho, h) - flat) for h in (1e-2, 1e-4, 1e-6)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-5


@given(torus_params())
def test_mirror_conjugates(p):
    z = modulus_value(p.n, p.ell, p.rho, p.h)
    q = mirror_params(p)
    w = modulus_value(q.n, q.ell, q.rho, q.h)
    assert abs(w + z.conjugate()) <= 1e-12
    assert (z.real > 0) == (p.ell > 0)


# limit curves


def test_curve_endpoints():
    assert abs(cycloid_large(-0.5) - (1 + 2j / math.pi)) <= 1e-12
    assert abs(cycloid_cusp(0.5) - (0.5 + 1j / math.pi)) <= 1e-12
    # the singular-line cycloid ends at the cusp curve's midpoint
    assert abs(cycloid_small(0.5) - (0.5 + 1j / math.pi)) <= 1e-12
    assert abs(cycloid_small(0.0)) <= 1e-15
    assert abs(gamma(-0.5, 0.0) - 2j / math.pi) <= 1e-12


def test_limit_curve_domain():
    with pytest.raises(OrigamiError) as e:
        limit_curve(0.5, -0.1)
    assert e.value.code == "outside-parameter-triangle"
    assert limit_curve(0.5, -0.4) == gamma(-0.4, 0.5)


def _interior(u, v):
    theta = u
    rho = -0.5 + v * (0.5 - theta / 2)
    return rho, theta


@given(st.floats(0.01, 0.98), st.floats(0.01, 0.99))
def test_partials_match_finite_differences(u, v):
    rho, theta = _interior(u, v)
    d_rho, d_theta = gamma_partials(rho, theta)
    s = 1e-6
    fr = (gamma(rho + s, theta) - gamma(rho - s, theta)) / (2 * s)
    ft = (gamma(rho, theta + s) - gamma(rho, theta - s)) / (2 * s)
    assert abs(fr - d_rho) <= 1e-7
    assert abs(ft - d_theta) <= 1e-7


@given(st.floats(0.01, 0.98), st.floats(0.01, 0.99))
def test_jacobian_closed_form_is_negated_determinant(u, v):
    # the factored closed form carries the opposite orientation sign
    rho, theta = _interior(u, v)
    d_rho, d_theta = gamma_partials(rho, theta)
    det = d_rho.real * d_theta.imag - d_rho.imag * d_theta.real
    assert abs(jacobian_gamma(rho, theta) + det) <= 1e-12
    assert abs(jacobian_fd(rho, theta) - det) <= 1e-7


@given(st.floats(0.01, 0.49))
def test_jacobian_vanishes_on_singular_line(t):
    assert abs(jacobian_gamma(-t, t)) <= 1e-12


@pytest.mark.parametrize("theta", [0.1, 0.25, 0.4])
def test_chord_direction_constant(theta):
    d = tangent_direction(theta)
    lo, hi = -0.5, -theta / 2
    rhos = np.linspace(lo + 0.01, hi - 0.01, 20)
    pts = [gamma(r, theta) for r in rhos]
    for a, b in zip(pts, pts[1:]):
        c = (b - a) / abs(b - a)
        assert abs(c - d) <= 1e-9 or abs(c + d) <= 1e-9


def test_tangent_direction_degenerate():
    with pytest.raises(OrigamiError):
        tangent_direction(0.0)


def test_convergence_check_decreases():
    errs = [convergence_check(0.25, -0.3, m) for m in (1, 2, 4, 8, 16)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    # first-order convergence in 1/m
    assert all(1.8 < a / b < 2.2 for a, b in zip(errs[1:], errs[2:]))
    assert errs[-1] < 0.02


@pytest.mark.parametrize(
    "z, where",
    [
        (0.25 + 0.02j, "outside"),
        (0.25 + 0.25j, "outside"),
        (0.25 + 0.35j, "domain1"),
        (0.1 + 0.5j, "domain1"),
        (0.5 + 1j / math.pi, "boundary"),
        (0.5 + 1j / (2 * math.pi), "outside"),
        (0.7 + 0.57j, "domain2"),
        (0.7 + 0.55j, "outside"),
        (0.5j, "boundary"),
        (1 + 2j / math.pi, "boundary"),
        (-0.2 + 0.4j, "outside"),
    ],
)
def test_region_contains(z, where):
    assert region_contains(z) == where


@given(st.floats(0.01, 0.98), st.floats(0.01, 0.99))
def test_image_of_triangle_in_region(u, v):
    rho, theta = _interior(u, v)
    assert region_contains(gamma(rho, theta)) != "outside"


def test_coverage_region():
    assert coverage_region_contains(0.3 + 1.2j)
    assert not coverage_region_contains(0.3 + 0.9j)
    assert not coverage_region_contains(1.2j)
    assert coverage_region_contains(0.5 + 0.9j)


# modular reduction


def _max_im_oracle(z, bound=40):
    best = z.imag
    for c in range(0, bound):
        for d in range(-bound, bound):
            if math.gcd(c, d) == 1:
                best = max(best, z.imag / abs(c * z + d) ** 2)
    return best


upper = st.tuples(st.floats(-3, 3), st.floats(0.05, 3)).map(lambda t: complex(*t))


@given(upper)
def test_reduce_modulus(z):
    m = reduce_modulus(z)
    w = m.normalized
    a, b, c, d = m.matrix
    assert a * d - b * c == 1
    assert abs((a * z + b) / (c * z + d) - w) <= 1e-9 * max(1, abs(w))
    assert -0.5 - 1e-12 <= w.real < 0.5 + 1e-12
    assert abs(w) >= 1 - 1e-12
    assert math.isclose(w.imag, _max_im_oracle(z), rel_tol=1e-9)
    # replaying the chain reproduces the result
    v = z
    for step in m.transform_chain:
        v = v + step[1] if step[0] == "T" else -1 / v
    assert cmath.isclose(v, w, rel_tol=1e-12)


def test_reduce_rejects_lower_half():
    with pytest.raises(OrigamiError) as e:
        reduce_modulus(1 - 1j)
    assert e.value.code == "not-upper-half-plane"
