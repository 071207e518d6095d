import math
from fractions import Fraction

import numpy as np
import pytest
from conftest import REFERENCE_PAIRS_16, reference_params, torus_params
from hypothesis import given
from hypothesis import strategies as st

from origami_tori.errors import OrigamiError
from origami_tori.geometry import MIRROR_Y, same_face_set, vertex_angle_sums
from origami_tori.torus import (
    DoubleSpec,
    TorusParams,
    assemble_torus,
    brute_force_embedded,
    double_torus,
    enumerate_pairs,
    glue_annuli,
    mirror_params,
    pairing_valid,
    rho_interval,
    verify_embedding,
)


def signed_volume(mesh):
    t = mesh.vertices[mesh.faces]
    return float(np.einsum("ij,ij->i", t[:, 0], np.cross(t[:, 1], t[:, 2])).sum() / 6)


def test_enumerate_reference_pairs():
    expected = sorted((Fraction(r, 16), Fraction(s, 16)) for r, s in REFERENCE_PAIRS_16)
    assert enumerate_pairs(8, 16) == expected


def test_enumerate_errors():
    with pytest.raises(OrigamiError) as e:
        enumerate_pairs(8, 7)
    assert e.value.code == "grid-too-coarse"
    with pytest.raises(OrigamiError) as e:
        enumerate_pairs(4, 16)
    assert e.value.code == "n-too-small"


def test_params_errors():
    with pytest.raises(OrigamiError) as e:
        TorusParams(4, 2, -0.4)
    assert e.value.code == "n-too-small"
    with pytest.raises(OrigamiError) as e:
        assemble_torus(TorusParams(8, 2, -0.1))
    assert e.value.code == "invalid-pairing"
    with pytest.raises(OrigamiError):
        assemble_torus(TorusParams(8, 6, -0.45))


def test_reference_torus():
    t = assemble_torus(TorusParams(8, 2, -6 / 16, 1.0))
    m = t.mesh
    assert (m.n_vertices, m.n_edges, m.n_faces) == (16, 48, 32)
    assert m.is_closed() and m.is_consistently_oriented()
    assert m.euler_characteristic() == 0
    assert signed_volume(m) > 0
    rep = verify_embedding(t)
    assert rep.ok and rep.nested and not rep.violating_pairs


@pytest.mark.parametrize("p", reference_params(), ids=str)
def test_reference_tori_flat_and_embedded(p):
    t = assemble_torus(p)
    assert np.max(np.abs(vertex_angle_sums(t.mesh) - 2 * math.pi)) <= 1e-9
    assert verify_embedding(t).ok
    assert signed_volume(t.mesh) > 0


@given(torus_params())
def test_valid_params_embed(p):
    assert pairing_valid(p.n, p.rho, p.sigma)
    assert brute_force_embedded(p.n, p.rho, p.sigma, p.h)
    t = assemble_torus(p)
    assert np.max(np.abs(vertex_angle_sums(t.mesh) - 2 * math.pi)) <= 1e-9


@given(st.integers(5, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(2, n - 3), st.booleans(), st.floats(0.02, 0.98))))
def test_out_of_interval_not_embedded(args):
    # rho beyond the admissible interval, both bands still embeddable
    n, k, positive, u = args
    ell = k if positive else -k
    lo, hi = rho_interval(n, ell)
    if ell > 0:
        rho = hi + u * (0.5 - 1 / n - ell / n - hi)
    else:
        rho = -0.5 + u * (lo + 0.5)
    sigma = rho + ell / n
    if not (-0.5 < sigma < 0.5 - 1 / n):
        return
    assert not pairing_valid(n, rho, sigma)
    assert not brute_force_embedded(n, rho, sigma)


def test_swapped_bands_fail_nesting():
    p = TorusParams(8, 2, -6 / 16)
    mesh = glue_annuli(8, p.sigma, p.rho)
    rep = verify_embedding(mesh)
    assert not rep.nested and not rep.ok
    assert not pairing_valid(8, p.sigma, p.rho)


@given(torus_params(n_max=10))
def test_mirror_meshes_coincide(p):
    q = mirror_params(p)
    assert q.valid
    a = assemble_torus(p).mesh.transformed(MIRROR_Y)
    b = assemble_torus(q).mesh
    assert same_face_set(a, b, 1e-9)


@pytest.mark.parametrize("half", ["lower", "upper"])
@pytest.mark.parametrize("a", [0.3, 0.5])
def test_double(half, a):
    spec = DoubleSpec(TorusParams(8, 2, -3 / 8, 1.0), a, half)
    d = double_torus(spec)
    m = d.mesh
    assert (m.n_vertices, m.n_faces) == (48, 96)
    assert m.is_closed() and m.is_consistently_oriented() and m.euler_characteristic() == 0
    assert np.max(np.abs(vertex_angle_sums(m) - 2 * math.pi)) <= 1e-9
    assert verify_embedding(d).ok
    z = m.vertices[:, 2]
    if half == "lower":
        assert math.isclose(z.min(), 0.0, abs_tol=1e-12) and math.isclose(z.max(), 2 * a)
    else:
        assert math.isclose(z.max(), 1.0) and math.isclose(z.min(), 2 * a - 1.0)


def test_double_errors():
    with pytest.raises(OrigamiError) as e:
        DoubleSpec(TorusParams(8, 2, -3 / 8, 1.0), 1.0)
    assert e.value.code == "cut-out-of-range"
