import math

import numpy as np
import pytest
from conftest import annulus_twists
from hypothesis import given
from hypothesis import strategies as st

from origami_tori import kernels
from origami_tori.annulus import (
    AnnulusParams,
    annulus_faces,
    annulus_vertices,
    build_annulus,
    canonical_twist,
    classify_twist,
    cut_annulus,
    develop_annulus,
    projection_foot,
)
from origami_tori.errors import OrigamiError
from origami_tori.geometry import rotation_z, same_face_set, triangle_congruent, weld


def _complex_to_xyz(z):
    return np.array([[p.real, p.imag, 0.0] for p in z])


def _dist_to_line(p, a, b):
    u = (b - a) / np.linalg.norm(b - a)
    d = p - a
    return float(np.linalg.norm(d - (d @ u) * u))


def test_params_validation():
    with pytest.raises(OrigamiError) as e:
        AnnulusParams(2, 0.0)
    assert e.value.code == "n-too-small"
    with pytest.raises(OrigamiError) as e:
        AnnulusParams(8, 0.0, 0.0)
    assert e.value.code == "height-not-positive"
    assert AnnulusParams(8, 0.75).rho == -0.25
    assert canonical_twist(0.5) == -0.5


@pytest.mark.parametrize(
    "n, rho, kind",
    [
        (8, 0.0, "prism"),
        (8, -1 / 8, "prism"),
        (8, -1 / 16, "antiprism"),
        (8, -0.5, "degenerate-lower"),
        (8, 6 / 16, "degenerate-upper"),
        (8, -6 / 16, "embeddable"),
        (4, 0.0, "prism"),
    ],
)
def test_classify(n, rho, kind):
    assert classify_twist(n, rho) == kind


def test_build_rejects_out_of_range():
    with pytest.raises(OrigamiError) as e:
        build_annulus(AnnulusParams(8, 6 / 16))
    assert e.value.code == "twist-out-of-range"


def test_prism_counts():
    m = build_annulus(AnnulusParams(4, 0.0)).mesh
    assert (m.n_vertices, m.n_faces) == (8, 8)


def _raw_band_embedded(n, rho):
    V = annulus_vertices(n, rho, 1.0)
    merged, idx = weld(V)
    faces = [tuple(idx[list(f)]) for f in annulus_faces(n, range(n), range(n, 2 * n))]
    if len(merged) != 2 * n or any(len(set(f)) < 3 for f in faces):
        return False
    return not kernels.scan_pairs(V, np.array(faces), 1e-9)


@pytest.mark.parametrize("n", range(3, 13))
def test_embeddable_matches_brute_force(n):
    # grid k/(4n) plus small nudges, against a direct self-intersection scan
    d = 4 * n
    for k in range(-d // 2, d // 2):
        for eps in (0.0, 1e-6, -1e-6):
            r = k / d + eps
            if not -0.5 <= r < 0.5:
                continue
            assert AnnulusParams(n, r).embeddable == _raw_band_embedded(n, r), (n, k, eps)


@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), annulus_twists(n), st.floats(0.1, 10))))
def test_rotational_symmetry(args):
    n, rho, h = args
    m = build_annulus(AnnulusParams(n, rho, h)).mesh
    assert same_face_set(m, m.transformed(rotation_z(2 * math.pi / n)), 1e-9)


@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), annulus_twists(n), st.floats(0.1, 10))))
def test_development_is_isometric(args):
    n, rho, h = args
    p = AnnulusParams(n, rho, h)
    m = build_annulus(p).mesh
    for f, img in enumerate(develop_annulus(p).face_images()):
        assert triangle_congruent(m.triangle(f), _complex_to_xyz(img))


@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), annulus_twists(n), st.floats(0.1, 10))))
def test_strip_height_and_foot(args):
    n, rho, h = args
    p = AnnulusParams(n, rho, h)
    V = build_annulus(p).mesh.vertices
    P0, P1, Q1 = V[0], V[1], V[n + 1]
    strip = develop_annulus(p)
    assert math.isclose(strip.height, _dist_to_line(Q1, P0, P1), rel_tol=1e-12, abs_tol=1e-12)
    u = (P1 - P0) / np.linalg.norm(P1 - P0)
    assert math.isclose(projection_foot(p), float((Q1 - P0) @ u), abs_tol=1e-12)
    # Q_1 sits above P_1 shifted by top_offset in the strip
    assert math.isclose(strip.top[1].real - strip.bottom[1].real, strip.top_offset, abs_tol=1e-12)


@given(
    st.integers(3, 12).flatmap(
        lambda n: st.tuples(st.just(n), annulus_twists(n), st.floats(0.1, 10), st.floats(0.05, 0.95))
    )
)
def test_cut_heights_ratio(args):
    n, rho, h, t = args
    p = AnnulusParams(n, rho, h)
    a = t * h
    (lower, lo), (upper, hi) = cut_annulus(p, a)
    assert math.isclose(lo.height / hi.height, a / (h - a), rel_tol=1e-9)
    # measured in 3-space: C_1 on P_1 Q_1, distance to the base edge P_0 P_1
    V = build_annulus(p).mesh.vertices
    C1 = (1 - t) * V[1] + t * V[n + 1]
    lo3 = _dist_to_line(C1, V[0], V[1])
    hi3 = _dist_to_line(V[n + 1], V[0], V[1]) - lo3
    assert math.isclose(lo.height, lo3, rel_tol=1e-9)
    assert math.isclose(hi.height, hi3, rel_tol=1e-9)
    assert lower.boundary_edges() and upper.boundary_edges()
    assert not kernels.scan_pairs(lower.vertices, lower.faces, 1e-9)
    assert np.all(lower.vertices[:, 2] <= a + 1e-12)
    assert np.all(upper.vertices[:, 2] >= a - 1e-12)
    area = sum(np.linalg.norm(np.cross(*(m.vertices[f[1:]] - m.vertices[f[0]]))) / 2
               for m in (lower, upper) for f in m.faces)
    strip = develop_annulus(p)
    assert math.isclose(area, strip.width * strip.height, rel_tol=1e-9)


def test_cut_out_of_range():
    with pytest.raises(OrigamiError) as e:
        cut_annulus(AnnulusParams(8, -0.3, 1.0), 1.0)
    assert e.value.code == "cut-out-of-range"
