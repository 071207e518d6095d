"""Moduli of the two-band tori, the h -> 0 limit curves and the image region.

All formulas take the signed ``ell`` of :class:`~origami_tori.torus.TorusParams`;
``ell > 0`` gives positive real part.  The limit map is

    gamma(rho, theta) = c_theta(rho)
      = (sin 2 pi rho - sin 2 pi (rho + theta) + 2 pi theta
         + i (2 - cos 2 pi rho - cos 2 pi (rho + theta))) / (2 pi)

on the triangle with vertices (-1/2, 0), (0, 0), (-1/2, 1) in the
(rho, theta) plane.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .annulus import strip_height, strip_height_flat
from .develop import lattice_from_translations, normalize_frame, unfold
from .errors import OrigamiError
from .geometry import TOL
from .torus import TorusMesh, TorusParams, rho_interval

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Modulus:
    """A modulus and its image in the standard fundamental domain.

    ``matrix`` is (a, b, c, d) with ``normalized = (a z + b) / (c z + d)``;
    ``transform_chain`` lists the steps as ("T", k) for z -> z + k and
    ("S",) for z -> -1/z.
    """

    value: complex
    normalized: complex
    transform_chain: tuple
    matrix: tuple


def modulus_value(n, ell, rho, h):
    """Closed-form modulus, no validity check."""
    s = math.sin(math.pi / n)
    sigma = rho + ell / n
    re = math.sin(TWO_PI * rho + math.pi / n) - math.sin(TWO_PI * sigma + math.pi / n) + 2 * ell * s
    im = strip_height(n, rho, h) + strip_height(n, sigma, h)
    return complex(re, im) / (2 * n * s)


def modulus_flat(n, ell, rho):
    """The h = 0 boundary value of the modulus formula."""
    s = math.sin(math.pi / n)
    sigma = rho + ell / n
    re = math.sin(TWO_PI * rho + math.pi / n) - math.sin(TWO_PI * sigma + math.pi / n) + 2 * ell * s
    im = strip_height_flat(n, rho) + strip_height_flat(n, sigma)
    return complex(re, im) / (2 * n * s)


def torus_modulus(params):
    if not isinstance(params, TorusParams):
        params = TorusParams(*params)
    if not params.valid:
        lo, hi = rho_interval(params.n, params.ell)
        raise OrigamiError("invalid-pairing", f"{params} (rho interval ({lo!r}, {hi!r}))")
    return reduce_modulus(modulus_value(params.n, params.ell, params.rho, params.h))


def develop_torus(torus, tol=None):
    """Normalized unfolding of a torus mesh (see :func:`develop.unfold`)."""
    tol = tol or TOL
    mesh = torus.mesh
    face, v0, v1, up = torus.frame
    cuts = torus.cut_edges if torus.anchors else None
    unf = unfold(mesh, face, v0, cuts, tol)
    return normalize_frame(unf, mesh, face, v0, v1, up)


def periods(torus, tol=None):
    """The period pair (w1, w2) read off the development."""
    unf = develop_torus(torus, tol)
    mesh = torus.mesh
    if not torus.anchors:
        return lattice_from_translations(unf.translations)
    fa, va, fb, vb, _ = torus.anchors["w1"]
    w1 = unf.image(fb, vb, mesh) - unf.image(fa, va, mesh)
    fa, va, fb, vb, shift = torus.anchors["w2"]
    w2 = unf.image(fb, vb, mesh) - unf.image(fa, va, mesh) - shift * w1
    return w1, w2


def modulus_from_development(torus, tol=None):
    """w2 / w1 from an explicit unfolding, independent of the closed form.

    Plain tori use the anchored periods; doubles use the lattice basis with
    real part reduced into [-1/2, 1/2).
    """
    if not isinstance(torus, TorusMesh):
        raise OrigamiError("not-a-torus", "expected a TorusMesh")
    w1, w2 = periods(torus, tol)
    return complex(w2 / w1)


# limit curves ---------------------------------------------------------------


def gamma(rho, theta):
    """c_theta(rho), evaluated without domain checks."""
    a = TWO_PI * rho
    b = TWO_PI * (rho + theta)
    return complex(math.sin(a) - math.sin(b) + TWO_PI * theta, 2 - math.cos(a) - math.cos(b)) / TWO_PI


def in_parameter_triangle(rho, theta):
    return 0 < theta < 1 and -0.5 < rho < -theta / 2


def limit_curve(theta, rho):
    if not in_parameter_triangle(rho, theta):
        raise OrigamiError("outside-parameter-triangle", f"theta={theta!r} rho={rho!r}")
    return gamma(rho, theta)


def gamma_partials(rho, theta):
    """(d gamma / d rho, d gamma / d theta)."""
    a = TWO_PI * rho
    b = TWO_PI * (rho + theta)
    d_rho = complex(math.cos(a) - math.cos(b), math.sin(a) + math.sin(b))
    d_theta = complex(1 - math.cos(b), math.sin(b))
    return d_rho, d_theta


def jacobian_gamma(rho, theta):
    return 4 * math.sin(math.pi * rho) * math.sin(math.pi * (rho + theta)) * math.sin(math.pi * (2 * rho + theta))


def jacobian_fd(rho, theta, step=1e-6):
    """Jacobian of gamma from central differences of gamma itself."""
    gr = (gamma(rho + step, theta) - gamma(rho - step, theta)) / (2 * step)
    gt = (gamma(rho, theta + step) - gamma(rho, theta - step)) / (2 * step)
    return gr.real * gt.imag - gr.imag * gt.real


def tangent_direction(theta):
    """Unit direction of the segments rho -> c_theta(rho) (fixed theta)."""
    if not 0 < theta < 1:
        raise OrigamiError("degenerate-direction", f"theta={theta!r}")
    return complex(math.sin(math.pi * theta), math.cos(math.pi * theta))


def convergence_check(theta, rho, m):
    """|mod_{h=0}(m n, m ell, rho) - c_theta(rho)| with theta = ell / n."""
    q = Fraction(theta).limit_denominator(10**6)
    n, ell = q.denominator * m, q.numerator * m
    return abs(modulus_flat(n, ell, rho) - gamma(rho, float(q)))


def cycloid_small(t):
    """c_t(-t): image of the singular line rho + theta = 0."""
    return gamma(-t, t)


def cycloid_cusp(theta):
    """c_theta(-1/2): image of the edge rho = -1/2."""
    return gamma(-0.5, theta)


def cycloid_large(rho):
    """c_{-2 rho}(rho): image of the edge theta = -2 rho."""
    return gamma(rho, -2 * rho)


def axis_segment(rho):
    """c_0(rho) = i (1 - cos 2 pi rho) / pi, the image of theta = 0."""
    return gamma(rho, 0.0)


# each boundary piece: (curve, t_start, t_end), traversed in order
DOMAIN1 = (
    (cycloid_small, 0.0, 0.5),
    (cycloid_cusp, 0.5, 0.0),
    (axis_segment, -0.5, 0.0),
)
DOMAIN2 = (
    (cycloid_large, 0.0, -0.5),
    (cycloid_cusp, 1.0, 0.5),
    (cycloid_small, 0.5, 0.0),
)
SAMPLES = 4096


def _polyline(pieces, samples=SAMPLES):
    pts = []
    for curve, t0, t1 in pieces:
        ts = np.linspace(t0, t1, samples)
        pts.extend(curve(float(t)) for t in ts)
    return np.array(pts)


_POLY = {}


def boundary_polyline(domain):
    if domain not in _POLY:
        _POLY[domain] = _polyline(DOMAIN1 if domain == 1 else DOMAIN2)
    return _POLY[domain]


def winding_number(z, poly):
    """Winding number of a closed complex polyline around z."""
    d = poly - z
    ang = np.angle(np.roll(d, -1) / d)
    return int(round(ang.sum() / TWO_PI))


def _curve_distance(z, curve, t0, t1, samples=SAMPLES):
    lo, hi = min(t0, t1), max(t0, t1)
    ts = np.linspace(lo, hi, samples)
    pts = np.array([curve(float(t)) for t in ts])
    k = int(np.argmin(np.abs(pts - z)))
    a, b = ts[max(k - 1, 0)], ts[min(k + 1, samples - 1)]
    res = minimize_scalar(
        lambda t: abs(curve(t) - z), bounds=(a, b), method="bounded", options={"xatol": 1e-14}
    )
    return min(float(res.fun), float(np.abs(pts[k] - z)))


def boundary_distance(z):
    """Distance from z to the union of all bounding curves."""
    pieces = set(DOMAIN1) | set(DOMAIN2)
    return min(_curve_distance(z, c, t0, t1) for c, t0, t1 in pieces)


def region_contains(z, tol=None):
    """Classify z against the two cycloid-bounded image domains.

    Returns ``boundary`` within ``tol.geom`` of a bounding curve, else
    ``domain1`` or ``domain2`` (domain1 wins where they overlap), else
    ``outside``.
    """
    tol = tol or TOL
    z = complex(z)
    if boundary_distance(z) <= tol.geom:
        return "boundary"
    if winding_number(z, boundary_polyline(1)) != 0:
        return "domain1"
    if winding_number(z, boundary_polyline(2)) != 0:
        return "domain2"
    return "outside"


def coverage_region_contains(z):
    """The explicit half of the fundamental domain covered by the construction."""
    x, y = z.real, z.imag
    if 0 < abs(x) < 0.5:
        return y >= math.sqrt(1 - x * x)
    if abs(x) == 0.5:
        return y > math.sqrt(3) / 2
    return False


def reduce_modulus(z, max_steps=10**4):
    z = complex(z)
    if not z.imag > 0:
        raise OrigamiError("not-upper-half-plane", f"Im z = {z.imag!r}")
    a, b, c, d = 1, 0, 0, 1
    chain = []
    w = z
    for _ in range(max_steps):
        k = -math.floor(w.real + 0.5)
        if k:
            w = w + k
            a, b = a + k * c, b + k * d
            chain.append(("T", k))
        if abs(w) < 1 - 1e-15:
            w = -1 / w
            a, b, c, d = -c, -d, a, b
            chain.append(("S",))
        else:
            break
    else:
        raise OrigamiError("reduction-diverged", f"z={z!r}")
    return Modulus(z, w, tuple(chain), (a, b, c, d))
