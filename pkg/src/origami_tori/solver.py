"""Inverse problem: parameters of an embedded torus with a prescribed modulus.

Targets off the imaginary axis are realized by a plain two-band torus, pure
imaginary ones by doubling a slab of a fixed base torus.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .annulus import strip_height
from .errors import OrigamiError
from .moduli import modulus_flat, modulus_from_development, modulus_value, reduce_modulus
from .torus import (
    DoubleSpec,
    TorusParams,
    assemble_torus,
    double_torus,
    rho_interval,
    verify_embedding,
)

ENDPOINT_MARGIN = 1e-9
SAMPLES = 1024
BASE = TorusParams(8, 2, -3 / 8, 1.0)


@dataclass(frozen=True)
class SolveRequest:
    target: complex
    n_max: int = 400
    tol: float = 1e-9
    allow_reduction: bool = False
    n_min: int = 5

    def __post_init__(self):
        if not complex(self.target).imag > 0:
            raise OrigamiError("not-upper-half-plane", f"target={self.target!r}")
        if self.n_max < 5:
            raise OrigamiError("n-too-small", f"n_max={self.n_max}")


@dataclass(frozen=True, eq=False)
class SolveResult:
    kind: str
    params: object
    achieved: complex
    residual: float
    target: complex
    torus: Optional[object] = None

    def as_dict(self):
        if self.kind == "torus":
            p = self.params
            params = {"n": p.n, "ell": p.ell, "rho": p.rho, "h": p.h}
        else:
            b = self.params.base
            params = {
                "n": b.n, "ell": b.ell, "rho": b.rho, "h": b.h,
                "a": self.params.a, "half": self.params.half,
            }
        return {
            "kind": self.kind,
            "params": params,
            "target": [self.target.real, self.target.imag],
            "achieved": [self.achieved.real, self.achieved.imag],
            "residual": self.residual,
        }


def _re_samples(n, ell, rhos):
    s = math.sin(math.pi / n)
    a = 2 * np.pi * rhos + np.pi / n
    return (np.sin(a) - np.sin(a + 2 * np.pi * ell / n) + 2 * ell * s) / (2 * n * s)


def solve_real_part(n, ell, x, samples=SAMPLES, xtol=1e-15):
    """All rho in the open admissible interval with Re mod(n, ell, rho, .) = x.

    The real part does not depend on h.  Roots are bracketed by sampling and
    then refined; they are returned in ascending order.
    """
    if not 2 <= abs(ell) <= n - 3:
        return []
    lo, hi = rho_interval(n, ell)
    lo, hi = lo + ENDPOINT_MARGIN, hi - ENDPOINT_MARGIN
    if not lo < hi:
        return []
    rhos = np.linspace(lo, hi, samples)
    f = _re_samples(n, ell, rhos) - x

    def g(r):
        return modulus_value(n, ell, r, 1.0).real - x

    roots = []
    for i in range(samples):
        if f[i] == 0.0:
            roots.append(float(rhos[i]))
        elif i + 1 < samples and f[i] * f[i + 1] < 0:
            roots.append(brentq(g, rhos[i], rhos[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    return roots


def height_floor(n, ell, rho):
    """Infimum of Im(mod) over h > 0 (the h = 0 value, not attained)."""
    return modulus_flat(n, ell, rho).imag


def solve_height(n, ell, rho, y):
    """The unique h > 0 with Im mod(n, ell, rho, h) = y."""
    floor = height_floor(n, ell, rho)
    if not y > floor:
        raise OrigamiError("imaginary-part-unreachable", f"y={y!r} <= h->0 limit {floor!r}")

    def g(h):
        return modulus_value(n, ell, rho, h).imag - y

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > 1e12:
            raise OrigamiError("imaginary-part-unreachable", f"y={y!r}")
    lo = 0.0 if g(0.0) < 0 else hi / 2
    return brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def ell_order(n):
    """+2, -2, +3, -3, ... up to n - 3."""
    for k in range(2, n - 2):
        yield k
        yield -k


def _finish_torus(params, target, tol):
    torus = assemble_torus(params)
    if not verify_embedding(torus).ok:
        return None
    achieved = modulus_from_development(torus)
    residual = abs(achieved - target)
    if residual > tol:
        return None
    return SolveResult("torus", params, achieved, residual, target, torus)


def solve_modulus(req):
    if not isinstance(req, SolveRequest):
        req = SolveRequest(complex(req))
    target = complex(req.target)
    if req.allow_reduction:
        target = reduce_modulus(target).normalized
    if abs(target.real) <= req.tol:
        return solve_pure_imaginary(target.imag, tol=req.tol)
    x, y = target.real, target.imag
    for n in range(max(req.n_min, 5), req.n_max + 1):
        for ell in ell_order(n):
            for rho in solve_real_part(n, ell, x):
                if not y > height_floor(n, ell, rho):
                    continue
                h = solve_height(n, ell, rho, y)
                params = TorusParams(n, ell, rho, h)
                if not params.valid:
                    continue
                if abs(modulus_value(n, ell, params.rho, h) - target) > req.tol:
                    continue
                res = _finish_torus(params, target, req.tol)
                if res is not None:
                    return res
    raise OrigamiError("target-unreached", f"target={target!r} (increase nMax beyond {req.n_max})")


def double_height_ratio(base):
    """Im of the double per unit slab fraction: 2 (H_rho + H_sigma) / L."""
    n = base.n
    s = strip_height(n, base.rho, base.h) + strip_height(n, base.sigma, base.h)
    return 2 * s / (2 * n * math.sin(math.pi / n))


def solve_pure_imaginary(y, base=BASE, tol=1e-9):
    """Realize the modulus i*y by doubling a slab of ``base``."""
    if not y > 0:
        raise OrigamiError("not-upper-half-plane", f"y={y!r}")
    if y < double_height_ratio(base):
        frac = y / double_height_ratio(base)
    else:
        base = base.replace(h=solve_height(base.n, base.ell, base.rho, y))
        frac = 0.5
    spec = DoubleSpec(base, frac * base.h, "lower")
    torus = double_torus(spec)
    report = verify_embedding(torus)
    if not report.ok:
        raise OrigamiError("verification-failed", f"{spec}")
    target = complex(0.0, y)
    achieved = modulus_from_development(torus)
    residual = abs(achieved - target)
    if residual > tol:
        raise OrigamiError("target-unreached", f"double residual {residual!r}")
    return SolveResult("double", spec, achieved, residual, target, torus)
