"""Origami (piecewise-linear isometric) embeddings of flat tori."""
from .errors import OrigamiError
from .geometry import Tolerances, TriMesh
from .annulus import AnnulusParams, build_annulus, classify_twist, cut_annulus, develop_annulus, projection_foot
from .torus import (
    DoubleSpec,
    TorusParams,
    assemble_torus,
    double_torus,
    enumerate_pairs,
    pairing_valid,
    verify_embedding,
)
from .moduli import Modulus, modulus_from_development, reduce_modulus, torus_modulus

__all__ = [
    "AnnulusParams",
    "DoubleSpec",
    "Modulus",
    "OrigamiError",
    "Tolerances",
    "TorusParams",
    "TriMesh",
    "assemble_torus",
    "build_annulus",
    "classify_twist",
    "cut_annulus",
    "develop_annulus",
    "double_torus",
    "enumerate_pairs",
    "modulus_from_development",
    "pairing_valid",
    "projection_foot",
    "reduce_modulus",
    "torus_modulus",
    "verify_embedding",
]
__version__ = "0.1.0"
