"""Backend selection for the triangle-contact kernel.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  Set ``ORIGAMI_TORI_PURE=1`` to force the fallback.
"""
import os

from . import _tritri as python_backend

try:
    if os.environ.get("ORIGAMI_TORI_PURE"):
        raise ImportError("pure backend forced")
    from . import _kernels as compiled_backend
except ImportError:
    compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "cython" if compiled_backend is not None else "python"

tri_tri_intersect = backend.tri_tri_intersect
scan_pairs = backend.scan_pairs
