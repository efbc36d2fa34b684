"""Monte Carlo kernel backend selection.

The compiled extension is preferred when importable; the pure-NumPy
fallback is bitwise equivalent.  Set GEOVERIFY_KERNELS=numpy (or =cython)
to force a backend.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("GEOVERIFY_KERNELS", "auto").lower()

if _requested not in ("auto", "cython", "numpy"):
    raise RuntimeError(f"GEOVERIFY_KERNELS must be auto, cython or numpy, not {_requested!r}")

if _requested == "numpy":
    _impl = _kernels_py
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise RuntimeError("compiled kernels requested but not built")
        _impl = _kernels_py
        BACKEND = "numpy"

box_tube_mask = _impl.box_tube_mask
silhouette_areas = _impl.silhouette_areas
corners_in_box = _impl.corners_in_box
