"""Pure-NumPy implementations of the Monte Carlo hot kernels.

Drop-in replacements for the compiled extension; every elementwise
operation is ordered identically to the C loops so both backends return
bitwise-equal arrays.  Reductions are left to the caller.
"""

from __future__ import annotations

import numpy as np


def box_tube_mask(points: np.ndarray, half: np.ndarray, eps: float) -> np.ndarray:
    """1 where the point lies within distance eps of the centered box."""
    eps2 = eps * eps
    dx = np.maximum(np.abs(points[:, 0]) - half[0], 0.0)
    dy = np.maximum(np.abs(points[:, 1]) - half[1], 0.0)
    dz = np.maximum(np.abs(points[:, 2]) - half[2], 0.0)
    d2 = (dx * dx + dy * dy) + dz * dz
    return (d2 <= eps2).astype(np.uint8)


def silhouette_areas(dirs: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """Shadow area of an a x b x c box for each unit direction."""
    bc = b * c
    ca = c * a
    ab = a * b
    return (bc * np.abs(dirs[:, 0]) + ca * np.abs(dirs[:, 1])) + ab * np.abs(dirs[:, 2])


def corners_in_box(
    rotations: np.ndarray,
    translations: np.ndarray,
    corners: np.ndarray,
    half: np.ndarray,
) -> np.ndarray:
    """1 where every transformed corner lies inside the centered box."""
    n = rotations.shape[0]
    ok = np.ones(n, dtype=bool)
    for c0, c1, c2 in corners:
        w0 = ((rotations[:, 0, 0] * c0 + rotations[:, 0, 1] * c1) + rotations[:, 0, 2] * c2) + translations[:, 0]
        w1 = ((rotations[:, 1, 0] * c0 + rotations[:, 1, 1] * c1) + rotations[:, 1, 2] * c2) + translations[:, 1]
        w2 = ((rotations[:, 2, 0] * c0 + rotations[:, 2, 1] * c1) + rotations[:, 2, 2] * c2) + translations[:, 2]
        ok &= (np.abs(w0) <= half[0]) & (np.abs(w1) <= half[1]) & (np.abs(w2) <= half[2])
    return ok.astype(np.uint8)
