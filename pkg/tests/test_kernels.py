"""The compiled kernels and the NumPy fallback must agree bitwise."""

import numpy as np
import pytest

from geoverify import _kernels_py
from geoverify import kernels
from geoverify.tubes import Box, random_rotations

try:
    from geoverify import _kernels as _compiled
except ImportError:
    _compiled = None

needs_compiled = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")


def _sample_inputs(seed):
    rng = np.random.default_rng(seed)
    points = rng.uniform(-2.0, 2.0, size=(10_000, 3))
    dirs = rng.normal(size=(10_000, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    rots = random_rotations(2_000, rng)
    trans = rng.uniform(-1.0, 1.0, size=(2_000, 3))
    corners = Box(1.3, 0.7, 0.9).corners()
    half = Box(1.0, 1.2, 0.8).half
    return points, dirs, rots, trans, corners, half


@needs_compiled
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_box_tube_mask_bitwise_equal(seed):
    points, _, _, _, _, half = _sample_inputs(seed)
    for eps in (0.0, 0.25, 1.0):
        a = _compiled.box_tube_mask(points, half, eps)
        b = _kernels_py.box_tube_mask(points, half, eps)
        assert np.array_equal(a, b)


@needs_compiled
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_silhouette_areas_bitwise_equal(seed):
    _, dirs, _, _, _, _ = _sample_inputs(seed)
    a = _compiled.silhouette_areas(dirs, 1.0, 2.0, 3.0)
    b = _kernels_py.silhouette_areas(dirs, 1.0, 2.0, 3.0)
    assert np.array_equal(a, b)  # bitwise, not approximately


@needs_compiled
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_corners_in_box_bitwise_equal(seed):
    _, _, rots, trans, corners, half = _sample_inputs(seed)
    a = _compiled.corners_in_box(rots, trans, np.ascontiguousarray(corners), half)
    b = _kernels_py.corners_in_box(rots, trans, corners, half)
    assert np.array_equal(a, b)


def test_selected_backend_exposes_kernels():
    assert kernels.BACKEND in ("cython", "numpy")
    for name in ("box_tube_mask", "silhouette_areas", "corners_in_box"):
        assert callable(getattr(kernels, name))


def test_numpy_fallback_forced(monkeypatch):
    import importlib
    import geoverify.kernels as kmod

    monkeypatch.setenv("GEOVERIFY_KERNELS", "numpy")
    reloaded = importlib.reload(kmod)
    try:
        assert reloaded.BACKEND == "numpy"
    finally:
        monkeypatch.delenv("GEOVERIFY_KERNELS")
        importlib.reload(kmod)


def test_mask_semantics_against_direct_distance():
    rng = np.random.default_rng(9)
    points = rng.uniform(-2, 2, size=(5_000, 3))
    half = np.array([0.5, 0.75, 1.0])
    eps = 0.3
    mask = kernels.box_tube_mask(points, half, eps).astype(bool)
    d = np.maximum(np.abs(points) - half, 0.0)
    expected = (d * d).sum(axis=1) <= eps * eps
    assert np.array_equal(mask, expected)
