"""Tube volumes of boxes, containment search, and the mean-shadow area.

The eps-neighborhood of an a x b x c box has volume
V + eps S + pi eps^2 (a+b+c) + (4/3) pi eps^3: faces contribute slabs,
the 12 edges quarter-cylinders (total length 4(a+b+c), so pi eps^2 / 4
times that), the corners one full ball.  Monte Carlo estimators cross-check
the coefficients, and a random-pose search probes the claim that a box
fitting inside another must have the smaller edge sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels

_CHUNK = 1 << 18


@dataclass(frozen=True)
class Box:
    """Rectangular box with edge lengths a, b, c, centered at the origin."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise ValueError("edge lengths must be positive")

    @property
    def volume(self) -> float:
        return self.a * self.b * self.c

    @property
    def surface_area(self) -> float:
        return 2.0 * (self.a * self.b + self.b * self.c + self.c * self.a)

    @property
    def edge_sum(self) -> float:
        """Sum of the three measurements (each edge direction counted once)."""
        return self.a + self.b + self.c

    @property
    def half(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c]) / 2.0

    def corners(self) -> np.ndarray:
        h = self.half
        return np.array(list(product((-h[0], h[0]), (-h[1], h[1]), (-h[2], h[2]))))


def tube_volume(box: Box, eps: float) -> float:
    """Closed-form volume of the eps-neighborhood."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return (
        box.volume
        + eps * box.surface_area
        + math.pi * eps**2 * box.edge_sum
        + (4.0 / 3.0) * math.pi * eps**3
    )


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    n_samples: int
    n_accepted: int
    seed: int


def mc_tube_volume(box: Box, eps: float, n_samples: int, seed: int = 0) -> MCEstimate:
    """Rejection-sampling estimate of the eps-neighborhood volume.

    Samples uniformly in the bounding box of the neighborhood and counts
    points within distance eps of the box.  Samples are generated in
    memory-bounded chunks; the accept count is an integer, so chunking
    cannot change the result for a fixed seed.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    half = box.half
    bound = half + eps
    bound_volume = float(np.prod(2.0 * bound))
    accepted = 0
    remaining = n_samples
    while remaining:
        m = min(remaining, _CHUNK)
        pts = rng.uniform(-bound, bound, size=(m, 3))
        accepted += int(np.count_nonzero(kernels.box_tube_mask(pts, half, eps)))
        remaining -= m
    p = accepted / n_samples
    return MCEstimate(
        value=p * bound_volume,
        std_error=bound_volume * math.sqrt(max(p * (1.0 - p), 0.0) / n_samples),
        n_samples=n_samples,
        n_accepted=accepted,
        seed=seed,
    )


@dataclass(frozen=True)
class QuadraticFit:
    coefficient: float  # fitted quadratic-in-eps Steiner coefficient
    expected: float  # pi * (a+b+c)
    rival: float  # 6 pi * (a+b+c), the same formula with an inflated edge term
    relative_error: float

    @property
    def selects_expected(self) -> bool:
        return abs(self.coefficient - self.expected) < abs(self.coefficient - self.rival)


def steiner_quadratic_fit(
    box: Box, eps_values, n_samples: int, seed: int = 0
) -> QuadraticFit:
    """Least-squares fit of the quadratic tube coefficient from MC data.

    Volume, surface and cubic terms are not in dispute, so they are
    subtracted and the residuals regressed on eps^2.  The fit decides
    between the quarter-cylinder coefficient pi (a+b+c) and the inflated
    6 pi (a+b+c).
    """
    eps_values = [float(e) for e in eps_values]
    if len(eps_values) < 2:
        raise ValueError("need at least two eps values")
    num = 0.0
    den = 0.0
    for i, eps in enumerate(eps_values):
        est = mc_tube_volume(box, eps, n_samples, seed=seed + i)
        resid = (
            est.value
            - box.volume
            - eps * box.surface_area
            - (4.0 / 3.0) * math.pi * eps**3
        )
        num += resid * eps**2
        den += eps**4
    coeff = num / den
    expected = math.pi * box.edge_sum
    return QuadraticFit(
        coefficient=coeff,
        expected=expected,
        rival=6.0 * expected,
        relative_error=abs(coeff - expected) / expected,
    )


@dataclass(frozen=True)
class Pose:
    """Rigid placement: proper rotation plus translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=float)
        t = np.asarray(self.translation, dtype=float)
        if r.shape != (3, 3) or t.shape != (3,):
            raise ValueError("pose needs a 3x3 rotation and a 3-vector translation")
        if np.max(np.abs(r.T @ r - np.eye(3))) > 1e-12 or np.linalg.det(r) < 0:
            raise ValueError("rotation must be orthonormal with determinant +1")
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)


def identity_pose() -> Pose:
    return Pose(rotation=np.eye(3), translation=np.zeros(3))


def _quaternions_to_matrices(q: np.ndarray) -> np.ndarray:
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    return np.stack(
        [
            np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], axis=-1),
            np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], axis=-1),
            np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], axis=-1),
        ],
        axis=-2,
    )


def random_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform rotations from normalized quaternion sampling."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return _quaternions_to_matrices(q)


def containment_check(inner: Box, pose: Pose, outer: Box) -> bool:
    """True iff every corner of the posed inner box lies in the outer box
    (sufficient by convexity)."""
    moved = inner.corners() @ pose.rotation.T + pose.translation
    return bool(np.all(np.abs(moved) <= outer.half + 1e-15))


@dataclass(frozen=True)
class ContainmentSearch:
    n_poses: int
    n_contained: int
    seed: int
    example: Pose | None


def containment_search(inner: Box, outer: Box, n_poses: int, seed: int = 0) -> ContainmentSearch:
    """Random-pose search for placements of `inner` inside `outer`.

    Rotations are quaternion-uniform; translations are uniform over the
    outer box, which covers every feasible placement because a contained
    box's center must lie inside the container.
    """
    rng = np.random.default_rng(seed)
    corners = inner.corners()
    found = 0
    example = None
    remaining = n_poses
    while remaining:
        m = min(remaining, _CHUNK // 8)
        rot = random_rotations(m, rng)
        trans = rng.uniform(-outer.half, outer.half, size=(m, 3))
        hits = kernels.corners_in_box(rot, trans, corners, outer.half)
        k = int(np.count_nonzero(hits))
        if k and example is None:
            idx = int(np.argmax(hits))
            example = Pose(rotation=rot[idx], translation=trans[idx])
        found += k
        remaining -= m
    return ContainmentSearch(n_poses=n_poses, n_contained=found, seed=seed, example=example)


def silhouette_area(box: Box, direction) -> float:
    """Area of the box's shadow on the plane orthogonal to the direction."""
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    return float(
        (box.b * box.c * abs(u[0]) + box.c * box.a * abs(u[1]))
        + box.a * box.b * abs(u[2])
    )


def crofton_area(box: Box, n_samples: int, seed: int = 0) -> MCEstimate:
    """Surface area as 4 x the mean shadow area over uniform directions.

    All per-direction areas are materialized and reduced in one pass, so a
    fixed seed gives one answer regardless of generation chunking.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    areas = np.empty(n_samples)
    offset = 0
    while offset < n_samples:
        m = min(n_samples - offset, _CHUNK)
        u = rng.normal(size=(m, 3))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        areas[offset : offset + m] = kernels.silhouette_areas(u, box.a, box.b, box.c)
        offset += m
    mean = float(np.mean(areas))
    std = float(np.std(areas)) / math.sqrt(n_samples)
    return MCEstimate(
        value=4.0 * mean,
        std_error=4.0 * std,
        n_samples=n_samples,
        n_accepted=n_samples,
        seed=seed,
    )
