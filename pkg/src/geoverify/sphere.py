"""Spherical geometry: concurrent cevians via vector identities, and the
south-walking tent locus with a walk simulator.

Great circles are identified with their poles, so "three altitudes meet"
becomes "three poles are collinear", which the cross-product identities
deliver exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import DegenerateInputError

EARTH_RADIUS_KM = 6371.0


class InvalidWalkError(ValueError):
    """Raised when a walk leg crosses or starts past a pole."""


@dataclass(frozen=True)
class SphericalTriangle:
    """Vertices as unit 3-vectors, not all on one great circle."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "C"):
            v = np.asarray(getattr(self, name), dtype=float)
            n = np.linalg.norm(v)
            if n == 0:
                raise DegenerateInputError("zero vertex vector")
            object.__setattr__(self, name, v / n)
        if abs(self.triple_product()) < 1e-12:
            raise DegenerateInputError("vertices lie on one great circle")
        for u, v in ((self.A, self.B), (self.B, self.C), (self.C, self.A)):
            if np.linalg.norm(np.cross(u, v)) < 1e-12:
                raise DegenerateInputError("two vertices are parallel or antipodal")

    def triple_product(self) -> float:
        return float(np.dot(np.cross(self.A, self.B), self.C))


_CYCLES = {"A": ("B", "C", "A"), "B": ("C", "A", "B"), "C": ("A", "B", "C")}


def altitude_pole(tri: SphericalTriangle, vertex: str) -> np.ndarray:
    """Pole of the altitude great circle dropped from the given vertex:
    (X x Y) x Z for the cyclic relabeling putting Z at that vertex."""
    x, y, z = (getattr(tri, k) for k in _CYCLES[vertex])
    pole = np.cross(np.cross(x, y), z)
    n = np.linalg.norm(pole)
    if n < 1e-15:
        raise DegenerateInputError("degenerate altitude pole")
    return pole / n


def median_pole(tri: SphericalTriangle, vertex: str) -> np.ndarray:
    x, y, z = (getattr(tri, k) for k in _CYCLES[vertex])
    pole = np.cross(x + y, z)
    n = np.linalg.norm(pole)
    if n < 1e-15:
        raise DegenerateInputError("degenerate median pole")
    return pole / n


def _raw_poles(tri: SphericalTriangle, kind: str) -> np.ndarray:
    a, b, c = tri.A, tri.B, tri.C
    if kind == "altitudes":
        return np.array(
            [np.cross(np.cross(a, b), c), np.cross(np.cross(b, c), a), np.cross(np.cross(c, a), b)]
        )
    if kind == "medians":
        return np.array([np.cross(a + b, c), np.cross(b + c, a), np.cross(c + a, b)])
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class ConcurrencyResult:
    point: np.ndarray  # unit direction common to the three great circles
    residual: float  # |det| of the three unnormalized poles
    pole_sum: np.ndarray  # vanishes identically, up to rounding


def concurrency_check(tri: SphericalTriangle, kind: str = "altitudes") -> ConcurrencyResult:
    """Common point of the three altitude (or median) great circles.

    The three unnormalized poles sum to zero, hence are coplanar with the
    origin; the kernel direction of the pole matrix is the intersection
    point, and |det| of the poles is the collinearity residual.
    """
    poles = _raw_poles(tri, kind)
    residual = abs(float(np.linalg.det(poles)))
    _, _, vt = np.linalg.svd(poles)
    point = vt[2]
    if point[2] < 0 or (point[2] == 0 and point[np.argmax(np.abs(point))] < 0):
        point = -point
    return ConcurrencyResult(point=point, residual=residual, pole_sum=poles.sum(axis=0))


def _cross_exact(u, v) -> tuple[Fraction, Fraction, Fraction]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _add3(*vs):
    return tuple(sum(c[i] for c in vs) for i in range(3))


def pole_sum_exact(a, b, c, kind: str = "altitudes"):
    """Sum of the three unnormalized poles in exact rational arithmetic.

    For "altitudes" this is the Jacobi identity of the cross product and
    for "medians" its skew-symmetry: both sums are exactly (0, 0, 0).
    """
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    c = tuple(Fraction(x) for x in c)
    if kind == "altitudes":
        terms = (
            _cross_exact(_cross_exact(a, b), c),
            _cross_exact(_cross_exact(b, c), a),
            _cross_exact(_cross_exact(c, a), b),
        )
    elif kind == "medians":
        terms = (
            _cross_exact(_add3(a, b), c),
            _cross_exact(_add3(b, c), a),
            _cross_exact(_add3(c, a), b),
        )
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return _add3(*terms)


@dataclass(frozen=True)
class SpherePosition:
    """Latitude/longitude in radians on a sphere of the given radius (km)."""

    latitude: float
    longitude: float
    radius: float = EARTH_RADIUS_KM

    def __post_init__(self):
        if not -math.pi / 2 <= self.latitude <= math.pi / 2:
            raise ValueError("latitude out of range")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def unit_vector(self) -> np.ndarray:
        clat = math.cos(self.latitude)
        return np.array(
            [
                clat * math.cos(self.longitude),
                clat * math.sin(self.longitude),
                math.sin(self.latitude),
            ]
        )


@dataclass(frozen=True)
class TentLocus:
    radius: float
    distance: float
    includes_north_pole: bool
    latitudes: tuple[float, ...]  # tent latitude for k = 1, 2, ...
    accumulation_latitude: float  # limit of the circles; NOT itself a solution
    truncated: bool  # fewer rings than requested are numerically distinct


def tent_locus(radius: float, distance: float, count: int) -> TentLocus:
    """Tent latitudes phi_k = -arccos(d / (2 pi k R)) + d/R for k = 1..count.

    Ring k sits distance d north of the parallel of circumference d/k near
    the south pole, so the westward leg wraps that parallel exactly k
    times.  The list is truncated (with a notice flag) once consecutive
    latitudes stop being numerically distinct.
    """
    if distance <= 0 or radius <= 0:
        raise ValueError("radius and distance must be positive")
    if distance >= math.pi * radius / 2:
        raise ValueError("walk distance must be below a quarter circumference")
    limit = -math.pi / 2 + distance / radius
    latitudes: list[float] = []
    truncated = False
    for k in range(1, count + 1):
        phi = -math.acos(distance / (2 * math.pi * k * radius)) + distance / radius
        distinct = phi > limit and (not latitudes or phi < latitudes[-1])
        if not distinct:
            truncated = True
            break
        latitudes.append(phi)
    return TentLocus(
        radius=radius,
        distance=distance,
        includes_north_pole=True,
        latitudes=tuple(latitudes),
        accumulation_latitude=limit,
        truncated=truncated,
    )


def _at_pole(latitude: float) -> bool:
    return abs(abs(latitude) - math.pi / 2) < 1e-15


def verify_walk(start: SpherePosition, distance: float) -> float:
    """Walk south d, west d, north d; return the great-circle distance (km)
    between start and end.

    Meridian legs change latitude by d/R; the parallel leg changes
    longitude by d / (R cos(latitude)).  A leg that reaches or crosses a
    pole (other than ending the final leg at the north pole) is rejected.
    """
    r = start.radius
    d = distance
    if d <= 0:
        raise ValueError("distance must be positive")

    lat_south = start.latitude - d / r
    if lat_south <= -math.pi / 2:
        raise InvalidWalkError("southward leg reaches the south pole")
    if _at_pole(lat_south):
        raise InvalidWalkError("westward leg starts at a pole")
    lon_west = start.longitude - d / (r * math.cos(lat_south))
    lat_north = lat_south + d / r
    if lat_north > math.pi / 2 + 1e-12:
        raise InvalidWalkError("northward leg crosses the north pole")
    lat_north = min(lat_north, math.pi / 2)

    end = SpherePosition(latitude=lat_north, longitude=lon_west, radius=r)
    # chord-based angle: well-conditioned for nearly coincident points,
    # unlike acos of the dot product
    chord = float(np.linalg.norm(start.unit_vector() - end.unit_vector()))
    return r * 2.0 * math.asin(min(1.0, chord / 2.0))
