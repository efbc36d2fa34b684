"""Projective polygon dynamics: the skip-a-vertex diagonal map, duality,
equivalence testing, vertex cross-ratios, and conics through or tangent to
five elements.

Join and meet are cross products of homogeneous triples, renormalized
after every product to keep the floating-point scale bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Conic, DegenerateInputError, cross_ratio, normalize_triple


class DegeneratePolygonError(ValueError):
    """Polygon violates the non-collinearity invariants."""


class NoUniqueConicError(ValueError):
    """The five elements do not determine a unique conic."""


def _norm_rows(rows: np.ndarray) -> np.ndarray:
    return np.array([normalize_triple(r) for r in rows])


@dataclass(frozen=True, eq=False)
class ProjPolygon:
    """Cyclic vertex list in the real projective plane, rows normalized."""

    vertices: np.ndarray  # (n, 3)

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 3:
            raise DegenerateInputError("need at least 3 homogeneous vertices")
        v = _norm_rows(v)
        n = len(v)
        for i in range(n):
            if np.linalg.norm(np.cross(v[i], v[(i + 1) % n])) < 1e-12:
                raise DegeneratePolygonError("two consecutive vertices coincide")
            det = float(np.linalg.det(v[[i, (i + 1) % n, (i + 2) % n]]))
            if abs(det) < 1e-12:
                raise DegeneratePolygonError("three consecutive vertices are collinear")
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @staticmethod
    def from_affine(points) -> "ProjPolygon":
        pts = np.asarray(points, dtype=float)
        return ProjPolygon(np.column_stack([pts, np.ones(len(pts))]))

    def affine(self) -> np.ndarray:
        v = self.vertices
        if np.any(np.abs(v[:, 2]) < 1e-12):
            raise DegenerateInputError("polygon has vertices at infinity")
        return v[:, :2] / v[:, 2:3]

    def diameter(self) -> float:
        pts = self.affine()
        return float(
            max(np.linalg.norm(p - q) for i, p in enumerate(pts) for q in pts[i + 1 :])
        )

    def side(self, i: int) -> np.ndarray:
        """Line through vertices i and i+1."""
        v = self.vertices
        return normalize_triple(np.cross(v[i % self.n], v[(i + 1) % self.n]))


def regular_polygon(n: int) -> ProjPolygon:
    ang = 2.0 * math.pi * np.arange(n) / n
    return ProjPolygon.from_affine(np.column_stack([np.cos(ang), np.sin(ang)]))


def random_convex_polygon(n: int, rng: np.random.Generator) -> ProjPolygon:
    """Convex n-gon from the hull of random points, resampled until the
    hull has exactly n vertices; deterministic for a fixed generator."""
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(n, 2))
        hull = _convex_hull(pts)
        if len(hull) == n:
            return ProjPolygon.from_affine(hull)


def _convex_hull(points: np.ndarray) -> np.ndarray:
    pts = sorted(map(tuple, points))

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return np.array(lower[:-1] + upper[:-1])


def _cross2(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def pentagram_map(poly: ProjPolygon) -> ProjPolygon:
    """Image vertex i is the meet of the two short diagonals around i:
    (v_{i-1} v_{i+1}) ^ (v_i v_{i+2})."""
    v = poly.vertices
    n = poly.n
    out = []
    for i in range(n):
        d1 = np.cross(v[(i - 1) % n], v[(i + 1) % n])
        d2 = np.cross(v[i], v[(i + 2) % n])
        w = np.cross(normalize_triple(d1), normalize_triple(d2))
        if np.linalg.norm(w) < 1e-12:
            raise DegeneratePolygonError("short diagonals are parallel or coincide")
        out.append(normalize_triple(w))
    return ProjPolygon(np.array(out))


def dual_polygon(poly: ProjPolygon) -> ProjPolygon:
    """Vertex i of the dual is the side (v_i v_{i+1}) read as a point
    triple; the double dual is the original up to index shift."""
    return ProjPolygon(np.array([poly.side(i) for i in range(poly.n)]))


def projective_transform_from(src, dst) -> np.ndarray:
    """Unique projective map (up to scale) sending four source points to
    four destination points, each quadruple in general position."""
    src = np.array([normalize_triple(np.asarray(p, dtype=float)) for p in src])
    dst = np.array([normalize_triple(np.asarray(p, dtype=float)) for p in dst])
    if src.shape != (4, 3) or dst.shape != (4, 3):
        raise DegenerateInputError("need exactly four source and four target points")

    def frame_matrix(quad: np.ndarray) -> np.ndarray:
        base = quad[:3].T  # columns p1 p2 p3
        if abs(np.linalg.det(base)) < 1e-12:
            raise DegenerateInputError("three of the four points are collinear")
        mu = np.linalg.solve(base, quad[3])
        if np.min(np.abs(mu)) < 1e-12:
            raise DegenerateInputError("fourth point is collinear with two others")
        return base * mu

    m = frame_matrix(dst) @ np.linalg.inv(frame_matrix(src))
    return m / np.linalg.norm(m)


def _map_residual(m: np.ndarray, src: np.ndarray, dst: np.ndarray) -> float:
    """Max sine of the angle between mapped and target vertices."""
    worst = 0.0
    for p, q in zip(src, dst):
        mp = m @ p
        mp = mp / np.linalg.norm(mp)
        worst = max(worst, float(np.linalg.norm(np.cross(mp, q))))
    return worst


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    residual: float
    shift: int
    reflected: bool
    matrix: np.ndarray | None


def projectively_equivalent(
    p: ProjPolygon,
    q: ProjPolygon,
    try_all_alignments: bool = True,
    shift: int = 0,
    reflected: bool = False,
    tol: float = 1e-8,
) -> EquivalenceResult:
    """Is some cyclic (optionally reflected) relabeling of q a projective
    image of p?  The transform is built from four vertices and judged by
    the worst deviation of the remaining ones."""
    if p.n != q.n:
        return EquivalenceResult(False, math.inf, 0, False, None)
    n = p.n
    candidates = (
        [(s, r) for s in range(n) for r in (False, True)]
        if try_all_alignments
        else [(shift, reflected)]
    )
    best = None
    for s, r in candidates:
        idx = [(s + (n - i if r else i)) % n for i in range(n)]
        target = q.vertices[idx]
        try:
            m = projective_transform_from(p.vertices[:4], target[:4])
        except DegenerateInputError:
            continue
        res = _map_residual(m, p.vertices, target)
        if best is None or res < best[0]:
            best = (res, s, r, m)
    if best is None:
        return EquivalenceResult(False, math.inf, 0, False, None)
    res, s, r, m = best
    return EquivalenceResult(res < tol, res, s, r, m)


def vertex_cross_ratio(poly: ProjPolygon, i: int) -> float:
    """Cross-ratio of the four lines from vertex i to the other four
    vertices of a pentagon, in cyclic order."""
    if poly.n != 5:
        raise ValueError("vertex cross-ratios are defined for pentagons here")
    v = poly.vertices
    lines = [np.cross(v[i % 5], v[(i + k) % 5]) for k in (1, 2, 3, 4)]
    return cross_ratio(*(normalize_triple(l) for l in lines))


def conic_through_points(points) -> Conic:
    """Unique conic through five points in general position."""
    pts = np.array([normalize_triple(np.asarray(p, dtype=float)) for p in points])
    if pts.shape != (5, 3):
        raise DegenerateInputError("need exactly five points")
    rows = np.column_stack(
        [
            pts[:, 0] ** 2,
            pts[:, 0] * pts[:, 1],
            pts[:, 1] ** 2,
            pts[:, 0] * pts[:, 2],
            pts[:, 1] * pts[:, 2],
            pts[:, 2] ** 2,
        ]
    )
    _, s, vt = np.linalg.svd(rows)
    if s[4] < 1e-10 * s[0]:
        raise NoUniqueConicError("five points do not determine a unique conic")
    c = vt[5]
    m = np.array(
        [
            [c[0], c[1] / 2, c[3] / 2],
            [c[1] / 2, c[2], c[4] / 2],
            [c[3] / 2, c[4] / 2, c[5]],
        ]
    )
    return Conic(m)


def conic_tangent_to_lines(lines) -> Conic:
    """Unique conic tangent to five lines: the dual fit, inverted back."""
    dual = conic_through_points(lines)
    return dual.adjugate()


def dual_conic_tangent_to_lines(lines) -> Conic:
    """Tangent-line form of the conic touching the five lines; lines l on
    it satisfy l^T N l = 0 and the tangency point of l is N l."""
    return conic_through_points(lines)


def kasner_inscribed(poly: ProjPolygon) -> ProjPolygon:
    """Pentagon of tangency points of the conic inscribed in the sides.

    Vertex i of the result is the tangency point on side (v_i, v_{i+1}).
    """
    if poly.n != 5:
        raise ValueError("the inscribed-tangency construction is for pentagons here")
    sides = [poly.side(i) for i in range(5)]
    dual = dual_conic_tangent_to_lines(sides)
    touch = [normalize_triple(dual.matrix @ l) for l in sides]
    return ProjPolygon(np.array(touch))


def apply_projective(poly: ProjPolygon, matrix: np.ndarray) -> ProjPolygon:
    out = (np.asarray(matrix, dtype=float) @ poly.vertices.T).T
    return ProjPolygon(_norm_rows(out))
