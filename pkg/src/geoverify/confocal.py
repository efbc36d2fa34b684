"""Confocal conics: elliptic coordinates, equal-diagonal quadrilaterals,
tangent quadrilaterals with inscribed circles, and billiard caustics.

The family x^2/(a^2+u) + y^2/(b^2+u) = 1 shares foci (+-c, 0) with
c^2 = a^2 - b^2: members with u > -b^2 are ellipses, members with
-a^2 < u < -b^2 hyperbolas, and exactly one of each passes through a
generic point, giving its elliptic coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Conic, DegenerateInputError


class DegenerateCoordinatesError(ValueError):
    """Point lies on the focal segment where the coordinate net collapses."""


class NoTangentError(ValueError):
    """No real tangent lines exist (point inside the conic)."""


class DegenerateConfigurationError(ValueError):
    """Tangent quadrilateral construction degenerates for these inputs."""


class GrazingError(ValueError):
    """Billiard direction is tangent to the table."""


@dataclass(frozen=True)
class ConfocalFamily:
    """Reference semi-axes a > b > 0; member u is the conic
    x^2/(a^2+u) + y^2/(b^2+u) = 1."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a > self.b > 0:
            raise ValueError("need a > b > 0")

    @property
    def focal_distance(self) -> float:
        return math.sqrt(self.a**2 - self.b**2)

    @property
    def scale(self) -> float:
        return self.a + self.b

    def member_kind(self, u: float) -> str:
        if u > -(self.b**2):
            return "ellipse"
        if -(self.a**2) < u < -(self.b**2):
            return "hyperbola"
        raise ValueError(f"parameter {u} is outside the family range")

    def member_conic(self, u: float) -> Conic:
        self.member_kind(u)
        return Conic(np.diag([1.0 / (self.a**2 + u), 1.0 / (self.b**2 + u), -1.0]))

    def dual_member_matrix(self, u: float) -> np.ndarray:
        """Dual (tangent-line) form: lines l with l^T D l = 0 touch the member."""
        self.member_kind(u)
        return np.diag([self.a**2 + u, self.b**2 + u, -1.0])

    def member_residual(self, u: float, point) -> float:
        x, y = float(point[0]), float(point[1])
        return x**2 / (self.a**2 + u) + y**2 / (self.b**2 + u) - 1.0

    def ellipse_point(self, u: float, t: float) -> np.ndarray:
        if self.member_kind(u) != "ellipse":
            raise ValueError("parametrization is for ellipse members")
        return np.array(
            [math.sqrt(self.a**2 + u) * math.cos(t), math.sqrt(self.b**2 + u) * math.sin(t)]
        )


@dataclass(frozen=True)
class EllipticCoords:
    """Confocal members through a point, with the four member-equation
    denominators kept in cancellation-free form (a^2 + u collapses to zero
    near the minor axis, so recomputing it from u loses digits)."""

    lambda_e: float  # ellipse member through the point
    lambda_h: float  # hyperbola member through the point
    e_denominators: tuple[float, float]  # (a^2 + lambda_e, b^2 + lambda_e)
    h_denominators: tuple[float, float]  # (a^2 + lambda_h, b^2 + lambda_h)

    def residuals(self, point) -> tuple[float, float]:
        x, y = float(point[0]), float(point[1])
        ea, eb = self.e_denominators
        ha, hb = self.h_denominators
        c2 = ea - eb  # a^2 - b^2
        # on the axes one hyperbola denominator vanishes together with the
        # matching coordinate; the root-product identities give the ratio
        term_xh = x * x / ha if ha != 0 else ea / c2
        term_yh = y * y / hb if hb != 0 else -eb / c2
        return (
            x * x / ea + y * y / eb - 1.0,
            term_xh + term_yh - 1.0,
        )


def elliptic_coords(family: ConfocalFamily, point) -> EllipticCoords:
    """The two confocal members through a point.

    Shifting the defining quadratic puts each root in the variable that
    stays well-conditioned: mu = a^2 + u solves
    mu^2 - (c^2 + x^2 + y^2) mu + x^2 c^2 = 0 and nu = b^2 + u solves
    nu^2 + (c^2 - x^2 - y^2) nu - y^2 c^2 = 0, with the small root taken
    from the product formula.  Points on the closed focal segment are
    rejected.
    """
    x, y = float(point[0]), float(point[1])
    a2, b2 = family.a**2, family.b**2
    c2 = a2 - b2
    tol_len = 1e-12 * family.scale
    if abs(y) <= tol_len and abs(x) <= family.focal_distance + tol_len:
        raise DegenerateCoordinatesError("point on the focal segment")

    x2, y2 = x * x, y * y
    # mu roots: mu_big = a^2 + lambda_e, mu_small = a^2 + lambda_h
    s_mu = c2 + x2 + y2
    disc_mu = max(s_mu * s_mu - 4.0 * x2 * c2, 0.0)
    mu_big = 0.5 * (s_mu + math.sqrt(disc_mu))
    mu_small = (x2 * c2) / mu_big if mu_big > 0 else 0.0
    # nu roots: nu_pos = b^2 + lambda_e > 0 > nu_neg = b^2 + lambda_h
    s_nu = c2 - x2 - y2
    disc_nu = s_nu * s_nu + 4.0 * y2 * c2
    nu_pos = 0.5 * (-s_nu + math.sqrt(disc_nu))
    nu_neg = -(y2 * c2) / nu_pos if nu_pos > 0 else 0.0

    return EllipticCoords(
        lambda_e=nu_pos - b2,
        lambda_h=mu_small - a2,
        e_denominators=(mu_big, nu_pos),
        h_denominators=(mu_small, nu_neg),
    )


_QUADRANT_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}


def confocal_vertex(family: ConfocalFamily, lam_e: float, lam_h: float, quadrant: int = 1) -> np.ndarray:
    """Intersection point of an ellipse member and a hyperbola member."""
    a2, b2 = family.a**2, family.b**2
    if not lam_e > -b2:
        raise ValueError("ellipse parameter out of range")
    if not -a2 < lam_h < -b2:
        raise ValueError("hyperbola parameter out of range")
    sx, sy = _QUADRANT_SIGNS[quadrant]
    c2 = a2 - b2
    x = sx * math.sqrt((a2 + lam_e) * (a2 + lam_h) / c2)
    y = sy * math.sqrt(-(b2 + lam_e) * (b2 + lam_h) / c2)
    return np.array([x, y])


@dataclass(frozen=True)
class IvoryQuadrilateral:
    vertices: dict  # keyed by (ellipse index, hyperbola index), values 2-vectors
    diagonal_lengths: tuple[float, float]

    @property
    def diagonal_gap(self) -> float:
        return abs(self.diagonal_lengths[0] - self.diagonal_lengths[1])


def ivory_quadrilateral(
    family: ConfocalFamily,
    lam_e1: float,
    lam_e2: float,
    lam_h1: float,
    lam_h2: float,
    quadrant: int = 1,
) -> IvoryQuadrilateral:
    """Curvilinear quadrilateral cut out by two ellipse and two hyperbola
    members; its two diagonals have equal length."""
    if not lam_e1 < lam_e2:
        raise ValueError("need lam_e1 < lam_e2")
    if not lam_h1 < lam_h2:
        raise ValueError("need lam_h1 < lam_h2")
    vertices = {
        (i, j): confocal_vertex(family, le, lh, quadrant)
        for i, le in enumerate((lam_e1, lam_e2))
        for j, lh in enumerate((lam_h1, lam_h2))
    }
    d1 = float(np.linalg.norm(vertices[(0, 0)] - vertices[(1, 1)]))
    d2 = float(np.linalg.norm(vertices[(0, 1)] - vertices[(1, 0)]))
    return IvoryQuadrilateral(vertices=vertices, diagonal_lengths=(d1, d2))


def _homogeneous_point(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape == (2,):
        return np.array([p[0], p[1], 1.0])
    if p.shape == (3,):
        return p
    raise ValueError("expected a point")


def tangents_from_point(family: ConfocalFamily, u: float, point) -> list[np.ndarray]:
    """Tangent lines from a point to member u, via the dual conic.

    Lines through the point form a pencil; restricting the dual form to it
    gives a binary quadratic whose roots are the tangents.  Interior
    points have none and points on the conic exactly one.
    """
    p = _homogeneous_point(point)
    dual = family.dual_member_matrix(u)

    basis = [np.cross(p, e) for e in np.eye(3)]
    basis = sorted(basis, key=lambda v: -np.linalg.norm(v))[:2]
    l1, l2 = (v / np.linalg.norm(v) for v in basis)
    q11 = float(l1 @ dual @ l1)
    q12 = float(l1 @ dual @ l2)
    q22 = float(l2 @ dual @ l2)
    disc = q12 * q12 - q11 * q22
    scale = max(abs(q11), abs(q12), abs(q22), 1e-300)
    if disc < -1e-12 * scale * scale:
        raise NoTangentError("point is inside the conic; no real tangents")
    disc = max(disc, 0.0)
    root = math.sqrt(disc)
    lines = []
    if abs(q11) >= abs(q22):
        for sgn in (1.0, -1.0):
            lines.append((-q12 + sgn * root) * l1 + q11 * l2)
    else:
        for sgn in (1.0, -1.0):
            lines.append(q22 * l1 + (-q12 + sgn * root) * l2)
    out = []
    for line in lines:
        n = np.linalg.norm(line)
        if n < 1e-14:
            continue
        line = line / n
        if all(np.linalg.norm(np.cross(line, prev)) > 1e-9 for prev in out):
            out.append(line)
    if not out:
        raise DegenerateConfigurationError("tangent pencil degenerated")
    return out


def tangency_point(family: ConfocalFamily, u: float, line) -> np.ndarray:
    """Tangency point of a tangent line with member u (affine)."""
    touch = family.dual_member_matrix(u) @ np.asarray(line, dtype=float)
    if abs(touch[2]) < 1e-14:
        raise DegenerateConfigurationError("tangency point at infinity")
    return touch[:2] / touch[2]


@dataclass(frozen=True)
class ChaslesReyeReport:
    vertices: dict  # A, B, C, D affine points
    hyperbola_parameters: tuple[float, float]  # lambda_h at C and at D
    hyperbola_gap: float
    pitot_gap: float  # | |AD| + |BC| - |AC| - |BD| |
    incircle_center: np.ndarray
    incircle_radius: float
    incircle_deviation: float  # max spread of the four line distances


def chasles_reye(
    family: ConfocalFamily,
    lam_outer: float,
    lam_inner: float,
    t_a: float,
    t_b: float,
) -> ChaslesReyeReport:
    """Tangent quadrilateral of two points on an outer confocal ellipse.

    From A and B on the outer member, draw both tangents to the inner
    member; the four lines close into a quadrilateral ACBD.  The report
    verifies that C and D lie on one confocal hyperbola, that the side
    lengths satisfy the circumscription identity |AD|+|BC| = |AC|+|BD|,
    and exhibits the inscribed circle.
    """
    if not (lam_outer > lam_inner > -(family.b**2)):
        raise ValueError("need ellipse members with lam_outer > lam_inner")
    A = family.ellipse_point(lam_outer, t_a)
    B = family.ellipse_point(lam_outer, t_b)
    if np.linalg.norm(A - B) < 1e-9 * family.scale:
        raise DegenerateInputError("points on the outer ellipse coincide")

    lines_a = tangents_from_point(family, lam_inner, A)
    lines_b = tangents_from_point(family, lam_inner, B)
    if len(lines_a) != 2 or len(lines_b) != 2:
        raise DegenerateConfigurationError("expected two tangents from each point")

    def touch_angle(line) -> float:
        p = tangency_point(family, lam_inner, line)
        return math.atan2(
            p[1] / math.sqrt(family.b**2 + lam_inner),
            p[0] / math.sqrt(family.a**2 + lam_inner),
        )

    def facing_angle(point) -> float:
        return math.atan2(
            point[1] / math.sqrt(family.b**2 + lam_inner),
            point[0] / math.sqrt(family.a**2 + lam_inner),
        )

    def oriented_pair(lines, point):
        """(near-start, near-end) tangents: the arc from s to t running
        counterclockwise is the one facing the exterior point."""
        (psi1, l1), (psi2, l2) = ((touch_angle(l), l) for l in lines)
        phi = facing_angle(point)
        span = (psi2 - psi1) % (2 * math.pi)
        if (phi - psi1) % (2 * math.pi) < span:
            return l1, l2  # s-line, t-line
        return l2, l1

    sa, ta = oriented_pair(lines_a, A)
    sb, tb = oriented_pair(lines_b, B)

    def meet(l1, l2) -> np.ndarray:
        p = np.cross(l1, l2)
        if abs(p[2]) < 1e-12 * np.linalg.norm(p[:2]):
            raise DegenerateConfigurationError("tangent lines are parallel")
        return p[:2] / p[2]

    # the quadrilateral of the figure: C joins A's far tangent to B's near
    # one, D the other pairing, so ACBD closes with A and B opposite
    C = meet(ta, sb)
    D = meet(sa, tb)
    for lines, want in ((lines_a, A), (lines_b, B)):
        if np.linalg.norm(meet(lines[0], lines[1]) - want) > 1e-7 * family.scale:
            raise DegenerateConfigurationError("tangent pairing lost the base points")

    lam_h_c = elliptic_coords(family, C).lambda_h
    lam_h_d = elliptic_coords(family, D).lambda_h

    def dist(p, q) -> float:
        return float(np.linalg.norm(np.asarray(p) - np.asarray(q)))

    pitot_gap = abs(dist(A, D) + dist(B, C) - (dist(A, C) + dist(B, D)))

    center, radius, deviation = _incircle_of_lines(
        (sa, ta, sb, tb), polygon=(A, C, B, D)
    )

    return ChaslesReyeReport(
        vertices={"A": A, "B": B, "C": C, "D": D},
        hyperbola_parameters=(lam_h_c, lam_h_d),
        hyperbola_gap=abs(lam_h_c - lam_h_d),
        pitot_gap=pitot_gap,
        incircle_center=center,
        incircle_radius=radius,
        incircle_deviation=deviation,
    )


def _point_in_polygon(point, polygon) -> bool:
    x, y = float(point[0]), float(point[1])
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x_cross > x:
                inside = not inside
    return inside


def _incircle_of_lines(lines, polygon):
    """Point equidistant from four lines, inside the given polygon.

    The inscribed circle sits beyond some tangency points, so the side of
    each line it lies on is not known a priori; all sign patterns are
    tried and the interior candidate with the smallest distance spread
    wins.
    """
    unit = []
    for line in lines:
        line = np.asarray(line, dtype=float)
        unit.append(line / np.linalg.norm(line[:2]))

    best = None
    for bits in range(8):  # global sign is irrelevant; fix the first +
        signs = (1.0, *(1.0 if bits & (1 << k) else -1.0 for k in range(3)))
        ls = [s * l for s, l in zip(signs, unit)]
        rows = np.array([[l1[0] - l2[0], l1[1] - l2[1]] for l1, l2 in zip(ls, ls[1:])])
        rhs = np.array([l2[2] - l1[2] for l1, l2 in zip(ls, ls[1:])])
        center, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
        dists = [l[0] * center[0] + l[1] * center[1] + l[2] for l in ls]
        deviation = float(np.max(dists) - np.min(dists))
        interior = _point_in_polygon(center, polygon)
        key = (not interior, deviation)
        if best is None or key < best[0]:
            best = (key, center, abs(float(np.mean(dists))), deviation)
    _, center, radius, deviation = best
    return center, radius, deviation


def chasles_corpus(
    family: ConfocalFamily,
    n: int,
    seed: int = 0,
    max_vertex_distance: float = 25.0,
):
    """Seeded sample of figure-like tangent-quadrilateral configurations.

    Keeps the two base points moderately separated and rejects draws where
    a tangent pair is close to parallel (a cross vertex escaping toward
    infinity), which is the degenerate boundary of the construction.
    Yields (lam_outer, lam_inner, t_a, t_b, report) tuples.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        t_a = float(rng.uniform(0, 2 * math.pi))
        t_b = t_a + float(rng.uniform(0.35, 0.85))
        lam_outer = float(rng.uniform(0.5, 3.0))
        lam_inner = float(rng.uniform(-0.5, lam_outer - 0.5))
        try:
            report = chasles_reye(family, lam_outer, lam_inner, t_a, t_b)
        except (DegenerateConfigurationError, DegenerateCoordinatesError, NoTangentError):
            continue
        spread = max(
            float(np.linalg.norm(report.vertices["C"])),
            float(np.linalg.norm(report.vertices["D"])),
        )
        if spread > max_vertex_distance * family.scale:
            continue
        out.append((lam_outer, lam_inner, t_a, t_b, report))
    return out


def billiard_step(family: ConfocalFamily, point, direction):
    """One bounce in the reference ellipse (member 0).

    Returns the far intersection of the ray with the ellipse and the
    direction mirrored in the tangent there.
    """
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    a2, b2 = family.a**2, family.b**2
    if abs(family.member_residual(0.0, p)) > 1e-7:
        raise ValueError("point is not on the reference ellipse")

    qa = d[0] ** 2 / a2 + d[1] ** 2 / b2
    qb = 2.0 * (p[0] * d[0] / a2 + p[1] * d[1] / b2)
    s = -qb / qa
    if abs(s) < 1e-12 * family.scale:
        raise GrazingError("direction is tangent to the ellipse")
    nxt = p + s * d
    normal = np.array([nxt[0] / a2, nxt[1] / b2])
    normal = normal / np.linalg.norm(normal)
    reflected = d - 2.0 * float(np.dot(d, normal)) * normal
    return nxt, reflected / np.linalg.norm(reflected)


def chord_line(p, q) -> np.ndarray:
    """Homogeneous line through two affine points."""
    return np.cross(_homogeneous_point(p), _homogeneous_point(q))


def caustic_parameter(family: ConfocalFamily, line) -> float:
    """Family member tangent to the line: the dual pencil is linear in the
    parameter, so u = (l3^2 - a^2 l1^2 - b^2 l2^2) / (l1^2 + l2^2)."""
    l = np.asarray(line, dtype=float)
    den = l[0] ** 2 + l[1] ** 2
    if den == 0.0:
        raise ValueError("line at infinity has no caustic parameter")
    return float((l[2] ** 2 - family.a**2 * l[0] ** 2 - family.b**2 * l[1] ** 2) / den)


def billiard_orbit(family: ConfocalFamily, t0: float, direction, n_bounces: int):
    """Iterate the billiard map; returns points and per-chord caustic
    parameters (which stay constant along the orbit)."""
    p = family.ellipse_point(0.0, t0)
    d = np.asarray(direction, dtype=float)
    points = [p]
    caustics = []
    for _ in range(n_bounces):
        nxt, d = billiard_step(family, p, d)
        caustics.append(caustic_parameter(family, chord_line(p, nxt)))
        p = nxt
        points.append(p)
    return points, caustics
