"""Equitangent walk around a six-fold-symmetric dodecagon.

A chord with independently steerable support lines at its endpoints walks
around a convex polygon: each schedule step moves one endpoint along its
support edge or pivots one support direction through a vertex's normal
cone.  The trace records the two tangent segment lengths to the support
intersection point and their angle margin; over one sixth of the motion
the terminal chord must be the initial chord rotated by pi/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .ovals import InvalidScheduleError

Position = Union[int, tuple[int, float]]  # vertex index, or (edge index, fraction)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: np.ndarray  # (n, 2) counterclockwise

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs at least three planar vertices")
        n = len(v)
        for i in range(n):
            e1 = v[(i + 1) % n] - v[i]
            e2 = v[(i + 2) % n] - v[(i + 1) % n]
            if e1[0] * e2[1] - e1[1] * e2[0] <= 0:
                raise ValueError("polygon must be strictly convex counterclockwise")
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_angle(self, e: int) -> float:
        v = self.vertices
        d = v[(e + 1) % self.n] - v[e % self.n]
        return math.atan2(d[1], d[0])

    def locate(self, pos: Position) -> np.ndarray:
        if isinstance(pos, tuple):
            e, s = pos
            v = self.vertices
            return (1.0 - s) * v[e % self.n] + s * v[(e + 1) % self.n]
        return self.vertices[pos % self.n]

    def supports_at(self, point: np.ndarray, angle: float, tol: float = 1e-9) -> bool:
        """Is the directed line through the point at this angle a support
        line with the polygon on its left?"""
        d = np.array([math.cos(angle), math.sin(angle)])
        rel = self.vertices - point
        cross = d[0] * rel[:, 1] - d[1] * rel[:, 0]
        return bool(np.min(cross) >= -tol)


def dodecagon_fixture(radius_ratio: float = 0.93, skew: float = 0.13) -> ConvexPolygon:
    """Dodecagon with two alternating vertex radii and a rotational skew.

    The skew shifts every short-radius vertex by a fixed angle, keeping the
    six-fold rotational symmetry while breaking the reflections; mirror
    symmetry would force the chord margin to zero at the symmetric
    instants of the walk.
    """
    pts = []
    for j in range(12):
        r = 1.0 if j % 2 == 0 else radius_ratio
        ang = 2.0 * math.pi * j / 12.0 + (skew if j % 2 == 1 else 0.0)
        pts.append([r * math.cos(ang), r * math.sin(ang)])
    return ConvexPolygon(np.array(pts))


@dataclass(frozen=True)
class ChordState:
    """Chord endpoints plus support directions, all polygon-referenced."""

    pos1: Position
    dir1: int  # edge index whose direction supports the polygon at pos1
    pos2: Position
    dir2: int


def sixth_turn_schedule() -> list[ChordState]:
    """The eight-step schedule driving the chord through one sixth of a
    revolution: endpoints advance 1 -> 2 -> 3 and 5 -> 6 -> 7 while the
    support directions follow, edge by edge (0-based vertex labels)."""
    return [
        ChordState(0, 0, 4, 4),
        ChordState(1, 0, 4, 4),
        ChordState(1, 1, 4, 4),
        ChordState(2, 1, 4, 4),
        ChordState(2, 2, 4, 4),
        ChordState(2, 2, 5, 4),
        ChordState(2, 2, 5, 5),
        ChordState(2, 2, 6, 5),
        ChordState(2, 2, 6, 6),
    ]


@dataclass(frozen=True)
class TraceSample:
    step: int
    fraction: float
    endpoint_a: np.ndarray
    endpoint_b: np.ndarray
    support_point: np.ndarray  # intersection C of the two support lines
    length_a: float  # |CA|
    length_b: float  # |CB|
    margin: float  # angle(ABC) - angle(BAC)
    supports_ok: bool


@dataclass(frozen=True)
class EquitangentTrace:
    samples: tuple[TraceSample, ...]
    min_margin: float
    closure_residual: float
    all_supports_ok: bool


def _support_angle(poly: ConvexPolygon, state_dir: int) -> float:
    return poly.edge_angle(state_dir)


def _interp_state(poly: ConvexPolygon, s0: ChordState, s1: ChordState, frac: float):
    """Geometry of the single-element linear transition at this fraction:
    returns (P1, angle1, P2, angle2)."""

    def endpoint(p0: Position, p1: Position, edge: int):
        if p0 == p1:
            return poly.locate(p0)
        if isinstance(p0, int) and isinstance(p1, int):
            # slide along the shared support edge
            if {p0 % poly.n, p1 % poly.n} != {edge % poly.n, (edge + 1) % poly.n}:
                raise ValueError("endpoint slide must follow its support edge")
            a, b = poly.locate(p0), poly.locate(p1)
            return (1.0 - frac) * a + frac * b
        raise ValueError("endpoint transitions must run vertex to vertex")

    def direction(d0: int, d1: int):
        a0 = _support_angle(poly, d0)
        a1 = _support_angle(poly, d1)
        if d1 != d0:
            delta = (a1 - a0) % (2.0 * math.pi)
            return a0 + frac * delta
        return a0

    p1 = endpoint(s0.pos1, s1.pos1, s0.dir1)
    p2 = endpoint(s0.pos2, s1.pos2, s0.dir2)
    a1 = direction(s0.dir1, s1.dir1)
    a2 = direction(s0.dir2, s1.dir2)
    return p1, a1, p2, a2


def _changed_fields(s0: ChordState, s1: ChordState) -> list[str]:
    return [
        name
        for name in ("pos1", "dir1", "pos2", "dir2")
        if getattr(s0, name) != getattr(s1, name)
    ]


def _triangle_margin(a: np.ndarray, b: np.ndarray, c: np.ndarray):
    """(angle at b) - (angle at a) in triangle abc, plus |ca| and |cb|."""

    def angle_at(p, q, r) -> float:
        u = q - p
        v = r - p
        cosang = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
        return math.acos(float(np.clip(cosang, -1.0, 1.0)))

    return (
        angle_at(b, a, c) - angle_at(a, b, c),
        float(np.linalg.norm(c - a)),
        float(np.linalg.norm(c - b)),
    )


def equitangent_replay(
    poly: ConvexPolygon,
    schedule: list[ChordState] | None = None,
    samples_per_step: int = 64,
    tol: float = 1e-9,
) -> EquitangentTrace:
    """Replay a chord schedule, validating support conditions throughout.

    Every sample checks that both support lines actually support the
    polygon at their endpoints; any violation raises InvalidScheduleError
    naming the step.  The trace records tangent-segment lengths and the
    angle margin, and the closure residual against a pi/3 rotation of the
    initial chord.
    """
    if schedule is None:
        schedule = sixth_turn_schedule()
    if len(schedule) < 2:
        raise ValueError("schedule needs at least two states")

    samples = []
    for step in range(len(schedule) - 1):
        s0, s1 = schedule[step], schedule[step + 1]
        changed = _changed_fields(s0, s1)
        if len(changed) != 1:
            raise InvalidScheduleError(
                f"exactly one state element must change, got {changed}", step
            )
        fracs = np.linspace(0.0, 1.0, samples_per_step)
        for frac in fracs:
            p1, a1, p2, a2 = _interp_state(poly, s0, s1, float(frac))
            ok = poly.supports_at(p1, a1, tol) and poly.supports_at(p2, a2, tol)
            if not ok:
                raise InvalidScheduleError("support condition violated", step)
            d1 = np.array([math.cos(a1), math.sin(a1)])
            d2 = np.array([math.cos(a2), math.sin(a2)])
            denom = d1[0] * d2[1] - d1[1] * d2[0]
            if abs(denom) < 1e-12:
                raise InvalidScheduleError("support lines are parallel", step)
            rel = p2 - p1
            t = (rel[0] * d2[1] - rel[1] * d2[0]) / denom
            c = p1 + t * d1
            margin, len_a, len_b = _triangle_margin(p1, p2, c)
            samples.append(
                TraceSample(
                    step=step,
                    fraction=float(frac),
                    endpoint_a=p1,
                    endpoint_b=p2,
                    support_point=c,
                    length_a=len_a,
                    length_b=len_b,
                    margin=margin,
                    supports_ok=ok,
                )
            )

    rot = math.pi / 3.0
    cr, sr = math.cos(rot), math.sin(rot)
    rot_mat = np.array([[cr, -sr], [sr, cr]])
    first0 = poly.locate(schedule[0].pos1)
    second0 = poly.locate(schedule[0].pos2)
    first1 = poly.locate(schedule[-1].pos1)
    second1 = poly.locate(schedule[-1].pos2)
    closure = max(
        float(np.linalg.norm(rot_mat @ first0 - first1)),
        float(np.linalg.norm(rot_mat @ second0 - second1)),
    )
    angle_closure = max(
        abs(_angdiff(poly.edge_angle(schedule[0].dir1) + rot, poly.edge_angle(schedule[-1].dir1))),
        abs(_angdiff(poly.edge_angle(schedule[0].dir2) + rot, poly.edge_angle(schedule[-1].dir2))),
    )
    closure = max(closure, angle_closure)

    return EquitangentTrace(
        samples=tuple(samples),
        min_margin=min(s.margin for s in samples),
        closure_residual=closure,
        all_supports_ok=True,
    )


def _angdiff(a: float, b: float) -> float:
    return (a - b + math.pi) % (2.0 * math.pi) - math.pi
