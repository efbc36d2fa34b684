"""Balancing a square table on an uneven floor, and the cone-loop angle.

The table solver pins the square's center above a fixed vertical axis and
rotates about it; for each rotation angle the tilt and height are solved
so one diagonal pair of legs sits on the floor while the other pair sits
at a common signed height g.  Relabeling the legs shows g flips sign over
a quarter turn, so a zero of g exists and bisection finds it.  The cone
functions unfold the cone to a sector of angle 2 pi sin(alpha); a loop
holds iff that sector is narrower than a half plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

CRITICAL_HALF_ANGLE_OVER_PI = Fraction(1, 6)  # slack-free borderline, as a multiple of pi
_SLIP_TOL = 1e-12


class SolverFailureError(RuntimeError):
    """The inner tilt/height solve did not converge (floor too wild)."""


class AssumptionViolationError(RuntimeError):
    """No sign change of the balance function was detected."""


class NoTightLoopError(ValueError):
    """The loop slides off: the unfolded sector spans a half plane."""


@dataclass(frozen=True)
class Floor:
    """Floor as a single-valued height field z = f(x, y)."""

    height: Callable[[float, float], float]
    name: str = "custom"
    gradient_bound: float | None = None

    def __call__(self, x: float, y: float) -> float:
        return float(self.height(x, y))


def flat_floor() -> Floor:
    return Floor(height=lambda x, y: 0.0, name="flat", gradient_bound=0.0)


def saddle_floor(coefficient: float = 0.05) -> Floor:
    return Floor(height=lambda x, y: coefficient * x * y, name="saddle")


def sine_floor(amplitude: float = 0.02) -> Floor:
    return Floor(height=lambda x, y: amplitude * math.sin(x) * math.sin(y), name="sine")


def grid_floor_from_text(text: str) -> Floor:
    """Parse the plain-text grid format: a header line
    ``nx ny xmin xmax ymin ymax`` followed by nx*ny row-major heights,
    smoothly interpolated with a bicubic spline."""
    from scipy.interpolate import RectBivariateSpline

    tokens = text.split()
    if len(tokens) < 6:
        raise ValueError("grid floor needs a header of nx ny xmin xmax ymin ymax")
    nx, ny = int(tokens[0]), int(tokens[1])
    xmin, xmax, ymin, ymax = (float(t) for t in tokens[2:6])
    values = [float(t) for t in tokens[6:]]
    if len(values) != nx * ny:
        raise ValueError(f"expected {nx * ny} heights, found {len(values)}")
    z = np.array(values).reshape(nx, ny)
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    kx = min(3, nx - 1)
    ky = min(3, ny - 1)
    spline = RectBivariateSpline(xs, ys, z, kx=kx, ky=ky)
    return Floor(height=lambda x, y: float(spline(x, y)[0, 0]), name="grid")


def grid_floor_from_file(path) -> Floor:
    with open(path, "r", encoding="utf-8") as fh:
        return grid_floor_from_text(fh.read())


@dataclass(frozen=True)
class TablePlacement:
    rotation: float  # angle of the balanced square about the vertical axis
    tilt: tuple[float, float]
    height: float
    leg_positions: np.ndarray  # 4 x 3, world coordinates, order A B C D
    leg_residuals: np.ndarray  # signed vertical distances to the floor
    any_rotation_balances: bool  # flat-floor degeneracy


def _leg_points(theta: float, tilt: tuple[float, float], height: float, side: float, center) -> np.ndarray:
    """World positions of the four leg tips A, B, C, D.

    Body frame puts the diagonals on the axes (half-diagonal r); the body
    is rotated by theta about the vertical, then tilted by small rotations
    about x and y, then lifted to the given height over the center.
    """
    r = side / math.sqrt(2.0)
    body = np.array([[r, 0, 0], [0, r, 0], [-r, 0, 0], [0, -r, 0]], dtype=float)
    ct, st = math.cos(theta), math.sin(theta)
    rz = np.array([[ct, -st, 0], [st, ct, 0], [0, 0, 1]])
    a, b = tilt
    ca, sa = math.cos(a), math.sin(a)
    cb, sb = math.cos(b), math.sin(b)
    rx = np.array([[1, 0, 0], [0, ca, -sa], [0, sa, ca]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    pts = body @ rz.T @ ry.T @ rx.T
    pts[:, 0] += center[0]
    pts[:, 1] += center[1]
    pts[:, 2] += height
    return pts


def _leg_distances(floor: Floor, pts: np.ndarray) -> np.ndarray:
    return np.array([p[2] - floor(p[0], p[1]) for p in pts])


def _solve_tilt_height(
    floor: Floor,
    theta: float,
    side: float,
    center,
    guess: np.ndarray,
    tol: float = 1e-13,
    max_iter: int = 60,
) -> np.ndarray:
    """Damped Newton for (tilt_a, tilt_b, height) with legs A, C on the
    floor and legs B, D at equal signed distance."""

    def residual(u: np.ndarray) -> np.ndarray:
        d = _leg_distances(floor, _leg_points(theta, (u[0], u[1]), u[2], side, center))
        return np.array([d[0], d[2], d[1] - d[3]])

    u = guess.astype(float).copy()
    f = residual(u)
    for _ in range(max_iter):
        if np.max(np.abs(f)) < tol:
            return u
        jac = np.empty((3, 3))
        h = 1e-7
        for j in range(3):
            du = np.zeros(3)
            du[j] = h
            jac[:, j] = (residual(u + du) - residual(u - du)) / (2 * h)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise SolverFailureError("singular Jacobian in tilt/height solve") from exc
        lam = 1.0
        for _ in range(30):
            trial = u + lam * step
            ft = residual(trial)
            if np.max(np.abs(ft)) < np.max(np.abs(f)):
                u, f = trial, ft
                break
            lam *= 0.5
        else:
            raise SolverFailureError("Newton line search stalled (floor too wild?)")
    if np.max(np.abs(f)) < tol * 100:
        return u
    raise SolverFailureError("tilt/height solve did not converge")


def balance_square_table(
    floor: Floor,
    side: float = 1.0,
    center: tuple[float, float] = (0.0, 0.0),
    tol: float = 1e-12,
) -> TablePlacement:
    """Find a rotation at which all four legs touch the floor.

    g(theta) = common signed height of legs B, D once A, C are constrained
    to the floor.  Relabeling under a quarter turn gives g(theta + pi/2) =
    -g(theta), so a sign change is bracketed on [0, pi/2] and bisected.
    """
    if side <= 0:
        raise ValueError("side must be positive")

    guesses: dict[float, np.ndarray] = {}

    def warm_guess(theta: float) -> np.ndarray:
        near = min(guesses, key=lambda t: abs(t - theta), default=None)
        if near is None:
            return np.array([0.0, 0.0, floor(*center)])
        return guesses[near]

    def g(theta: float) -> float:
        u = _solve_tilt_height(floor, theta, side, center, warm_guess(theta))
        guesses[theta] = u
        d = _leg_distances(floor, _leg_points(theta, (u[0], u[1]), u[2], side, center))
        return float(d[1])

    def placement_at(theta: float, degenerate: bool) -> TablePlacement:
        u = _solve_tilt_height(floor, theta, side, center, warm_guess(theta))
        pts = _leg_points(theta, (u[0], u[1]), u[2], side, center)
        return TablePlacement(
            rotation=theta,
            tilt=(float(u[0]), float(u[1])),
            height=float(u[2]),
            leg_positions=pts,
            leg_residuals=_leg_distances(floor, pts),
            any_rotation_balances=degenerate,
        )

    thetas = np.linspace(0.0, math.pi / 2, 10)
    values = [g(t) for t in thetas]
    scale = max(1.0, side)
    if all(abs(v) < tol * scale for v in values):
        return placement_at(0.0, degenerate=True)

    root_tol = 1e-10 * scale  # a sample this small already balances all four legs
    bracket = None
    for t0, t1, v0, v1 in zip(thetas, thetas[1:], values, values[1:]):
        if abs(v0) < root_tol:
            return placement_at(float(t0), degenerate=False)
        if (v0 < 0) != (v1 < 0):
            bracket = (float(t0), float(t1), v0)
            break
    if bracket is None:
        if abs(values[-1]) < root_tol:
            return placement_at(float(thetas[-1]), degenerate=False)
        raise AssumptionViolationError(
            "balance function has no sign change over a quarter turn; "
            "the uniqueness hypothesis on the floor may fail"
        )

    lo, hi, glo = bracket
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            lo = hi = mid
            break
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return placement_at(0.5 * (lo + hi), degenerate=False)


@dataclass(frozen=True)
class Cone:
    """Right circular cone: half-angle at the apex, and the slant distance
    from the apex to the knot of the loop."""

    half_angle: float
    knot_slant: float = 1.0

    def __post_init__(self):
        if not 0 < self.half_angle < math.pi / 2:
            raise ValueError("half-angle must lie strictly inside (0, pi/2)")
        if self.knot_slant <= 0:
            raise ValueError("knot slant distance must be positive")


def cone_sector_angle(cone: Cone) -> float:
    """Angle of the flat sector obtained by unrolling the cone."""
    return 2.0 * math.pi * math.sin(cone.half_angle)


def loop_slips(cone: Cone) -> bool:
    """A taut loop slides off iff the unrolled sector covers a half plane
    (sector angle >= pi); the borderline counts as slipping."""
    return cone_sector_angle(cone) >= math.pi - _SLIP_TOL


def critical_half_angle() -> float:
    """Borderline half-angle, exactly pi/6 (sin = 1/2 makes the sector
    angle exactly pi)."""
    return math.pi * float(CRITICAL_HALF_ANGLE_OVER_PI)


def tight_loop_length(cone: Cone) -> float:
    """Length of the taut loop through the knot: the chord between the two
    copies of the knot on the unrolled sector's boundary,
    2 rho sin(pi sin alpha)."""
    half_sector = math.pi * math.sin(cone.half_angle)
    if half_sector > math.pi / 2 + _SLIP_TOL:
        raise NoTightLoopError("loop slides off; no tight position exists")
    return 2.0 * cone.knot_slant * math.sin(min(half_sector, math.pi / 2))
