"""Smooth convex curves via support functions, and the piecewise-linear
equitangent walk around a symmetric dodecagon.

A truncated harmonic support function h(theta) makes every construction
here closed-form: boundary point p = h u + h' u_perp, curvature radius
h + h'', arclength by termwise integration.  Translation harmonics (k=1)
are excluded, so ovals are centered; strict convexity h + h'' > 0 is
enforced on a dense grid at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DegenerateInputError

TWO_PI = 2.0 * math.pi


class NotNestedError(ValueError):
    """Inner oval is not strictly inside the outer one."""


class ExteriorPointError(ValueError):
    """Operation needs a point strictly outside the oval."""


class SlackTooSmallError(ValueError):
    """String slack too small for the radial string-curve parametrization."""


class InvalidScheduleError(ValueError):
    """Equitangent schedule violated a support condition."""

    def __init__(self, message: str, step: int):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class SupportOval:
    """Strictly convex centered oval with support function
    h(theta) = c0 + sum_{k>=2} a_k cos(k theta) + b_k sin(k theta)."""

    c0: float
    harmonics: tuple[tuple[int, float, float], ...] = ()  # (k, a_k, b_k)

    def __post_init__(self):
        for k, _, _ in self.harmonics:
            if k < 2:
                raise ValueError("harmonics start at k = 2 (k = 1 would translate)")
        ks = np.array([float(k) for k, _, _ in self.harmonics])
        object.__setattr__(self, "_ks", ks)
        object.__setattr__(self, "_as", np.array([a for _, a, _ in self.harmonics]))
        object.__setattr__(self, "_bs", np.array([b for _, _, b in self.harmonics]))
        grid = np.linspace(0.0, TWO_PI, 2048, endpoint=False)
        if np.min(self.curvature_radius(grid)) <= 0:
            raise DegenerateInputError("support function is not strictly convex")

    # -- harmonic evaluation (vectorized over theta) ---------------------------
    def _trig(self, theta):
        kt = np.multiply.outer(np.asarray(theta, dtype=float), self._ks)
        return np.cos(kt), np.sin(kt)

    def h(self, theta):
        if not self.harmonics:
            return self.c0 + np.zeros_like(np.asarray(theta, dtype=float))
        cos_kt, sin_kt = self._trig(theta)
        return self.c0 + cos_kt @ self._as + sin_kt @ self._bs

    def h_prime(self, theta):
        if not self.harmonics:
            return np.zeros_like(np.asarray(theta, dtype=float))
        cos_kt, sin_kt = self._trig(theta)
        return cos_kt @ (self._ks * self._bs) - sin_kt @ (self._ks * self._as)

    def h_second(self, theta):
        if not self.harmonics:
            return np.zeros_like(np.asarray(theta, dtype=float))
        cos_kt, sin_kt = self._trig(theta)
        k2 = self._ks * self._ks
        return -(cos_kt @ (k2 * self._as)) - (sin_kt @ (k2 * self._bs))

    def curvature_radius(self, theta):
        return self.h(theta) + self.h_second(theta)

    def arclength(self, theta):
        """Arclength from parameter 0, by termwise integration of h + h''."""
        theta = np.asarray(theta, dtype=float)
        if not self.harmonics:
            return self.c0 * theta
        cos_kt, sin_kt = self._trig(theta)
        w = (1.0 - self._ks * self._ks) / self._ks
        return (
            self.c0 * theta
            + sin_kt @ (w * self._as)
            - (cos_kt - 1.0) @ (w * self._bs)
        )

    @property
    def perimeter(self) -> float:
        return TWO_PI * self.c0

    def point(self, theta):
        """Boundary point with outward normal (cos theta, sin theta)."""
        theta = np.asarray(theta, dtype=float)
        h = self.h(theta)
        hp = self.h_prime(theta)
        return np.stack(
            [h * np.cos(theta) - hp * np.sin(theta), h * np.sin(theta) + hp * np.cos(theta)],
            axis=-1,
        )

    def support_gap(self, point, theta):
        """Signed distance of the point beyond the support line at theta."""
        theta = np.asarray(theta, dtype=float)
        x, y = float(point[0]), float(point[1])
        return x * np.cos(theta) + y * np.sin(theta) - self.h(theta)

    def is_exterior(self, point, n_grid: int = 256) -> bool:
        grid = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
        return bool(np.max(self.support_gap(point, grid)) > 1e-12 * self.c0)

    # -- factories -----------------------------------------------------------
    @staticmethod
    def circle(radius: float) -> "SupportOval":
        return SupportOval(c0=radius)

    @staticmethod
    def ellipse(a: float, b: float, n_harmonics: int = 64) -> "SupportOval":
        """Harmonic expansion of the ellipse support function
        sqrt(a^2 cos^2 + b^2 sin^2); coefficients decay geometrically, so
        the default truncation is exact to machine precision for moderate
        eccentricity."""
        if not a >= b > 0:
            raise ValueError("need a >= b > 0")
        n = 4096
        grid = np.linspace(0.0, TWO_PI, n, endpoint=False)
        samples = np.sqrt((a * np.cos(grid)) ** 2 + (b * np.sin(grid)) ** 2)
        spectrum = np.fft.rfft(samples) / n
        c0 = float(spectrum[0].real)
        harmonics = []
        for k in range(2, min(n_harmonics, n // 2) + 1):
            a_k = 2.0 * float(spectrum[k].real)
            b_k = -2.0 * float(spectrum[k].imag)
            if abs(a_k) > 1e-17 * a or abs(b_k) > 1e-17 * a:
                harmonics.append((k, a_k, b_k))
        return SupportOval(c0=c0, harmonics=tuple(harmonics))

    @staticmethod
    def perturbed_circle(radius: float, perturbations, rng=None) -> "SupportOval":
        """Circle with explicit (k, a_k, b_k) perturbations."""
        return SupportOval(c0=radius, harmonics=tuple(perturbations))


def random_oval(rng: np.random.Generator, radius: float = 1.0, roughness: float = 0.05) -> SupportOval:
    """Random strictly convex oval: a few small harmonics on a circle."""
    harmonics = []
    for k in (2, 3, 4, 5):
        scale = roughness * radius / (k * k - 1)
        harmonics.append((k, float(rng.uniform(-scale, scale)), float(rng.uniform(-scale, scale))))
    return SupportOval(c0=radius, harmonics=tuple(harmonics))


def _newton_bisect(f, fprime, lo, hi, flo, tol=1e-14, max_iter=100):
    """Safeguarded Newton within a sign-change bracket."""
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi = x
        if hi - lo < tol:
            break
        d = fprime(x)
        step = -fx / d if d != 0 else None
        if step is not None and lo < x + step < hi:
            x = x + step
        else:
            x = 0.5 * (lo + hi)
    return 0.5 * (lo + hi)


def _line_oval_intersections(oval: SupportOval, theta: float, h_line: float, n_samples: int = 64):
    """Parameters where the line x . u(theta) = h_line meets the oval,
    one on each side of theta (the line must be a chord)."""

    def g(phi):
        return float(
            oval.h(phi) * math.cos(phi - theta)
            - oval.h_prime(phi) * math.sin(phi - theta)
            - h_line
        )

    def gp(phi):
        # derivative reduces to -(h + h'') sin(phi - theta)
        return float(-oval.curvature_radius(phi) * math.sin(phi - theta))

    roots = []
    for a, b in ((theta, theta + math.pi), (theta - math.pi, theta)):
        xs = np.linspace(a, b, n_samples)
        vals = [g(x) for x in xs]
        bracket = None
        for x0, x1, v0, v1 in zip(xs, xs[1:], vals, vals[1:]):
            if v0 == 0.0:
                bracket = (x0, x0, v0)
                break
            if (v0 < 0) != (v1 < 0):
                bracket = (x0, x1, v0)
                break
        if bracket is None:
            raise DegenerateInputError("line does not cross the oval twice")
        lo, hi, flo = bracket
        roots.append(lo if lo == hi else _newton_bisect(g, gp, lo, hi, flo))
    return roots[0], roots[1]  # (ahead of theta, behind theta)


@dataclass(frozen=True)
class BalancedChord:
    theta: float  # tangency parameter on the inner oval
    tangency: np.ndarray
    endpoints: tuple[np.ndarray, np.ndarray]
    imbalance: float  # |AO|^2 - |BO|^2 at the root (residual)


@dataclass(frozen=True)
class BalancedChordResult:
    chords: tuple[BalancedChord, ...]
    degenerate_all_balanced: bool


def _chord_imbalance(outer: SupportOval, inner: SupportOval, theta: float) -> float:
    o = inner.point(theta)
    phi_a, phi_b = _line_oval_intersections(outer, theta, float(inner.h(theta)))
    a = outer.point(phi_a)
    b = outer.point(phi_b)
    return float(np.dot(a - o, a - o) - np.dot(b - o, b - o))


def check_nested(outer: SupportOval, inner: SupportOval, n_grid: int = 512) -> None:
    grid = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
    if not np.all(inner.h(grid) < outer.h(grid)):
        raise NotNestedError("inner oval is not strictly inside the outer one")


def balanced_tangent_chords(
    outer: SupportOval, inner: SupportOval, n_samples: int = 256
) -> BalancedChordResult:
    """Tangent lines of the inner oval whose tangency point bisects the
    chord cut from the outer oval.

    The imbalance e(theta) = |AO|^2 - |BO|^2 is (up to a positive factor)
    the derivative of the area cut off by the tangent chord, so it changes
    sign at least twice per revolution; its zeros are located by sampling
    and bisection.
    """
    check_nested(outer, inner)
    thetas = np.linspace(0.0, TWO_PI, n_samples, endpoint=False)
    values = [_chord_imbalance(outer, inner, float(t)) for t in thetas]
    scale = outer.c0**2
    if max(abs(v) for v in values) < 1e-11 * scale:
        return BalancedChordResult(chords=(), degenerate_all_balanced=True)

    roots = []
    wrapped = list(zip(thetas, values)) + [(TWO_PI, values[0])]
    for (t0, v0), (t1, v1) in zip(wrapped, wrapped[1:]):
        if v0 == 0.0:
            roots.append(float(t0))
            continue
        if (v0 < 0) == (v1 < 0):
            continue
        lo, hi, flo = float(t0), float(t1), v0
        while hi - lo > 1e-13:
            mid = 0.5 * (lo + hi)
            fm = _chord_imbalance(outer, inner, mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))

    chords = []
    for theta in roots:
        o = inner.point(theta)
        phi_a, phi_b = _line_oval_intersections(outer, theta, float(inner.h(theta)))
        chords.append(
            BalancedChord(
                theta=theta,
                tangency=o,
                endpoints=(outer.point(phi_a), outer.point(phi_b)),
                imbalance=_chord_imbalance(outer, inner, theta),
            )
        )
    return BalancedChordResult(chords=tuple(chords), degenerate_all_balanced=False)


def tangency_parameters(oval: SupportOval, point, n_samples: int = 128, guess=None):
    """Support parameters of the two tangent lines from an exterior point.

    The support gap T(theta) = x . u(theta) - h(theta) is positive exactly
    on the visible arc; its two zeros are the tangency parameters,
    returned as (start, end) with the visible arc running counterclockwise
    from start to end.  A (start, end) guess from a nearby point switches
    to plain Newton with a bracketed fallback.
    """
    x = np.asarray(point, dtype=float)
    psi = math.atan2(x[1], x[0])

    def t_gap(th):
        return float(x[0] * math.cos(th) + x[1] * math.sin(th) - oval.h(th))

    def t_gap_prime(th):
        return float(-x[0] * math.sin(th) + x[1] * math.cos(th) - oval.h_prime(th))

    if guess is not None:
        refined = []
        for g in guess:
            th = float(g)
            for _ in range(40):
                f = t_gap(th)
                d = t_gap_prime(th)
                if d == 0.0:
                    break
                step = f / d
                th -= step
                if abs(step) < 1e-14:
                    break
            refined.append(th)
        start, end = refined
        mid = 0.5 * (start + end)
        ok = (
            abs(t_gap(start)) < 1e-11 * oval.c0
            and abs(t_gap(end)) < 1e-11 * oval.c0
            and 1e-9 < (end - start) < TWO_PI - 1e-9
            and t_gap(mid) > 0
        )
        if ok:
            return start, end

    if t_gap(psi) <= 1e-12 * oval.c0:
        # radial support direction not beyond the body: confirm exterior
        grid = np.linspace(0.0, TWO_PI, n_samples, endpoint=False)
        gaps = oval.support_gap(x, grid)
        best = int(np.argmax(gaps))
        if gaps[best] <= 1e-12 * oval.c0:
            raise ExteriorPointError("point is not strictly outside the oval")
        psi = float(grid[best])

    roots = []
    for a, b in ((psi - math.pi, psi), (psi, psi + math.pi)):
        xs = np.linspace(a, b, n_samples)
        vals = [t_gap(v) for v in xs]
        bracket = None
        for x0, x1, v0, v1 in zip(xs, xs[1:], vals, vals[1:]):
            if (v0 < 0) != (v1 < 0) or v0 == 0.0:
                bracket = (x0, x1, v0)
                break
        if bracket is None:
            raise ExteriorPointError("point is not strictly outside the oval")
        lo, hi, flo = bracket
        roots.append(_newton_bisect(t_gap, t_gap_prime, lo, hi, flo))
    return roots[0], roots[1]  # (start, end) around the visible arc


def outer_billiard(oval: SupportOval, point, side: str = "right") -> np.ndarray:
    """Reflect the point in the tangency point of its tangent line.

    side "right": the tangency point such that the oval lies to the left
    when looking from the point toward it; "left" is the mirror choice.
    Applying one side and then the other returns the original point.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    x = np.asarray(point, dtype=float)
    start, end = tangency_parameters(oval, x)
    chosen = None
    for theta in (start, end):
        o = oval.point(theta)
        u = np.array([math.cos(theta), math.sin(theta)])
        heading = o - x
        # inward normal at the tangency is -u; the oval lies to the left of
        # the sight line when that normal points counterclockwise from it
        cross = heading[0] * (-u[1]) - heading[1] * (-u[0])
        if (side == "right") == (cross > 0):
            chosen = o
            break
    if chosen is None:
        raise ExteriorPointError("could not classify tangent sides")
    return 2.0 * chosen - x


def outer_billiard_jacobian(oval: SupportOval, point, side: str = "right", h: float = 1e-5) -> float:
    """Central-difference Jacobian determinant of the outer billiard map."""
    x = np.asarray(point, dtype=float)
    cols = []
    for j in range(2):
        dp = np.zeros(2)
        dp[j] = h
        cols.append((outer_billiard(oval, x + dp, side) - outer_billiard(oval, x - dp, side)) / (2 * h))
    jac = np.column_stack(cols)
    return float(np.linalg.det(jac))


@dataclass(frozen=True)
class StringSample:
    angle: float
    point: np.ndarray
    tangency_parameters: tuple[float, float]
    closure_residual: float  # f + g - (perimeter + slack)


@dataclass(frozen=True)
class StringCurve:
    oval: SupportOval
    slack: float
    samples: tuple[StringSample, ...]

    def points(self) -> np.ndarray:
        return np.array([s.point for s in self.samples])


def _string_functional(oval: SupportOval, x: np.ndarray, guess=None) -> tuple[float, float, float]:
    """Taut-string excess t1 + t2 - near_arc for an exterior point, plus
    the two tangency parameters."""
    start, end = tangency_parameters(oval, x, guess=guess)
    p1 = oval.point(start)
    p2 = oval.point(end)
    t1 = float(np.linalg.norm(x - p1))
    t2 = float(np.linalg.norm(x - p2))
    arc = float(oval.arclength(end) - oval.arclength(start))
    return t1 + t2 - arc, start, end


def string_point(oval: SupportOval, slack: float, angle: float) -> StringSample:
    """Point of the string curve on the ray at the given angle."""
    u = np.array([math.cos(angle), math.sin(angle)])
    last_guess = [None]

    def w(r: float) -> float:
        excess, start, end = _string_functional(oval, r * u, guess=last_guess[0])
        last_guess[0] = (start, end)
        return excess - slack

    # the support-line foot is exterior but only marginally; a 1e-9 bump
    # keeps the exterior test decisively on the right side
    r_lo = float(oval.h(angle)) * (1.0 + 1e-9)
    w_lo = w(r_lo)
    if w_lo >= 0:
        raise SlackTooSmallError(
            "string slack too small: the curve dips inside the radial support bound"
        )
    r_hi = r_lo + slack + oval.c0
    while w(r_hi) < 0:
        r_hi = r_lo + 2.0 * (r_hi - r_lo)
    lo, hi = r_lo, r_hi
    while hi - lo > 1e-14 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if w(mid) < 0:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    excess, start, end = _string_functional(oval, r * u, guess=last_guess[0])
    return StringSample(
        angle=angle,
        point=r * u,
        tangency_parameters=(start, end),
        closure_residual=excess - slack,
    )


def string_curve(oval: SupportOval, slack: float, n_samples: int = 256) -> StringCurve:
    """Curve traced by pulling a closed string of length perimeter + slack
    tight around the oval: per direction, the radius solves the taut-string
    equation by bisection."""
    if slack <= 0:
        raise ValueError("slack must be positive")
    samples = tuple(
        string_point(oval, slack, float(a))
        for a in np.linspace(0.0, TWO_PI, n_samples, endpoint=False)
    )
    return StringCurve(oval=oval, slack=slack, samples=samples)


def string_equal_angle_residual(oval: SupportOval, slack: float, angle: float, delta: float = 1e-3) -> float:
    """Difference of the angles the two string legs make with the curve.

    The curve tangent comes from a 4th-order stencil over the ray angle,
    so the residual isolates the equal-angle law rather than differencing
    noise.
    """
    pts = [string_point(oval, slack, angle + k * delta).point for k in (-2, -1, 1, 2)]
    tangent = (pts[0] - 8.0 * pts[1] + 8.0 * pts[2] - pts[3]) / (12.0 * delta)
    tangent = tangent / np.linalg.norm(tangent)
    sample = string_point(oval, slack, angle)
    leg1 = oval.point(sample.tangency_parameters[0]) - sample.point
    leg2 = oval.point(sample.tangency_parameters[1]) - sample.point
    a1 = math.acos(np.clip(abs(np.dot(tangent, leg1)) / np.linalg.norm(leg1), 0, 1))
    a2 = math.acos(np.clip(abs(np.dot(tangent, leg2)) / np.linalg.norm(leg2), 0, 1))
    return a1 - a2
