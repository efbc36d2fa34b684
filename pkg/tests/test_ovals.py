import math

import numpy as np
import pytest

from geoverify.core import DegenerateInputError
from geoverify.ovals import (
    ExteriorPointError,
    NotNestedError,
    SupportOval,
    balanced_tangent_chords,
    outer_billiard,
    outer_billiard_jacobian,
    random_oval,
    string_curve,
    string_equal_angle_residual,
    tangency_parameters,
)

CIRCLE = SupportOval.circle(1.0)
ELLIPSE = SupportOval.ellipse(2.0, 1.0)


class TestSupportOval:
    def test_circle_geometry(self):
        grid = np.linspace(0, 2 * math.pi, 64, endpoint=False)
        pts = CIRCLE.point(grid)
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-14)
        assert CIRCLE.perimeter == pytest.approx(2 * math.pi)

    def test_ellipse_expansion_matches_true_support(self):
        a, b = 2.0, 1.0
        grid = np.linspace(0, 2 * math.pi, 997)
        true_h = np.sqrt((a * np.cos(grid)) ** 2 + (b * np.sin(grid)) ** 2)
        assert np.max(np.abs(ELLIPSE.h(grid) - true_h)) < 1e-13

    def test_ellipse_boundary_points_on_ellipse(self):
        grid = np.linspace(0, 2 * math.pi, 257)
        pts = ELLIPSE.point(grid)
        vals = (pts[:, 0] / 2.0) ** 2 + pts[:, 1] ** 2
        assert np.max(np.abs(vals - 1.0)) < 1e-12

    def test_ellipse_perimeter(self):
        from scipy.special import ellipe

        # complete elliptic integral: perimeter of (2, 1) ellipse
        expected = 4 * 2.0 * ellipe(1 - (1.0 / 2.0) ** 2)
        assert ELLIPSE.perimeter == pytest.approx(expected, rel=1e-12)

    def test_arclength_total(self):
        assert ELLIPSE.arclength(2 * math.pi) == pytest.approx(ELLIPSE.perimeter, rel=1e-14)

    def test_translation_harmonic_rejected(self):
        with pytest.raises(ValueError):
            SupportOval(c0=1.0, harmonics=((1, 0.1, 0.0),))

    def test_nonconvex_rejected(self):
        with pytest.raises(DegenerateInputError):
            SupportOval(c0=1.0, harmonics=((2, 0.5, 0.0),))

    def test_convexity_on_dense_grid(self):
        rng = np.random.default_rng(0)
        grid = np.linspace(0, 2 * math.pi, 2048, endpoint=False)
        for _ in range(20):
            oval = random_oval(rng)
            assert np.min(oval.curvature_radius(grid)) > 0


class TestBalancedChords:
    def test_concentric_circles_degenerate(self):
        result = balanced_tangent_chords(SupportOval.circle(2.0), CIRCLE)
        assert result.degenerate_all_balanced

    def test_ellipse_in_circle_four_chords(self):
        result = balanced_tangent_chords(SupportOval.circle(3.0), ELLIPSE)
        assert not result.degenerate_all_balanced
        assert len(result.chords) == 4
        for chord in result.chords:
            a, b = chord.endpoints
            o = chord.tangency
            assert np.linalg.norm(a - o) == pytest.approx(np.linalg.norm(b - o), abs=1e-9)
            # endpoints genuinely on the circle
            assert np.linalg.norm(a) == pytest.approx(3.0, abs=1e-9)
            assert np.linalg.norm(b) == pytest.approx(3.0, abs=1e-9)

    def test_generic_perturbed_pair_at_least_two(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            inner = random_oval(rng, radius=1.0, roughness=0.08)
            outer = random_oval(rng, radius=2.5, roughness=0.05)
            result = balanced_tangent_chords(outer, inner)
            assert len(result.chords) >= 2

    def test_not_nested_rejected(self):
        with pytest.raises(NotNestedError):
            balanced_tangent_chords(CIRCLE, SupportOval.circle(2.0))


class TestOuterBilliard:
    def test_circle_preserves_radius(self):
        x = np.array([2.0, 0.5])
        y = outer_billiard(CIRCLE, x, "right")
        assert np.linalg.norm(y) == pytest.approx(np.linalg.norm(x), abs=1e-12)

    def test_circle_rotation_angle(self):
        d = 2.0
        x = np.array([d, 0.0])
        y = outer_billiard(CIRCLE, x, "right")
        expected_turn = 2 * math.acos(1.0 / d)
        got = math.atan2(y[1], y[0]) % (2 * math.pi)
        assert got == pytest.approx(expected_turn, abs=1e-10) or got == pytest.approx(
            2 * math.pi - expected_turn, abs=1e-10
        )

    def test_right_then_left_returns(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            oval = random_oval(rng)
            x = rng.uniform(-4, 4, size=2)
            if not oval.is_exterior(x) or np.linalg.norm(x) < 1.5:
                continue
            y = outer_billiard(oval, x, "right")
            back = outer_billiard(oval, y, "left")
            assert np.linalg.norm(back - x) < 1e-9

    def test_interior_point_rejected(self):
        with pytest.raises(ExteriorPointError):
            outer_billiard(CIRCLE, (0.2, 0.1))

    def test_area_preservation(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 100:
            oval = random_oval(rng)
            x = rng.uniform(-5, 5, size=2)
            if np.linalg.norm(x) < 1.8:
                continue
            det = outer_billiard_jacobian(oval, x)
            assert abs(det - 1.0) < 1e-6
            checked += 1


class TestStringCurve:
    def test_circle_string_is_concentric_circle(self):
        slack = 0.8
        curve = string_curve(CIRCLE, slack, n_samples=64)
        radii = np.linalg.norm(curve.points(), axis=1)
        # independent oracle: solve 2 sqrt(rho^2 - 1) - 2 acos(1/rho) = slack
        from scipy.optimize import brentq

        rho = brentq(
            lambda r: 2 * math.sqrt(r * r - 1) - 2 * math.acos(1 / r) - slack, 1.0 + 1e-9, 10.0
        )
        assert np.max(np.abs(radii - rho)) < 1e-8
        assert np.std(radii) < 1e-9

    def test_string_closure_residuals(self):
        curve = string_curve(ELLIPSE, 1.0, n_samples=64)
        for s in curve.samples:
            assert abs(s.closure_residual) < 1e-10

    def test_ellipse_string_is_confocal_ellipse(self):
        from geoverify.confocal import ConfocalFamily, elliptic_coords

        family = ConfocalFamily(2.0, 1.0)
        curve = string_curve(ELLIPSE, 1.0, n_samples=128)
        lams = []
        for s in curve.samples:
            coords = elliptic_coords(family, s.point)
            lams.append(coords.lambda_e)
        lam = float(np.median(lams))
        # geometric distance estimate from the member-equation residual
        for s in curve.samples:
            x, y = s.point
            val = x * x / (4 + lam) + y * y / (1 + lam) - 1.0
            grad = np.hypot(2 * x / (4 + lam), 2 * y / (1 + lam))
            assert abs(val) / grad < 1e-8

    def test_equal_angle_law(self):
        for oval in (ELLIPSE, SupportOval(1.2, ((3, 0.02, -0.01), (4, 0.005, 0.01)))):
            for angle in np.linspace(0, 2 * math.pi, 20, endpoint=False):
                assert abs(string_equal_angle_residual(oval, 0.9, float(angle))) < 1e-8

    def test_string_curve_is_convex_and_contains_oval(self):
        curve = string_curve(ELLIPSE, 0.7, n_samples=256)
        pts = curve.points()
        n = len(pts)
        for i in range(n):
            e1 = pts[(i + 1) % n] - pts[i]
            e2 = pts[(i + 2) % n] - pts[(i + 1) % n]
            assert e1[0] * e2[1] - e1[1] * e2[0] > 0
        for s in curve.samples:
            assert ELLIPSE.is_exterior(s.point)

    def test_tangency_parameters_bracket_visible_arc(self):
        x = np.array([3.0, 0.0])
        start, end = tangency_parameters(ELLIPSE, x)
        assert start < 0 < end
        for theta in (start, end):
            assert abs(ELLIPSE.support_gap(x, theta)) < 1e-10
