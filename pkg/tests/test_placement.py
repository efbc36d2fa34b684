import math

import numpy as np
import pytest

from geoverify.placement import (
    Cone,
    CRITICAL_HALF_ANGLE_OVER_PI,
    NoTightLoopError,
    balance_square_table,
    cone_sector_angle,
    critical_half_angle,
    flat_floor,
    grid_floor_from_text,
    loop_slips,
    saddle_floor,
    sine_floor,
    tight_loop_length,
)


class TestSquareTable:
    def test_flat_floor_trivial(self):
        placement = balance_square_table(flat_floor())
        assert placement.any_rotation_balances
        assert np.max(np.abs(placement.leg_residuals)) == 0.0

    @pytest.mark.parametrize(
        "floor,center",
        [
            (saddle_floor(0.05), (0.0, 0.0)),
            (saddle_floor(0.05), (0.4, 0.15)),
            (sine_floor(0.02), (0.0, 0.0)),
            (sine_floor(0.02), (0.3, -0.2)),
        ],
    )
    def test_all_legs_touch(self, floor, center):
        placement = balance_square_table(floor, side=1.0, center=center)
        assert np.max(np.abs(placement.leg_residuals)) < 1e-9

    def test_quarter_turn_antisymmetry(self):
        # the relabeling symmetry behind the intermediate-value argument
        import geoverify.placement as pl

        floor = saddle_floor(0.05)
        center = (0.4, 0.15)
        for theta in (0.1, 0.3, 0.7):
            u1 = pl._solve_tilt_height(floor, theta, 1.0, center, np.array([0.0, 0.0, 0.0]))
            d1 = pl._leg_distances(floor, pl._leg_points(theta, (u1[0], u1[1]), u1[2], 1.0, center))
            u2 = pl._solve_tilt_height(floor, theta + math.pi / 2, 1.0, center, np.array([0.0, 0.0, 0.0]))
            d2 = pl._leg_distances(floor, pl._leg_points(theta + math.pi / 2, (u2[0], u2[1]), u2[2], 1.0, center))
            assert d2[1] == pytest.approx(-d1[1], abs=1e-9)

    def test_legs_form_a_square(self):
        placement = balance_square_table(saddle_floor(0.05), side=1.0, center=(0.4, 0.15))
        pts = placement.leg_positions
        for i in range(4):
            side = np.linalg.norm(pts[i] - pts[(i + 1) % 4])
            assert side == pytest.approx(1.0, abs=1e-12)
        for i in range(2):
            diag = np.linalg.norm(pts[i] - pts[i + 2])
            assert diag == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_grid_floor(self):
        xs = np.linspace(-2, 2, 21)
        ys = np.linspace(-2, 2, 21)
        z = 0.05 * np.outer(xs, ys)
        header = "21 21 -2 2 -2 2"
        text = header + "\n" + "\n".join(" ".join(repr(float(v)) for v in row) for row in z)
        floor = grid_floor_from_text(text)
        assert floor(0.5, 0.5) == pytest.approx(0.05 * 0.25, abs=1e-12)
        placement = balance_square_table(floor, side=1.0, center=(0.2, 0.1))
        assert np.max(np.abs(placement.leg_residuals)) < 1e-9

    def test_bad_grid_header(self):
        with pytest.raises(ValueError):
            grid_floor_from_text("3 3 0 1 0 1  1 2 3")


class TestCone:
    def test_sector_angle_at_pi_sixth(self):
        assert cone_sector_angle(Cone(math.pi / 6)) == pytest.approx(math.pi, abs=1e-12)

    def test_sector_angle_limits(self):
        assert cone_sector_angle(Cone(1e-9)) == pytest.approx(0.0, abs=1e-6)
        assert cone_sector_angle(Cone(math.pi / 2 - 1e-12)) == pytest.approx(2 * math.pi, abs=1e-9)

    def test_critical_half_angle_exact(self):
        assert CRITICAL_HALF_ANGLE_OVER_PI == pytest.approx(1 / 6)
        assert CRITICAL_HALF_ANGLE_OVER_PI.numerator == 1
        assert CRITICAL_HALF_ANGLE_OVER_PI.denominator == 6
        assert critical_half_angle() == math.pi / 6

    def test_slip_predicate(self):
        assert not loop_slips(Cone(math.pi / 8))
        assert loop_slips(Cone(math.pi / 6))  # borderline counts as slipping
        assert loop_slips(Cone(math.pi / 4))

    def test_slip_consistent_with_sector(self):
        for alpha in np.linspace(0.05, 1.5, 200):
            cone = Cone(float(alpha))
            assert loop_slips(cone) == (cone_sector_angle(cone) >= math.pi - 1e-12)

    def test_tight_loop_boundary_length(self):
        cone = Cone(math.pi / 6, knot_slant=2.5)
        assert tight_loop_length(cone) == pytest.approx(2 * 2.5, rel=1e-12)

    def test_tight_loop_small_angle(self):
        rho = 3.0
        alpha = 1e-4
        # for a very sharp cone the loop length approaches the circumference
        # of the parallel through the knot
        assert tight_loop_length(Cone(alpha, rho)) == pytest.approx(
            2 * math.pi * rho * math.sin(alpha), rel=1e-6
        )

    def test_slipping_cone_has_no_tight_loop(self):
        with pytest.raises(NoTightLoopError):
            tight_loop_length(Cone(math.pi / 4))

    def test_tight_loop_increasing_in_alpha(self):
        rho = 1.0
        alphas = np.linspace(0.01, math.pi / 6 - 0.01, 50)
        lengths = [tight_loop_length(Cone(float(a), rho)) for a in alphas]
        assert all(b > a for a, b in zip(lengths, lengths[1:]))

    def test_degenerate_cone_rejected(self):
        with pytest.raises(ValueError):
            Cone(0.0)
        with pytest.raises(ValueError):
            Cone(math.pi / 2)
