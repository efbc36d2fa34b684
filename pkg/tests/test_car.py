import math

import numpy as np
import pytest

from geoverify.car import (
    CarState,
    ManeuverInfeasibleError,
    StepTooLargeError,
    commutator_flow,
    drive,
    drive_field,
    lie_bracket_numeric,
    park,
    span_residual,
    steer_field,
    turn,
    turn_field,
)


def random_states(rng, n):
    return [
        CarState(
            x=float(rng.uniform(-5, 5)),
            y=float(rng.uniform(-5, 5)),
            theta=float(rng.uniform(-math.pi, math.pi)),
            phi=float(rng.uniform(-0.6, 0.6)),
        )
        for _ in range(n)
    ]


class TestClosedForms:
    def test_park_is_pure_lateral_at_origin(self):
        s = CarState(0, 0, 0, 0)
        assert np.allclose(park(s, wheelbase=1.0), [0, -1, 0, 0], atol=1e-15)

    def test_drive_heading_north(self):
        s = CarState(0, 0, math.pi / 2, 0)
        assert np.allclose(drive(s), [0, 1, 0, 0], atol=1e-15)

    def test_turn_scales_with_wheelbase(self):
        s = CarState(1, 2, 0.3, 0)
        assert np.allclose(turn(s, wheelbase=2.0), [0, 0, 0.5, 0], atol=1e-15)

    def test_park_orthogonal_to_axle(self):
        rng = np.random.default_rng(0)
        for s in random_states(rng, 100):
            axle = np.array([math.cos(s.theta), math.sin(s.theta), 0.0, 0.0])
            assert np.dot(park(s), axle) == pytest.approx(0.0, abs=1e-15)

    def test_phi_domain_enforced(self):
        with pytest.raises(ValueError):
            CarState(0, 0, 0, math.pi / 4)


class TestNumericBracket:
    def test_steer_drive_matches_turn(self):
        rng = np.random.default_rng(1)
        wheelbase = 1.0
        worst = 0.0
        for s in random_states(rng, 100):
            got = lie_bracket_numeric(steer_field(), drive_field(wheelbase), s, h=1e-4)
            want = turn(s, wheelbase)
            worst = max(worst, float(np.max(np.abs(got - want))))
        assert worst < 1e-6

    def test_drive_turn_matches_park(self):
        rng = np.random.default_rng(2)
        wheelbase = 1.3
        for s in random_states(rng, 100):
            got = lie_bracket_numeric(drive_field(wheelbase), turn_field(wheelbase), s, h=1e-4)
            want = park(s, wheelbase)
            assert np.max(np.abs(got - want)) < 1e-6

    def test_self_bracket_vanishes(self):
        s = CarState(0.5, -1.0, 0.7, 0.2)
        got = lie_bracket_numeric(drive_field(), drive_field(), s, h=1e-4)
        assert np.max(np.abs(got)) < 1e-9

    def test_second_order_convergence(self):
        s = CarState(0.2, 0.4, 0.5, 0.3)
        errs = []
        for h in (2e-3, 1e-3, 5e-4):
            got = lie_bracket_numeric(steer_field(), drive_field(), s, h=h)
            errs.append(float(np.max(np.abs(got - turn(s)))))
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.15)
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.15)

    def test_step_near_boundary_rejected(self):
        s = CarState(0, 0, 0, math.pi / 4 - 1e-5)
        with pytest.raises(StepTooLargeError):
            lie_bracket_numeric(steer_field(), drive_field(), s, h=1e-4)


class TestCommutatorFlow:
    def test_drive_turn_flow_realizes_park(self):
        s = CarState(0, 0, 0, 0)
        t = 0.01
        end = commutator_flow(drive_field(), turn_field(), t, s)
        displacement = end.vec() - s.vec()
        expected = t * t * park(s)
        err = np.linalg.norm(displacement - expected) / np.linalg.norm(expected)
        assert err < 0.02

    def test_t_squared_scaling(self):
        s = CarState(0, 0, 0.4, 0.1)
        t = 0.01
        d1 = commutator_flow(drive_field(), turn_field(), t, s).vec() - s.vec()
        d2 = commutator_flow(drive_field(), turn_field(), t / 2, s).vec() - s.vec()
        ratio = np.linalg.norm(d1) / np.linalg.norm(d2)
        assert ratio == pytest.approx(4.0, abs=0.1)

    def test_displacement_over_t2_converges_to_bracket(self):
        s = CarState(0.1, -0.2, 0.3, 0.1)
        bracket = park(s)

        def err(t):
            d = commutator_flow(drive_field(), turn_field(), t, s).vec() - s.vec()
            return np.linalg.norm(d / (t * t) - bracket)

        e1, e2 = err(0.02), err(0.01)
        order = math.log2(e1 / e2)
        assert order > 0.95  # measured order is 1.0 up to the next-term bias

    def test_same_field_returns_to_start(self):
        s = CarState(0.1, 0.2, 0.3, 0.05)
        end = commutator_flow(drive_field(), drive_field(), 0.05, s)
        assert np.max(np.abs(end.vec() - s.vec())) < 1e-12

    def test_domain_exit_detected(self):
        s = CarState(0, 0, 0, 0.75)  # close to pi/4
        with pytest.raises(ManeuverInfeasibleError):
            commutator_flow(steer_field(), drive_field(), 0.2, s)


def test_span_residual_positive():
    rng = np.random.default_rng(3)
    for s in random_states(rng, 20):
        assert span_residual(s) > 0.1
