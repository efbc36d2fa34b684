"""Kinematic car on the plane: control fields, Lie brackets, and the
flow-commutator realization of sideways parking.

State is (x, y, theta, phi): rear-axle midpoint, axle heading, steering
angle with |phi| < pi/4.  The steer and drive fields generate, through
their iterated brackets, rotation in place (turn) and pure lateral motion
(park); both closed forms are checked here against numerical brackets and
against the flow commutator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

PHI_LIMIT = math.pi / 4


class StepTooLargeError(ValueError):
    """Differencing step would leave the steering-angle domain."""


class ManeuverInfeasibleError(ValueError):
    """Flow left the admissible state domain during integration."""


@dataclass(frozen=True)
class CarState:
    x: float
    y: float
    theta: float
    phi: float

    def __post_init__(self):
        if not -PHI_LIMIT < self.phi < PHI_LIMIT:
            raise ValueError("steering angle must satisfy |phi| < pi/4")

    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta, self.phi])


def _state_vec(s) -> np.ndarray:
    return s.vec() if isinstance(s, CarState) else np.asarray(s, dtype=float)


@dataclass(frozen=True)
class ControlField:
    """Vector field on car states; wheelbase is carried where it matters."""

    name: str
    func: Callable[[np.ndarray], np.ndarray]

    def __call__(self, state) -> np.ndarray:
        return self.func(_state_vec(state))


def steer_field() -> ControlField:
    return ControlField("steer", lambda s: np.array([0.0, 0.0, 0.0, 1.0]))


def drive_field(wheelbase: float = 1.0) -> ControlField:
    def f(s: np.ndarray) -> np.ndarray:
        return np.array([math.cos(s[2]), math.sin(s[2]), math.tan(s[3]) / wheelbase, 0.0])

    return ControlField("drive", f)


def turn_field(wheelbase: float = 1.0) -> ControlField:
    def f(s: np.ndarray) -> np.ndarray:
        return np.array([0.0, 0.0, 1.0 / (wheelbase * math.cos(s[3]) ** 2), 0.0])

    return ControlField("turn", f)


def park_field(wheelbase: float = 1.0) -> ControlField:
    def f(s: np.ndarray) -> np.ndarray:
        scale = 1.0 / (wheelbase * math.cos(s[3]) ** 2)
        return np.array([scale * math.sin(s[2]), -scale * math.cos(s[2]), 0.0, 0.0])

    return ControlField("park", f)


def steer(state) -> np.ndarray:
    return steer_field()(state)


def drive(state, wheelbase: float = 1.0) -> np.ndarray:
    return drive_field(wheelbase)(state)


def turn(state, wheelbase: float = 1.0) -> np.ndarray:
    return turn_field(wheelbase)(state)


def park(state, wheelbase: float = 1.0) -> np.ndarray:
    return park_field(wheelbase)(state)


def _jacobian(field: ControlField, s: np.ndarray, h: float) -> np.ndarray:
    jac = np.empty((4, 4))
    for j in range(4):
        dp = np.zeros(4)
        dp[j] = h
        jac[:, j] = (field.func(s + dp) - field.func(s - dp)) / (2 * h)
    return jac


def lie_bracket_numeric(x: ControlField, y: ControlField, state, h: float = 1e-4) -> np.ndarray:
    """[X, Y](s) = DY(s) X(s) - DX(s) Y(s) by central differences, O(h^2)."""
    s = _state_vec(state)
    if h <= 0:
        raise ValueError("step must be positive")
    if abs(s[3]) + h >= PHI_LIMIT:
        raise StepTooLargeError("state too close to the steering boundary for this step")
    return _jacobian(y, s, h) @ x.func(s) - _jacobian(x, s, h) @ y.func(s)


def _rk4_flow(field: ControlField, s: np.ndarray, t: float, n_steps: int) -> np.ndarray:
    dt = t / n_steps
    f = field.func
    for _ in range(n_steps):
        k1 = f(s)
        k2 = f(s + 0.5 * dt * k1)
        k3 = f(s + 0.5 * dt * k2)
        k4 = f(s + dt * k3)
        s = s + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not abs(s[3]) < PHI_LIMIT:
            raise ManeuverInfeasibleError("flow left the steering-angle domain")
    return s


def commutator_flow(x: ControlField, y: ControlField, t: float, state, n_steps: int = 64) -> CarState:
    """Run flows of X, Y, -X, -Y for time t each (classical fixed-step RK4).

    The end state differs from the start by t^2 [X, Y] + O(t^3).
    """
    s = _state_vec(state)
    neg_x = ControlField("-" + x.name, lambda v: -x.func(v))
    neg_y = ControlField("-" + y.name, lambda v: -y.func(v))
    for leg in (x, y, neg_x, neg_y):
        s = _rk4_flow(leg, s, t, n_steps)
    return CarState(x=s[0], y=s[1], theta=s[2], phi=s[3])


def span_residual(state, wheelbase: float = 1.0) -> float:
    """Least-squares residual of turn(s) against span{steer(s), drive(s)}.

    Strictly positive: the two control fields do not close under bracketing,
    which is exactly what lets a car move sideways.
    """
    s = _state_vec(state)
    basis = np.column_stack([steer(s), drive(s, wheelbase)])
    target = turn(s, wheelbase)
    _, residuals, _, _ = np.linalg.lstsq(basis, target, rcond=None)
    if residuals.size:
        return float(math.sqrt(residuals[0]))
    return float(np.linalg.norm(target - basis @ np.linalg.lstsq(basis, target, rcond=None)[0]))
