"""One-grid-unit-per-step kinematics toward the target rectangle.

Steps are axis-aligned: a diagonal unit step would cover ~141 m and break the
100 m-per-step speed calibration. The UAV heads for the nearest point of the
rectangle, along the axis with the larger remaining distance (x on ties), and
never overshoots.
"""

from __future__ import annotations

import math

from .core import Position, Rect, in_target


def step_toward(p: Position, rect: Rect) -> Position:
    """Advance *p* by at most one grid unit toward *rect*; inside, stay put."""
    if in_target(p, rect):
        return p
    rx = min(max(p.x, rect.x_min), rect.x_max) - p.x
    ry = min(max(p.y, rect.y_min), rect.y_max) - p.y
    if abs(rx) >= abs(ry) and rx != 0:
        return Position(p.x + math.copysign(min(1.0, abs(rx)), rx), p.y)
    return Position(p.x, p.y + math.copysign(min(1.0, abs(ry)), ry))
