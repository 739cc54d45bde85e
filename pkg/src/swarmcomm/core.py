"""Shared domain model: roles, positions, messages, and link-level send records."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Role(Enum):
    COMMANDER = "commander"
    RELAY = "relay"
    EXECUTOR = "executor"


@dataclass(frozen=True)
class Position:
    """A point on the grid, in grid units (fractional values allowed)."""

    x: float
    y: float


@dataclass(frozen=True)
class Rect:
    """Inclusive axis-aligned rectangle in grid units."""

    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self) -> None:
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(f"degenerate rectangle: {self}")


def distance(a: Position, b: Position) -> float:
    """Euclidean distance between two grid positions."""
    return math.hypot(a.x - b.x, a.y - b.y)


def in_target(p: Position, rect: Rect) -> bool:
    """True iff *p* lies inside *rect*, boundaries included."""
    return rect.x_min <= p.x <= rect.x_max and rect.y_min <= p.y <= rect.y_max


@dataclass
class UavState:
    """Mutable per-UAV simulation state.

    ``received`` is the reception flag set on first receipt of the compressed
    message; ``sent_to`` remembers every past recipient of this UAV so the same
    receiver is never offered the message twice.
    """

    uav_id: int
    role: Role
    pos: Position
    received: bool = False
    standby: bool = False
    sent_to: set[int] = field(default_factory=set)


@dataclass(frozen=True)
class Message:
    """A UTF-8 instruction payload; ``byte_len`` is derived from ``text``."""

    text: str
    byte_len: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "byte_len", len(self.text.encode("utf-8")))


@dataclass(frozen=True)
class TransmissionRecord:
    """One link-level send event."""

    tick: int
    sender: int
    receiver: int
    bytes: int

    def __post_init__(self) -> None:
        if self.sender == self.receiver:
            raise ValueError("sender and receiver must differ")
        if self.tick < 1:
            raise ValueError("transmissions start at tick 1")
