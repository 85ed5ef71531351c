"""Planar geometry and time primitives shared by every module.

All positions and displacements are in meters, all times in seconds,
stored as plain Python floats. The distinguished value ``NEVER``
(positive infinity) marks an event that never happens; it compares
strictly greater than any finite time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Arrival time of an event that never occurs.
NEVER: float = math.inf

# Dense node identifiers, assigned from 0 within a scenario.
NodeId = int


class ConfigError(ValueError):
    """A scenario or request is structurally invalid; nothing was simulated."""


def is_never(t: float) -> bool:
    return math.isinf(t) and t > 0


@dataclass(frozen=True, slots=True)
class Vec2:
    """Immutable planar vector (meters). Components must be finite."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Vec2 components must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Vec2":
        return Vec2(self.x / k, self.y / k)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def is_zero(self) -> bool:
        return self.x == 0.0 and self.y == 0.0


def magnitude(v: Vec2) -> float:
    """Euclidean norm in meters; zero only for the zero vector."""
    return math.hypot(v.x, v.y)


def cos_angle(a: Vec2, b: Vec2) -> float:
    """Cosine of the included angle between two non-degenerate vectors.

    Clamped to [-1, 1] so rounding can never push the result out of the
    valid cosine range. Raises ValueError if either vector has zero
    magnitude (a zero vector has no direction).
    """
    ma = magnitude(a)
    mb = magnitude(b)
    if ma == 0.0 or mb == 0.0:
        raise ValueError("cos_angle is undefined for zero-magnitude vectors")
    c = a.dot(b) / (ma * mb)
    return max(-1.0, min(1.0, c))
