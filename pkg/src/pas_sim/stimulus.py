"""Ground-truth diffusion fronts.

Both variants grow radially from a single source and never recede, so
coverage is monotone in time and every point has a closed-form first
arrival. The anisotropic variant grows at a per-direction rate given by a
speed table over uniformly spaced angles, linearly interpolated in
between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import NEVER, Vec2, magnitude

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IsotropicStimulus:
    """Disk of initial radius r0 growing at a uniform speed (m/s)."""

    source: Vec2
    r0: float = 0.0
    speed: float = 1.0

    def __post_init__(self) -> None:
        if self.r0 < 0.0:
            raise ValueError("initial radius must be >= 0")
        if self.speed < 0.0:
            raise ValueError("spread speed must be >= 0")

    def radius_at(self, theta: float, t: float) -> float:
        return self.r0 + self.speed * t

    def speed_toward(self, theta: float) -> float:
        return self.speed


@dataclass(frozen=True)
class AnisotropicStimulus:
    """Star-convex front with direction-dependent speed.

    ``speeds[k]`` is the growth rate toward angle 2*pi*k/K; rates between
    table angles are linearly interpolated (with wraparound), so the
    radius along any fixed direction still grows linearly in time.
    """

    source: Vec2
    speeds: tuple[float, ...] = field(default=(1.0, 1.0, 1.0, 1.0))
    r0: float = 0.0

    def __post_init__(self) -> None:
        if self.r0 < 0.0:
            raise ValueError("initial radius must be >= 0")
        if len(self.speeds) < 4:
            raise ValueError("speed table needs at least 4 directions")
        if any(s < 0.0 for s in self.speeds):
            raise ValueError("all directional speeds must be >= 0")

    def speed_toward(self, theta: float) -> float:
        k = len(self.speeds)
        pos = (theta % _TWO_PI) / _TWO_PI * k
        i = int(pos) % k
        frac = pos - int(pos)
        return self.speeds[i] * (1.0 - frac) + self.speeds[(i + 1) % k] * frac

    def radius_at(self, theta: float, t: float) -> float:
        return self.r0 + self.speed_toward(theta) * t


StimulusModel = IsotropicStimulus | AnisotropicStimulus


def covered(model: StimulusModel, p: Vec2, t: float) -> bool:
    """True iff the front has reached point p by time t (boundary inclusive)."""
    d = p - model.source
    dist = magnitude(d)
    if dist == 0.0:
        return True
    theta = math.atan2(d.y, d.x)
    return dist <= model.radius_at(theta, t)


def first_arrival(model: StimulusModel, p: Vec2) -> float:
    """Infimum time at which p is covered; 0 inside the initial front, NEVER
    if the front does not grow toward p."""
    d = p - model.source
    dist = magnitude(d)
    if dist <= model.r0:
        return 0.0
    theta = math.atan2(d.y, d.x)
    speed = model.speed_toward(theta)
    if speed == 0.0:
        return NEVER
    return (dist - model.r0) / speed
