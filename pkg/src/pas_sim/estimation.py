"""Front-velocity and arrival-time estimators.

A node combines one-hop neighbor reports into three quantities:

* actual velocity: mean of displacement/elapsed-time terms over neighbors
  that already detected the stimulus (direct observation),
* expected velocity: mean of the velocities those neighbors report
  (second-hand estimate),
* expected arrival time: minimum over neighbors of the projected distance
  along each reported travel direction divided by the reported speed.

All three are plain averages/minima; there is deliberately no filtering or
weighting beyond the validity rules below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import NEVER, Vec2, cos_angle, magnitude
from .node_state import NodeState


class NoNeighborData(ValueError):
    """No usable neighbor input; the caller keeps its current belief."""


@dataclass(frozen=True, slots=True)
class CoveredObservation:
    """A covered neighbor's position and how much earlier it detected.

    ``elapsed`` is the detection-time difference between the neighbor and
    the querying node and must be strictly positive (the neighbor saw the
    stimulus first).
    """

    neighbor_pos: Vec2
    elapsed: float


@dataclass(frozen=True, slots=True)
class NeighborEstimate:
    """A neighbor's reported spread velocity.

    Only covered or alert neighbors carry information; a safe neighbor has
    nothing to report and is rejected at construction time.
    """

    neighbor_pos: Vec2
    velocity: Vec2
    state: NodeState

    def __post_init__(self) -> None:
        if self.state not in (NodeState.COVERED, NodeState.ALERT):
            raise ValueError(f"estimates come only from covered or alert neighbors, got {self.state}")


def actual_velocity(x_pos: Vec2, observations: list[CoveredObservation]) -> Vec2:
    """Mean of (x_pos - neighbor_pos) / elapsed over all observations (m/s).

    Points outward from the front toward the observing node. Raises
    NoNeighborData on an empty list and ValueError on a non-positive
    elapsed time.
    """
    if not observations:
        raise NoNeighborData("no covered neighbors reported a detection")
    sx = 0.0
    sy = 0.0
    for obs in observations:
        if obs.elapsed <= 0.0:
            raise ValueError(f"observation elapsed time must be > 0, got {obs.elapsed}")
        d = x_pos - obs.neighbor_pos
        sx += d.x / obs.elapsed
        sy += d.y / obs.elapsed
    n = len(observations)
    return Vec2(sx / n, sy / n)


def expected_velocity(estimates: list[NeighborEstimate]) -> Vec2:
    """Componentwise mean of the reported velocities (m/s)."""
    if not estimates:
        raise NoNeighborData("no covered or alert neighbors reported a velocity")
    sx = 0.0
    sy = 0.0
    for est in estimates:
        sx += est.velocity.x
        sy += est.velocity.y
    n = len(estimates)
    return Vec2(sx / n, sy / n)


def expected_arrival_time(x_pos: Vec2, estimates: list[NeighborEstimate]) -> float:
    """Minimum projected time for the front to reach x_pos, or NEVER.

    Each neighbor contributes distance * cos(angle) / speed, where the
    angle is between its reported velocity and the displacement from the
    neighbor to x_pos. Terms with zero reported speed are skipped (a
    locally stationary front never arrives) and so are terms with
    cos <= 0 (the front moves away; a negative time is not an arrival).
    A co-located neighbor means the front is already here: time 0.

    Returns NEVER when every term is excluded. Raises NoNeighborData on
    an empty list, which is a distinct condition: the node knows nothing,
    rather than knowing the front will not come.
    """
    if not estimates:
        raise NoNeighborData("no covered or alert neighbors reported a velocity")
    best = NEVER
    for est in estimates:
        speed = magnitude(est.velocity)
        if speed == 0.0:
            continue
        disp = x_pos - est.neighbor_pos
        dist = magnitude(disp)
        if dist == 0.0:
            return 0.0
        c = cos_angle(est.velocity, disp)
        if c <= 0.0:
            continue
        t = dist * c / speed
        if t < best:
            best = t
    return best
