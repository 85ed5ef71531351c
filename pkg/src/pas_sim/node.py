"""Per-node adaptive-sleeping protocol.

A node is a deterministic state machine over three states. Safe nodes
duty-cycle: each wake-up they poll the neighborhood with a REQUEST,
collect RESPONSEs for a fixed window, and either go on alert (predicted
arrival below the threshold) or lengthen their sleep interval by a fixed
increment, capped at a maximum. Alert nodes stay awake, answer REQUESTs,
and re-evaluate their prediction whenever a RESPONSE comes in,
rebroadcasting only when the prediction moved significantly. Covered
nodes (stimulus detected) stay awake, answer REQUESTs, and derive the
front's actual velocity from the detection times of earlier-covered
neighbors.

Handlers mutate the node in place and return the messages to broadcast;
the simulation kernel owns scheduling (collection-window expiry and
wake-ups) via the ``pending_window_token`` / ``next_wake_at`` fields the
handlers set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import NEVER, Vec2
from .estimation import (
    CoveredObservation,
    NeighborEstimate,
    NoNeighborData,
    actual_velocity,
    expected_arrival_time,
    expected_velocity,
)
from .messages import Message, MessageKind
from .node_state import NodeState, PowerMode

# How long a requester collects RESPONSEs before acting on them. Well
# below every protocol time constant (seconds) and well above a message
# airtime (~1 ms).
COLLECTION_WINDOW_S = 0.1

_ZERO = Vec2(0.0, 0.0)


@dataclass(frozen=True)
class PasParams:
    """Protocol knobs.

    alert_threshold may be exactly 0, which degenerates the protocol into
    plain stimulus-triggered sleeping (no node ever goes on alert); all
    other fields must be strictly positive.
    """

    alert_threshold: float = 10.0
    sleep_increment: float = 1.0
    initial_sleep: float = 1.0
    max_sleep: float = 10.0
    detection_timeout: float = 30.0
    rebroadcast_epsilon: float = 0.10

    def __post_init__(self) -> None:
        if self.alert_threshold < 0.0:
            raise ValueError("alert_threshold must be >= 0")
        for name in ("sleep_increment", "initial_sleep", "max_sleep", "detection_timeout"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if self.initial_sleep > self.max_sleep:
            raise ValueError("initial_sleep must not exceed max_sleep")
        if not (0.0 < self.rebroadcast_epsilon <= 1.0):
            raise ValueError("rebroadcast_epsilon must be in (0, 1]")


def sleep_schedule(current: float, params: PasParams) -> float:
    """Next sleep interval: linear ramp by sleep_increment, capped."""
    return min(current + params.sleep_increment, params.max_sleep)


@dataclass
class PasNode:
    """Mutable per-node protocol context."""

    node_id: int
    pos: Vec2
    params: PasParams
    state: NodeState = NodeState.SAFE
    power_mode: PowerMode = PowerMode.ASLEEP
    sleep_interval: float = 0.0
    detection_time: float | None = None
    velocity_estimate: Vec2 | None = None
    predicted_arrival: float | None = None
    last_broadcast_arrival: float | None = None
    # Kernel hand-off: set by handlers, consumed by the scheduler.
    pending_window_token: int | None = None
    next_wake_at: float | None = None
    # Detection-timeout clock; set while a covered node's position is clear.
    stimulus_clear_since: float | None = None
    malformed_count: int = 0

    _estimates: dict[int, NeighborEstimate] = field(default_factory=dict)
    _covered_reports: dict[int, tuple[Vec2, float]] = field(default_factory=dict)
    _window_token: int = 0
    _window_open: bool = False

    def __post_init__(self) -> None:
        if self.sleep_interval == 0.0:
            self.sleep_interval = self.params.initial_sleep

    # ------------------------------------------------------------------
    # event handlers

    def on_detect(self, now: float) -> list[Message]:
        """Stimulus sensed at the node's own position (node awake).

        Safe or alert -> covered; a REQUEST goes out so earlier-covered
        neighbors can report their detection times, from which the actual
        front velocity is computed at window end. Detecting while already
        covered is a no-op.
        """
        if self.state is NodeState.COVERED:
            self.stimulus_clear_since = None
            return []
        self.state = NodeState.COVERED
        self.power_mode = PowerMode.AWAKE
        self.detection_time = now
        self.stimulus_clear_since = None
        self._covered_reports.clear()
        self._open_window()
        return [self._request()]

    def on_wake(self, covered_now: bool, now: float) -> list[Message]:
        """Scheduled wake-up of a sleeping safe node."""
        assert self.state is NodeState.SAFE and self.power_mode is PowerMode.ASLEEP
        self.power_mode = PowerMode.AWAKE
        self.next_wake_at = None
        if covered_now:
            return self.on_detect(now)
        self._open_window()
        return [self._request()]

    def on_message(self, msg: Message, now: float) -> list[Message]:
        """Deliver one message to an awake node."""
        if msg.kind is MessageKind.REQUEST:
            if self.state is NodeState.COVERED:
                return [self._response(arrival=0.0)]
            if self.state is NodeState.ALERT:
                return [self._response(arrival=self._own_arrival())]
            return []  # an awake safe node has nothing to report

        if not msg.is_well_formed():
            self.malformed_count += 1
            return []
        self._record(msg)
        if self.state is NodeState.ALERT:
            return self._alert_reevaluate(now)
        return []

    def on_collection_end(self, token: int, now: float) -> list[Message]:
        """Close a response-collection window and act on what arrived.

        Stale tokens (a newer window was opened, e.g. detection happened
        mid-window) are ignored.
        """
        if token != self._window_token or not self._window_open:
            return []
        self._window_open = False

        if self.state is NodeState.COVERED:
            return self._finish_detection_window()
        if self.state is NodeState.SAFE:
            return self._finish_safe_window(now)
        return []

    def on_stimulus_receded(self, now: float) -> bool:
        """Covered -> safe once the position has been clear for the full
        detection timeout. Returns True if the transition fired.

        Call mark_stimulus_clear / on_detect to drive the clearance clock;
        re-detection resets it.
        """
        if self.state is not NodeState.COVERED or self.stimulus_clear_since is None:
            return False
        if now - self.stimulus_clear_since < self.params.detection_timeout:
            return False
        self.state = NodeState.SAFE
        self.detection_time = None
        self.stimulus_clear_since = None
        self.sleep_interval = self.params.initial_sleep
        self._go_asleep(now)
        return True

    def mark_stimulus_clear(self, now: float) -> None:
        """Note that the stimulus no longer covers this node's position."""
        if self.state is NodeState.COVERED and self.stimulus_clear_since is None:
            self.stimulus_clear_since = now

    # ------------------------------------------------------------------
    # internals

    def _open_window(self) -> None:
        self._window_token += 1
        self._window_open = True
        self.pending_window_token = self._window_token

    def _request(self) -> Message:
        return Message(MessageKind.REQUEST, self.node_id, self.pos)

    def _response(self, arrival: float) -> Message:
        detected = self.detection_time if self.state is NodeState.COVERED else None
        return Message(
            MessageKind.RESPONSE,
            self.node_id,
            self.pos,
            state=self.state,
            velocity=self.velocity_estimate or _ZERO,
            predicted_arrival=arrival,
            detected_at=detected,
        )

    def _own_arrival(self) -> float:
        return self.predicted_arrival if self.predicted_arrival is not None else NEVER

    def _record(self, msg: Message) -> None:
        """File a RESPONSE's content.

        Detection reports feed actual-velocity computation (only while a
        freshly covered node's window is open). A zero velocity is a
        placeholder for "no estimate yet" and is filed as a detection
        report but not as a velocity estimate.
        """
        if (
            self.state is NodeState.COVERED
            and self._window_open
            and msg.state is NodeState.COVERED
            and msg.detected_at is not None
        ):
            self._covered_reports[msg.sender] = (msg.sender_pos, msg.detected_at)
        if msg.state in (NodeState.COVERED, NodeState.ALERT) and not msg.velocity.is_zero():
            self._estimates[msg.sender] = NeighborEstimate(msg.sender_pos, msg.velocity, msg.state)

    def _alert_reevaluate(self, now: float) -> list[Message]:
        if not self._estimates:
            return []
        estimates = list(self._estimates.values())
        new_arrival = expected_arrival_time(self.pos, estimates)
        self.velocity_estimate = expected_velocity(estimates)
        old = self.last_broadcast_arrival
        self.predicted_arrival = new_arrival
        out: list[Message] = []
        if self._changed_significantly(old, new_arrival):
            out.append(self._response(arrival=new_arrival))
            self.last_broadcast_arrival = new_arrival
        if new_arrival > self.params.alert_threshold:
            self.state = NodeState.SAFE
            self._go_asleep(now)
        return out

    def _changed_significantly(self, old: float | None, new: float) -> bool:
        if old is None:
            return True
        old_never = math.isinf(old)
        new_never = math.isinf(new)
        if old_never or new_never:
            return old_never != new_never
        if old > 0.0:
            return abs(new - old) / old > self.params.rebroadcast_epsilon
        return new != old

    def _finish_detection_window(self) -> list[Message]:
        """Derive the actual front velocity from earlier detections, then
        announce the detection. Neighbors that detected simultaneously or
        later carry no velocity information and are skipped."""
        assert self.detection_time is not None
        observations = [
            CoveredObservation(pos, self.detection_time - detected_at)
            for pos, detected_at in self._covered_reports.values()
            if self.detection_time - detected_at > 0.0
        ]
        try:
            self.velocity_estimate = actual_velocity(self.pos, observations)
        except NoNeighborData:
            pass  # keep whatever estimate we had (possibly none)
        self._covered_reports.clear()
        self.predicted_arrival = 0.0
        self.last_broadcast_arrival = 0.0
        return [self._response(arrival=0.0)]

    def _finish_safe_window(self, now: float) -> list[Message]:
        """Alert-or-sleep decision at the end of a safe node's poll."""
        if self._estimates:
            estimates = list(self._estimates.values())
            arrival = expected_arrival_time(self.pos, estimates)
            self.velocity_estimate = expected_velocity(estimates)
            self.predicted_arrival = arrival
            if arrival < self.params.alert_threshold:
                self.state = NodeState.ALERT
                self.sleep_interval = self.params.initial_sleep
                self.last_broadcast_arrival = arrival
                # First estimate is by definition a significant change:
                # announce it so nearby alert nodes can refine theirs.
                return [self._response(arrival=arrival)]
        self.sleep_interval = sleep_schedule(self.sleep_interval, self.params)
        self._go_asleep(now)
        return []

    def _go_asleep(self, now: float) -> None:
        self.power_mode = PowerMode.ASLEEP
        self.next_wake_at = now + self.sleep_interval
        self.last_broadcast_arrival = None
        self._estimates.clear()
        self._covered_reports.clear()
        self._window_open = False
