"""Neighborhood messages and their wire encoding.

Two message kinds exist: a payload-free REQUEST asking neighbors for
stimulus information, and a RESPONSE carrying the sender's location,
state, estimated spread velocity and predicted arrival time.

The wire encoding is little-endian and fixed-size: 13 bytes for a
REQUEST, 26 for a RESPONSE. Those sizes drive airtime and radio energy,
so they must not drift. ``detected_at`` is simulation-side metadata (a
covered sender's detection timestamp, consumed by newly covered
requesters); it is not part of the wire image, whose arrival field is
always 0 for covered senders.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from enum import Enum

from .core import Vec2
from .node_state import NodeState


class MessageKind(Enum):
    REQUEST = 0
    RESPONSE = 1


_STATE_CODE = {NodeState.SAFE: 0, NodeState.ALERT: 1, NodeState.COVERED: 2}
_CODE_STATE = {v: k for k, v in _STATE_CODE.items()}

_REQUEST_FMT = struct.Struct("<BIff")
_RESPONSE_FMT = struct.Struct("<BIffBfff")

REQUEST_SIZE = _REQUEST_FMT.size    # 13
RESPONSE_SIZE = _RESPONSE_FMT.size  # 26


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    sender: int
    sender_pos: Vec2
    # RESPONSE payload; None on a REQUEST.
    state: NodeState | None = None
    velocity: Vec2 | None = None
    predicted_arrival: float | None = None
    detected_at: float | None = None

    def is_well_formed(self) -> bool:
        if self.kind is MessageKind.REQUEST:
            return True
        return self.state is not None and self.velocity is not None and self.predicted_arrival is not None


def wire_size(msg: Message) -> int:
    return REQUEST_SIZE if msg.kind is MessageKind.REQUEST else RESPONSE_SIZE


def encode(msg: Message) -> bytes:
    if msg.kind is MessageKind.REQUEST:
        return _REQUEST_FMT.pack(MessageKind.REQUEST.value, msg.sender, msg.sender_pos.x, msg.sender_pos.y)
    if not msg.is_well_formed():
        raise ValueError("RESPONSE payload is incomplete")
    arrival = msg.predicted_arrival
    # A never-arriving prediction rides as IEEE +infinity.
    wire_arrival = math.inf if math.isinf(arrival) else arrival
    return _RESPONSE_FMT.pack(
        MessageKind.RESPONSE.value,
        msg.sender,
        msg.sender_pos.x,
        msg.sender_pos.y,
        _STATE_CODE[msg.state],
        msg.velocity.x,
        msg.velocity.y,
        wire_arrival,
    )


def decode(blob: bytes) -> Message:
    if len(blob) == REQUEST_SIZE and blob[0] == MessageKind.REQUEST.value:
        _, sender, px, py = _REQUEST_FMT.unpack(blob)
        return Message(MessageKind.REQUEST, sender, Vec2(px, py))
    if len(blob) == RESPONSE_SIZE and blob[0] == MessageKind.RESPONSE.value:
        _, sender, px, py, state_code, vx, vy, arrival = _RESPONSE_FMT.unpack(blob)
        if state_code not in _CODE_STATE:
            raise ValueError(f"unknown state code {state_code}")
        return Message(
            MessageKind.RESPONSE,
            sender,
            Vec2(px, py),
            state=_CODE_STATE[state_code],
            velocity=Vec2(vx, vy),
            predicted_arrival=float(arrival),
        )
    raise ValueError(f"not a valid wire message ({len(blob)} bytes)")
