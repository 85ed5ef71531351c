"""Node state and power mode enums.

Kept separate so the estimator and message codec can name states without
importing the full protocol machinery.
"""

from __future__ import annotations

from enum import Enum


class NodeState(Enum):
    """Protocol state of a sensor node.

    SAFE: arrival distant or unknown; the only state that may sleep.
    ALERT: predicted arrival below the threshold; stays awake to catch it.
    COVERED: stimulus detected at the node's own position.
    """

    SAFE = "safe"
    ALERT = "alert"
    COVERED = "covered"


class PowerMode(Enum):
    AWAKE = "awake"
    ASLEEP = "asleep"
