"""Run results, the two evaluation metrics, and CSV rendering.

Average detection delay is the mean, over nodes the stimulus reached
within the horizon, of the gap between true arrival and detection; a
reached but never-detected node contributes the remainder of the run.
Average energy is the mean ledger total over all nodes. Unreached nodes
count toward energy but not delay.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .core import Vec2
from .energy import EnergyLedger
from .node_state import NodeState

PER_NODE_HEADER = [
    "node_id", "x", "y", "first_arrival_s", "detection_s", "delay_s",
    "awake_j", "sleep_j", "tx_j", "rx_j", "total_j", "msgs_tx", "msgs_rx",
]
SUMMARY_HEADER = [
    "scenario", "strategy", "alert_threshold_s", "max_sleep_s", "avg_delay_s", "avg_energy_j",
]


class MetricsError(ValueError):
    """The requested metric is undefined for this run."""


@dataclass
class NodeResult:
    node_id: int
    pos: Vec2
    first_arrival: float          # ground truth; may be +inf (never reached)
    detection_time: float | None  # None if not detected within the horizon
    ledger: EnergyLedger
    occupancy: dict[NodeState, float]
    msgs_tx: int
    msgs_rx: int
    final_sleep_interval: float

    def delay(self, horizon: float) -> float | None:
        """Detection delay contribution, or None if the stimulus never
        reached this node within the horizon."""
        if self.first_arrival > horizon:
            return None
        if self.detection_time is None:
            return horizon - self.first_arrival
        return self.detection_time - self.first_arrival


@dataclass
class RunResult:
    horizon: float
    strategy: str
    nodes: list[NodeResult]
    trace: list[str] | None = None

    def total_occupancy(self, state: NodeState) -> float:
        return sum(n.occupancy[state] for n in self.nodes)


def avg_detection_delay(result: RunResult) -> float:
    delays = [d for n in result.nodes if (d := n.delay(result.horizon)) is not None]
    if not delays:
        raise MetricsError("no node was reached by the stimulus within the horizon")
    return sum(delays) / len(delays)


def avg_energy(result: RunResult) -> float:
    return sum(n.ledger.total() for n in result.nodes) / len(result.nodes)


# ----------------------------------------------------------------------
# CSV rendering. Float cells use repr (shortest round-trip form) so that
# identical runs produce byte-identical files; None renders empty.

def fmt_cell(v: object) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(header: list[str], rows: list[list[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_cell(v) for v in row])
    return buf.getvalue()
