"""Discrete-event simulator for prediction-based adaptive sleeping in
diffusion-monitoring sensor networks."""

__version__ = "0.1.0"

from .core import NEVER, ConfigError, Vec2, cos_angle, magnitude
from .energy import EnergyLedger, PowerProfile, idle_energy, rx_energy, tx_energy
from .estimation import (
    CoveredObservation,
    NeighborEstimate,
    NoNeighborData,
    actual_velocity,
    expected_arrival_time,
    expected_velocity,
)
from .kernel import Scenario, neighbors, run
from .messages import Message, MessageKind, decode, encode, wire_size
from .metrics import RunResult, avg_detection_delay, avg_energy
from .node import PasNode, PasParams, sleep_schedule
from .node_state import NodeState, PowerMode
from .stimulus import AnisotropicStimulus, IsotropicStimulus, covered, first_arrival

__all__ = [
    "NEVER",
    "ConfigError",
    "Vec2",
    "cos_angle",
    "magnitude",
    "EnergyLedger",
    "PowerProfile",
    "idle_energy",
    "rx_energy",
    "tx_energy",
    "CoveredObservation",
    "NeighborEstimate",
    "NoNeighborData",
    "actual_velocity",
    "expected_arrival_time",
    "expected_velocity",
    "Scenario",
    "neighbors",
    "run",
    "Message",
    "MessageKind",
    "decode",
    "encode",
    "wire_size",
    "RunResult",
    "avg_detection_delay",
    "avg_energy",
    "PasNode",
    "PasParams",
    "sleep_schedule",
    "NodeState",
    "PowerMode",
    "AnisotropicStimulus",
    "IsotropicStimulus",
    "covered",
    "first_arrival",
]
