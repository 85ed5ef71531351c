"""Per-node energy accounting.

Power figures mirror the Telos mote: a 41 mW total active draw while
awake, 15 uW asleep, and incremental per-message radio costs of 35 mW
(transmit) and 38 mW (receive) over the message airtime at 250 kbps.
Radio listening is folded into the awake figure; tx/rx charges are purely
incremental, which keeps the model linear in time and bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .node_state import PowerMode


@dataclass(frozen=True)
class PowerProfile:
    """Platform power figures; defaults are the Telos characteristics."""

    mcu_active_mw: float = 3.0
    sleep_uw: float = 15.0
    receive_mw: float = 38.0
    transmit_mw: float = 35.0
    data_rate_kbps: float = 250.0
    total_active_mw: float = 41.0
    # Optional per-wakeup overhead, off by default (no transition energy
    # is modeled elsewhere).
    wake_overhead_j: float = 0.0

    def __post_init__(self) -> None:
        if self.data_rate_kbps <= 0.0:
            raise ValueError("data rate must be > 0")
        for name in ("mcu_active_mw", "sleep_uw", "receive_mw", "transmit_mw", "total_active_mw", "wake_overhead_j"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")

    def airtime_s(self, nbytes: int) -> float:
        """Seconds of radio time to move nbytes at the configured rate."""
        return 8.0 * nbytes / (self.data_rate_kbps * 1000.0)


def idle_energy(mode: PowerMode, duration_s: float, profile: PowerProfile) -> float:
    """Joules drawn by a node idling in the given mode for duration_s."""
    if duration_s < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration_s}")
    if mode is PowerMode.AWAKE:
        return (profile.total_active_mw / 1000.0) * duration_s
    return (profile.sleep_uw / 1_000_000.0) * duration_s


def tx_energy(nbytes: int, profile: PowerProfile) -> float:
    """Joules to transmit nbytes (airtime at transmit power)."""
    if nbytes <= 0:
        raise ValueError("cannot transmit an empty frame")
    return profile.airtime_s(nbytes) * (profile.transmit_mw / 1000.0)


def rx_energy(nbytes: int, profile: PowerProfile) -> float:
    """Joules to receive nbytes (airtime at receive power)."""
    if nbytes <= 0:
        raise ValueError("cannot receive an empty frame")
    return profile.airtime_s(nbytes) * (profile.receive_mw / 1000.0)


@dataclass
class EnergyLedger:
    """Accumulated joules for one node, split by cause.

    Every simulated second of the node's life lands in exactly one of
    awake_j/sleep_j; tx_j and rx_j are the incremental message costs.
    """

    awake_j: float = 0.0
    sleep_j: float = 0.0
    tx_j: float = 0.0
    rx_j: float = 0.0

    def total(self) -> float:
        return self.awake_j + self.sleep_j + self.tx_j + self.rx_j

    def charge_idle(self, mode: PowerMode, duration_s: float, profile: PowerProfile) -> None:
        e = idle_energy(mode, duration_s, profile)
        if mode is PowerMode.AWAKE:
            self.awake_j += e
        else:
            self.sleep_j += e
