"""Pydantic models: the scenario document and the service wire format.

The scenario document is a flat key/value + sections file (YAML on disk);
the same model doubles as the JSON body of /run and /sweep requests, so
the CLI and the HTTP service validate identical structures. Unknown keys
are rejected everywhere to surface typos as parse errors.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class NodesGeneratorSpec(_Strict):
    generator: Literal["grid", "uniform-random"]
    count: int = Field(gt=0)
    region: tuple[float, float]
    seed: int = 0

    @model_validator(mode="after")
    def _check_region(self) -> "NodesGeneratorSpec":
        if self.region[0] <= 0 or self.region[1] <= 0:
            raise ValueError("region sides must be > 0")
        return self


class StimulusSpec(_Strict):
    variant: Literal["isotropic", "anisotropic"]
    source: tuple[float, float]
    r0: float = Field(default=0.0, ge=0)
    speed: float | None = None          # isotropic only
    speeds: list[float] | None = None   # anisotropic only, >= 4 directions

    @model_validator(mode="after")
    def _check_variant(self) -> "StimulusSpec":
        if self.variant == "isotropic":
            if self.speed is None:
                raise ValueError("isotropic stimulus requires 'speed'")
            if self.speed < 0:
                raise ValueError("speed must be >= 0")
            if self.speeds is not None:
                raise ValueError("'speeds' is only valid for the anisotropic variant")
        else:
            if self.speeds is None:
                raise ValueError("anisotropic stimulus requires 'speeds'")
            if len(self.speeds) < 4:
                raise ValueError("'speeds' needs at least 4 directions")
            if any(s < 0 for s in self.speeds):
                raise ValueError("all directional speeds must be >= 0")
            if self.speed is not None:
                raise ValueError("'speed' is only valid for the isotropic variant")
        return self


class StrategySpec(_Strict):
    """Sleeping strategy. 'sas' is the degenerate alias: adaptive sleeping
    with the alert threshold pinned to zero."""

    kind: Literal["ns", "pas", "sas"]
    alert_threshold: float = Field(default=10.0, ge=0)
    sleep_increment: float = Field(default=1.0, gt=0)
    initial_sleep: float = Field(default=1.0, gt=0)
    max_sleep: float = Field(default=10.0, gt=0)
    detection_timeout: float = Field(default=30.0, gt=0)
    rebroadcast_epsilon: float = Field(default=0.10, gt=0, le=1)


class PowerSpec(_Strict):
    mcu_active_mw: float = Field(default=3.0, ge=0)
    sleep_uw: float = Field(default=15.0, ge=0)
    receive_mw: float = Field(default=38.0, ge=0)
    transmit_mw: float = Field(default=35.0, ge=0)
    data_rate_kbps: float = Field(default=250.0, gt=0)
    total_active_mw: float = Field(default=41.0, ge=0)
    wake_overhead_j: float = Field(default=0.0, ge=0)


class SweepSpec(_Strict):
    param: Literal["max_sleep", "alert_threshold"]
    values: list[float] = Field(min_length=1)
    reps: int = Field(default=5, ge=1)

    @model_validator(mode="after")
    def _check_values(self) -> "SweepSpec":
        if any(v <= 0 for v in self.values):
            raise ValueError("sweep values must be > 0")
        if sorted(self.values) != self.values:
            raise ValueError("sweep values must be sorted ascending")
        return self


class ScenarioSpec(_Strict):
    name: str = "scenario"
    nodes: list[tuple[float, float]] | NodesGeneratorSpec
    radio_range: float = Field(gt=0)
    stimulus: StimulusSpec
    strategy: StrategySpec
    power: PowerSpec = PowerSpec()
    horizon: float = Field(gt=0)
    seed: int = 0
    sweep: SweepSpec | None = None

    @model_validator(mode="after")
    def _check_nodes(self) -> "ScenarioSpec":
        if isinstance(self.nodes, list) and not self.nodes:
            raise ValueError("explicit node list must not be empty")
        return self


# ----------------------------------------------------------------------
# service request/response envelopes

class RunRequest(_Strict):
    scenario: ScenarioSpec
    trace: bool = False


class NodeRow(_Strict):
    """One per-node result row; None marks never (arrival) / not detected."""

    node_id: int
    x: float
    y: float
    first_arrival_s: float | None
    detection_s: float | None
    delay_s: float | None
    awake_j: float
    sleep_j: float
    tx_j: float
    rx_j: float
    total_j: float
    msgs_tx: int
    msgs_rx: int


class SummaryRow(_Strict):
    scenario: str
    strategy: str
    alert_threshold_s: float | None
    max_sleep_s: float | None
    avg_delay_s: float | None
    avg_energy_j: float
    seed: int


class RunResponse(_Strict):
    summary: SummaryRow
    nodes: list[NodeRow]
    trace: list[str] | None = None


class SweepRequest(_Strict):
    scenario: ScenarioSpec
    param: Literal["max_sleep", "alert_threshold"]
    values: list[float] = Field(min_length=1)
    reps: int = Field(default=5, ge=1)

    @model_validator(mode="after")
    def _check_values(self) -> "SweepRequest":
        if any(v <= 0 for v in self.values):
            raise ValueError("sweep values must be > 0")
        if sorted(self.values) != self.values:
            raise ValueError("sweep values must be sorted ascending")
        return self


class SweepResponse(_Strict):
    rows: list[SummaryRow]
    aggregates: list[SummaryRow]


class HealthResponse(_Strict):
    status: str
    version: str
