"""Scenario file loading and conversion into runnable scenarios."""

from __future__ import annotations

import math
import random
from pathlib import Path

import yaml
from pydantic import ValidationError

from .core import ConfigError, Vec2
from .kernel import Scenario
from .node import PasParams
from .energy import PowerProfile
from .schemas import ScenarioSpec, StimulusSpec, StrategySpec
from .stimulus import AnisotropicStimulus, IsotropicStimulus, StimulusModel


class ScenarioFormatError(ValueError):
    """The scenario document could not be parsed or validated."""


def _format_validation_error(path: str, exc: ValidationError) -> str:
    lines = [f"{path}: invalid scenario document"]
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        lines.append(f"  {loc}: {err['msg']}")
    return "\n".join(lines)


def load_scenario_spec(path: str | Path) -> ScenarioSpec:
    """Read and validate a YAML scenario file.

    Raises ScenarioFormatError with line/field diagnostics on any parse or
    validation failure. A file without an explicit ``name`` is named after
    its stem.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioFormatError(f"{path}: YAML parse error: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioFormatError(f"{path}: scenario document must be a mapping of sections")
    try:
        spec = ScenarioSpec.model_validate(data)
    except ValidationError as exc:
        raise ScenarioFormatError(_format_validation_error(str(path), exc)) from exc
    if "name" not in spec.model_fields_set:
        spec = spec.model_copy(update={"name": path.stem})
    return spec


def generate_positions(spec: ScenarioSpec) -> list[Vec2]:
    nodes = spec.nodes
    if isinstance(nodes, list):
        return [Vec2(x, y) for x, y in nodes]
    w, h = nodes.region
    if nodes.generator == "grid":
        cols = math.ceil(math.sqrt(nodes.count))
        rows = math.ceil(nodes.count / cols)
        return [
            Vec2((k % cols + 0.5) * w / cols, (k // cols + 0.5) * h / rows)
            for k in range(nodes.count)
        ]
    rng = random.Random(nodes.seed)
    return [Vec2(rng.uniform(0.0, w), rng.uniform(0.0, h)) for _ in range(nodes.count)]


def build_stimulus(spec: StimulusSpec) -> StimulusModel:
    source = Vec2(*spec.source)
    if spec.variant == "isotropic":
        return IsotropicStimulus(source=source, r0=spec.r0, speed=spec.speed)
    return AnisotropicStimulus(source=source, r0=spec.r0, speeds=tuple(spec.speeds))


def build_params(strategy: StrategySpec) -> PasParams | None:
    if strategy.kind == "ns":
        return None
    threshold = strategy.alert_threshold
    if strategy.kind == "sas":
        if "alert_threshold" in strategy.model_fields_set and threshold != 0.0:
            raise ConfigError("'sas' pins alert_threshold to 0; set kind 'pas' to use a nonzero threshold")
        threshold = 0.0
    return PasParams(
        alert_threshold=threshold,
        sleep_increment=strategy.sleep_increment,
        initial_sleep=strategy.initial_sleep,
        max_sleep=strategy.max_sleep,
        detection_timeout=strategy.detection_timeout,
        rebroadcast_epsilon=strategy.rebroadcast_epsilon,
    )


def build_scenario(spec: ScenarioSpec) -> Scenario:
    """Turn a validated document into a runnable Scenario.

    Structural problems the schema cannot see (duplicate positions and the
    like) surface as ConfigError here or in Scenario.validate().
    """
    try:
        positions = generate_positions(spec)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    scenario = Scenario(
        nodes=tuple(positions),
        radio_range=spec.radio_range,
        stimulus=build_stimulus(spec.stimulus),
        pas=build_params(spec.strategy),
        power=PowerProfile(**spec.power.model_dump()),
        horizon=spec.horizon,
        seed=spec.seed,
        strategy=spec.strategy.kind,
    )
    scenario.validate()
    return scenario
