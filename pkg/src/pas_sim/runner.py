"""Run and sweep execution behind the service endpoints."""

from __future__ import annotations

import math

from .core import ConfigError
from .kernel import run as run_kernel
from .metrics import MetricsError, NodeResult, RunResult, avg_detection_delay, avg_energy
from .scenario import build_scenario
from .schemas import NodeRow, RunResponse, ScenarioSpec, SummaryRow, SweepResponse


def _finite_or_none(t: float | None) -> float | None:
    if t is None or math.isinf(t):
        return None
    return t


def node_row(n: NodeResult, horizon: float) -> NodeRow:
    return NodeRow(
        node_id=n.node_id,
        x=n.pos.x,
        y=n.pos.y,
        first_arrival_s=_finite_or_none(n.first_arrival),
        detection_s=n.detection_time,
        delay_s=n.delay(horizon),
        awake_j=n.ledger.awake_j,
        sleep_j=n.ledger.sleep_j,
        tx_j=n.ledger.tx_j,
        rx_j=n.ledger.rx_j,
        total_j=n.ledger.total(),
        msgs_tx=n.msgs_tx,
        msgs_rx=n.msgs_rx,
    )


def summary_row(spec: ScenarioSpec, result: RunResult) -> SummaryRow:
    kind = spec.strategy.kind
    try:
        delay = avg_detection_delay(result)
    except MetricsError:
        delay = None
    return SummaryRow(
        scenario=spec.name,
        strategy=kind,
        alert_threshold_s=None if kind == "ns" else (0.0 if kind == "sas" else spec.strategy.alert_threshold),
        max_sleep_s=None if kind == "ns" else spec.strategy.max_sleep,
        avg_delay_s=delay,
        avg_energy_j=avg_energy(result),
        seed=spec.seed,
    )


def execute_run(spec: ScenarioSpec, trace: bool = False) -> RunResponse:
    scenario = build_scenario(spec)
    result = run_kernel(scenario, trace=trace)
    return RunResponse(
        summary=summary_row(spec, result),
        nodes=[node_row(n, result.horizon) for n in result.nodes],
        trace=result.trace,
    )


def execute_sweep(spec: ScenarioSpec, param: str, values: list[float], reps: int) -> SweepResponse:
    """Run reps replications per swept value; seeds derive as seed + rep.

    Returns one summary row per (value, rep) in that order, plus one
    mean-aggregated row per value.
    """
    if spec.strategy.kind == "ns":
        raise ConfigError("the non-sleeping baseline has no sleep parameters to sweep")
    rows: list[SummaryRow] = []
    aggregates: list[SummaryRow] = []
    for value in values:
        strategy = spec.strategy.model_copy(update={param: value})
        value_rows: list[SummaryRow] = []
        for rep in range(reps):
            run_spec = spec.model_copy(update={"strategy": strategy, "seed": spec.seed + rep})
            result = run_kernel(build_scenario(run_spec))
            value_rows.append(summary_row(run_spec, result))
        rows.extend(value_rows)
        delays = [r.avg_delay_s for r in value_rows if r.avg_delay_s is not None]
        aggregates.append(
            SummaryRow(
                scenario=spec.name,
                strategy=value_rows[0].strategy,
                alert_threshold_s=value_rows[0].alert_threshold_s,
                max_sleep_s=value_rows[0].max_sleep_s,
                avg_delay_s=sum(delays) / len(delays) if delays else None,
                avg_energy_j=sum(r.avg_energy_j for r in value_rows) / len(value_rows),
                seed=spec.seed,
            )
        )
    return SweepResponse(rows=rows, aggregates=aggregates)
