"""Shared test utilities: independent brute-force evaluators, random
scenario generation, and the trace-based energy re-computation.

The evaluators here deliberately work on plain tuples and re-derive every
quantity from scratch so they share no code path with the package
implementations they check.
"""

from __future__ import annotations

import math
import random

from pas_sim.energy import idle_energy, rx_energy, tx_energy
from pas_sim.kernel import Scenario
from pas_sim.node_state import PowerMode
from pas_sim.schemas import ScenarioSpec

Pt = tuple[float, float]


# ----------------------------------------------------------------------
# direct-summation evaluators for the three estimation formulas

def brute_actual_velocity(x: Pt, observations: list[tuple[Pt, float]]) -> Pt:
    n = len(observations)
    vx = sum((x[0] - ix) / t for (ix, _iy), t in observations) / n
    vy = sum((x[1] - iy) / t for (_ix, iy), t in observations) / n
    return (vx, vy)


def brute_expected_velocity(velocities: list[Pt]) -> Pt:
    n = len(velocities)
    return (sum(v[0] for v in velocities) / n, sum(v[1] for v in velocities) / n)


def brute_arrival_time(x: Pt, estimates: list[tuple[Pt, Pt]]) -> float:
    """Estimates are (neighbor_pos, velocity) pairs."""
    best = math.inf
    for (ix, iy), (vx, vy) in estimates:
        speed = math.sqrt(vx * vx + vy * vy)
        if speed == 0.0:
            continue
        dx, dy = x[0] - ix, x[1] - iy
        dist = math.sqrt(dx * dx + dy * dy)
        if dist == 0.0:
            return 0.0
        cos = (dx * vx + dy * vy) / (dist * speed)
        if cos <= 0.0:
            continue
        best = min(best, dist * cos / speed)
    return best


def rel_close(a: float, b: float, rel: float = 1e-9) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


# ----------------------------------------------------------------------
# random scenario documents for determinism / conservation checks

def random_scenario_spec(rng: random.Random, strategies: tuple[str, ...] = ("pas", "sas")) -> ScenarioSpec:
    count = rng.randint(5, 15)
    side = rng.uniform(25.0, 50.0)
    kind = rng.choice(strategies)
    strategy: dict = {"kind": kind}
    if kind != "ns":
        initial = rng.uniform(0.5, 2.0)
        strategy.update(
            alert_threshold=rng.uniform(2.0, 15.0) if kind == "pas" else 0.0,
            sleep_increment=rng.uniform(0.5, 2.0),
            initial_sleep=initial,
            max_sleep=initial + rng.uniform(1.0, 8.0),
        )
    if rng.random() < 0.3:
        stimulus = {
            "variant": "anisotropic",
            "source": [rng.uniform(0, side), rng.uniform(0, side)],
            "r0": rng.uniform(0.0, 2.0),
            "speeds": [rng.uniform(0.2, 2.0) for _ in range(rng.randint(4, 8))],
        }
    else:
        stimulus = {
            "variant": "isotropic",
            "source": [rng.uniform(0, side), rng.uniform(0, side)],
            "r0": rng.uniform(0.0, 2.0),
            "speed": rng.uniform(0.3, 2.0),
        }
    return ScenarioSpec.model_validate(
        {
            "name": "random",
            "nodes": {
                "generator": rng.choice(["grid", "uniform-random"]),
                "count": count,
                "region": [side, side],
                "seed": rng.randint(0, 10_000),
            },
            "radio_range": rng.uniform(8.0, 18.0),
            "stimulus": stimulus,
            "strategy": strategy,
            "horizon": rng.uniform(20.0, 60.0),
            "seed": rng.randint(0, 10_000),
        }
    )


# ----------------------------------------------------------------------
# independent energy re-computation from an event trace

def recompute_energy_from_trace(scenario: Scenario, trace: list[str]) -> list[dict[str, float]]:
    """Replay idle/tx/rx charges from the trace alone.

    Follows the same chronological per-node accumulation the kernel uses
    (mode flips at wake/sleep lines, per-message charges in line order),
    so a correct ledger matches bit for bit.
    """
    profile = scenario.power
    n = len(scenario.nodes)
    sleeping = scenario.pas is not None
    mode = [PowerMode.ASLEEP if sleeping else PowerMode.AWAKE] * n
    since = [0.0] * n
    acc = [{"awake_j": 0.0, "sleep_j": 0.0, "tx_j": 0.0, "rx_j": 0.0} for _ in range(n)]

    def settle(i: int, t: float, new_mode: PowerMode) -> None:
        key = "awake_j" if mode[i] is PowerMode.AWAKE else "sleep_j"
        acc[i][key] += idle_energy(mode[i], t - since[i], profile)
        mode[i] = new_mode
        since[i] = t

    for line in trace:
        t_s, _seq, kind, who, detail = line.split("\t")
        t = float(t_s)
        if kind == "horizon":
            for i in range(n):
                key = "awake_j" if mode[i] is PowerMode.AWAKE else "sleep_j"
                acc[i][key] += idle_energy(mode[i], scenario.horizon - since[i], profile)
            break
        i = int(who)
        pairs = [tok.split("=", 1) for tok in detail.split(";") if tok]
        if kind == "wake":
            settle(i, t, PowerMode.AWAKE)
            if profile.wake_overhead_j:
                acc[i]["awake_j"] += profile.wake_overhead_j
        if kind == "deliver" and ["rx", "1"] in pairs:
            nbytes = int(next(v for k, v in pairs if k == "bytes"))
            acc[i]["rx_j"] += rx_energy(nbytes, profile)
        for key, value in pairs:
            if key == "tx":
                _mkind, size = value.split(":")
                acc[i]["tx_j"] += tx_energy(int(size), profile)
            elif key == "sleep_until":
                settle(i, t, PowerMode.ASLEEP)
    return acc
