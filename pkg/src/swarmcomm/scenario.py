"""Scenario presets, swarm-size variants, and seeded random placement.

The four built-in presets (simple, standard, complex, extreme) share the same
physical calibration: one grid unit is 100 m, UAVs fly at 20 m/s, and one time
step lasts 5 s, so a UAV covers exactly one grid unit per step.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from enum import Enum

from .core import Position, Rect, Role, distance
from .errors import ConfigError, PlacementError, UnknownScenarioError

#: Attempt budget for the commander/relay proximity rejection sampler.
PLACEMENT_ATTEMPT_BUDGET = 100_000


class Topology(Enum):
    POINT_TO_POINT = "point-to-point"
    TRIANGLE = "triangle"
    STAR = "star"
    HIERARCHICAL = "hierarchical"


@dataclass(frozen=True)
class ScenarioSpec:
    """All parameters of one scenario. ``comm_range`` of ``None`` means unlimited."""

    name: str
    num_uavs: int
    grid_width: int
    grid_height: int
    target_rect: Rect
    comm_range: float | None
    t_max: float
    s_max: int
    delta_t: float = 5.0
    grid_unit_m: float = 100.0
    speed_mps: float = 20.0
    k_max: int = 4
    topology: Topology = Topology.HIERARCHICAL

    def __post_init__(self) -> None:
        if self.num_uavs < 2:
            raise ValueError("a swarm needs at least 2 UAVs")
        if self.s_max < 1:
            raise ValueError("s_max must be at least 1")
        if not (self.t_max >= self.delta_t > 0):
            raise ValueError("need t_max >= delta_t > 0")
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")
        r = self.target_rect
        if not (0 <= r.x_min and r.x_max <= self.grid_width - 1
                and 0 <= r.y_min and r.y_max <= self.grid_height - 1):
            raise ValueError("target rectangle must lie inside the grid")
        if self.speed_mps * self.delta_t != self.grid_unit_m:
            raise ValueError("speed * step duration must equal one grid unit")
        if self.comm_range is not None and self.comm_range <= 0:
            raise ValueError("comm_range must be positive or unlimited")


def _presets() -> dict[str, ScenarioSpec]:
    return {
        "simple": ScenarioSpec(
            name="simple", num_uavs=2, grid_width=10, grid_height=10,
            target_rect=Rect(8, 9, 8, 9), comm_range=None, t_max=75.0, s_max=15,
            topology=Topology.POINT_TO_POINT,
        ),
        "standard": ScenarioSpec(
            name="standard", num_uavs=3, grid_width=15, grid_height=15,
            target_rect=Rect(12, 14, 12, 14), comm_range=None, t_max=125.0, s_max=25,
            topology=Topology.TRIANGLE,
        ),
        "complex": ScenarioSpec(
            name="complex", num_uavs=5, grid_width=20, grid_height=20,
            target_rect=Rect(16, 19, 16, 19), comm_range=None, t_max=160.0, s_max=32,
            topology=Topology.STAR,
        ),
        "extreme": ScenarioSpec(
            name="extreme", num_uavs=8, grid_width=25, grid_height=25,
            target_rect=Rect(18, 23, 18, 23), comm_range=7.0, t_max=200.0, s_max=40,
            topology=Topology.HIERARCHICAL,
        ),
    }


PRESET_NAMES = ("simple", "standard", "complex", "extreme")


def preset(name: str) -> ScenarioSpec:
    """Return the built-in scenario *name*.

    Raises:
        UnknownScenarioError: if *name* is not one of the four presets.
    """
    try:
        return _presets()[name]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None


def ablation_spec(base: ScenarioSpec, num_uavs: int) -> ScenarioSpec:
    """Variant of *base* with a different swarm size (2 to 16 UAVs).

    Everything except ``num_uavs`` is preserved; roles are reassigned by
    :func:`roles_for` (UAV-1 commands, UAV-2/UAV-3 relay when present).
    """
    if not 2 <= num_uavs <= 16:
        raise ConfigError(f"swarm size must be within [2, 16], got {num_uavs}")
    return dataclasses.replace(base, num_uavs=num_uavs)


def relay_ids(spec: ScenarioSpec) -> list[int]:
    """Relay UAV ids for *spec* (empty for the flat topologies)."""
    if spec.topology is Topology.HIERARCHICAL:
        return list(range(2, min(3, spec.num_uavs) + 1))
    return []


def roles_for(spec: ScenarioSpec) -> list[Role]:
    """Role of each UAV, indexed by ``uav_id - 1``."""
    relays = set(relay_ids(spec))
    roles = [Role.COMMANDER]
    for uav_id in range(2, spec.num_uavs + 1):
        roles.append(Role.RELAY if uav_id in relays else Role.EXECUTOR)
    return roles


def _clique_ok(positions: list[Position], spec: ScenarioSpec) -> bool:
    head = positions[:min(3, spec.num_uavs)]
    return all(
        distance(head[i], head[j]) < spec.comm_range
        for i in range(len(head))
        for j in range(i + 1, len(head))
    )


def sample_positions(spec: ScenarioSpec, seed: int) -> list[Position]:
    """Uniform random integer placement of the swarm, deterministic in *seed*.

    For hierarchical scenarios with a finite range the commander and relays
    must start mutually connected; UAV-1 stays where it was first drawn and
    UAV-2/UAV-3 are redrawn until the clique constraint holds.

    Raises:
        PlacementError: if the rejection sampler exhausts its attempt budget.
    """
    rng = random.Random(seed)

    def cell() -> Position:
        return Position(rng.randrange(spec.grid_width), rng.randrange(spec.grid_height))

    positions = [cell() for _ in range(spec.num_uavs)]
    if spec.topology is Topology.HIERARCHICAL and spec.comm_range is not None:
        attempts = 0
        while not _clique_ok(positions, spec):
            attempts += 1
            if attempts >= PLACEMENT_ATTEMPT_BUDGET:
                raise PlacementError(
                    f"infeasible placement: no commander/relay clique within "
                    f"range {spec.comm_range} after {attempts} attempts"
                )
            for idx in range(1, min(3, spec.num_uavs)):
                positions[idx] = cell()
    return positions


def spec_to_config(spec: ScenarioSpec) -> str:
    """Serialize *spec* to the flat key-value config format."""
    range_text = "unlimited" if spec.comm_range is None else repr(spec.comm_range)
    rect = spec.target_rect
    lines = [
        f"name = {spec.name}",
        f"num_uavs = {spec.num_uavs}",
        f"grid_width = {spec.grid_width}",
        f"grid_height = {spec.grid_height}",
        f"target_rect = {rect.x_min} {rect.x_max} {rect.y_min} {rect.y_max}",
        f"comm_range = {range_text}",
        f"t_max = {spec.t_max!r}",
        f"s_max = {spec.s_max}",
        f"delta_t = {spec.delta_t!r}",
        f"grid_unit_m = {spec.grid_unit_m!r}",
        f"speed_mps = {spec.speed_mps!r}",
        f"k_max = {spec.k_max}",
        f"topology = {spec.topology.value}",
    ]
    return "\n".join(lines) + "\n"


def spec_from_config(text: str) -> ScenarioSpec:
    """Parse the format produced by :func:`spec_to_config`."""
    values: dict[str, str] = {}
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    try:
        rect_parts = [int(part) for part in values["target_rect"].split()]
        if len(rect_parts) != 4:
            raise ConfigError("target_rect needs exactly four integers")
        range_text = values["comm_range"]
        comm_range = None if range_text == "unlimited" else float(range_text)
        return ScenarioSpec(
            name=values["name"],
            num_uavs=int(values["num_uavs"]),
            grid_width=int(values["grid_width"]),
            grid_height=int(values["grid_height"]),
            target_rect=Rect(*rect_parts),
            comm_range=comm_range,
            t_max=float(values["t_max"]),
            s_max=int(values["s_max"]),
            delta_t=float(values["delta_t"]),
            grid_unit_m=float(values["grid_unit_m"]),
            speed_mps=float(values["speed_mps"]),
            k_max=int(values["k_max"]),
            topology=Topology(values["topology"]),
        )
    except KeyError as exc:
        raise ConfigError(f"missing scenario key: {exc.args[0]}") from None
    except ValueError as exc:
        raise ConfigError(f"bad scenario config: {exc}") from None
