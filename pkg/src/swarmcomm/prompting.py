"""Rendering of the task briefing, the system prompt, and per-role instructions.

All text comes from template files under ``swarmcomm/templates``; placeholders
use ``{name}`` syntax and only the names passed by the renderer are replaced,
so literal braces (e.g. in JSON skeletons) survive untouched. The briefing
wording is pinned by the shipped templates because the compression ratio of a
run depends on its exact byte length.
"""

from __future__ import annotations

import json
import re
from importlib import resources

from .core import Message, Position, Rect, Role, UavState
from .scenario import ScenarioSpec, Topology, relay_ids, roles_for

_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")


def _template(name: str) -> str:
    return resources.files("swarmcomm").joinpath("templates", name).read_text("utf-8")


def _render(template: str, values: dict[str, str]) -> str:
    def substitute(match: re.Match[str]) -> str:
        key = match.group(1)
        if key not in values:
            raise KeyError(f"template placeholder {{{key}}} has no value")
        return values[key]

    return _PLACEHOLDER.sub(substitute, template)


def _num(value: float) -> int | float:
    """Render integral floats as plain integers."""
    return int(value) if float(value).is_integer() else value


def grid_label(spec: ScenarioSpec) -> str:
    return f"{spec.grid_width}x{spec.grid_height}"


def target_label(rect: Rect) -> str:
    return f"[{rect.x_min},{rect.x_max}]x[{rect.y_min},{rect.y_max}]"


def constraints_label(spec: ScenarioSpec) -> str:
    if spec.comm_range is None:
        return "none"
    return f"comm_range={_num(spec.comm_range)} grids; k_max={spec.k_max}"


def _position_pair(p: Position) -> list[int | float]:
    return [_num(p.x), _num(p.y)]


def render_system_prompt(spec: ScenarioSpec, swarm: list[UavState], tick: int) -> str:
    """The shared per-tick system prompt as a JSON document."""
    if tick < 0:
        raise ValueError("tick must be non-negative")
    uav_positions = {
        f"UAV-{u.uav_id}": {"role": u.role.value, "position": _position_pair(u.pos)}
        for u in swarm
    }
    values = {
        "map": json.dumps(f"{grid_label(spec)} grid"),
        "current_time_step": str(tick),
        "uav_positions": json.dumps(uav_positions),
        "constraints": json.dumps(constraints_label(spec)),
    }
    return _render(_template("system_prompt.txt"), values)


def _join_names(ids: list[int]) -> str:
    names = [f"UAV-{i}" for i in ids]
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]


def commander_recipients(spec: ScenarioSpec) -> list[int]:
    """Ids the commander addresses first: the relays, or everyone in the flat topologies."""
    if spec.topology is Topology.HIERARCHICAL:
        return relay_ids(spec)
    return list(range(2, spec.num_uavs + 1))


def render_instruction_prompt(role: Role, uav_id: int, spec: ScenarioSpec) -> str:
    """The once-injected instruction text for one UAV."""
    values = {
        "uav_id": str(uav_id),
        "target": target_label(spec.target_rect),
        "recipients": _join_names(commander_recipients(spec)),
    }
    template_name = {
        Role.COMMANDER: "instruction_commander.txt",
        Role.RELAY: "instruction_relay.txt",
        Role.EXECUTOR: "instruction_executor.txt",
    }[role]
    return _render(_template(template_name), values).rstrip("\n")


def render_raw_task(spec: ScenarioSpec, positions: list[Position]) -> Message:
    """The full task briefing handed to the commander for compression."""
    if len(positions) != spec.num_uavs:
        raise ValueError("one initial position per UAV is required")
    roles = roles_for(spec)
    roster = "\n".join(
        f"UAV-{i + 1} ({roles[i].value}) at ({_num(p.x)}, {_num(p.y)})"
        for i, p in enumerate(positions)
    )
    values = {
        "grid": grid_label(spec),
        "grid_unit_m": str(_num(spec.grid_unit_m)),
        "target": target_label(spec.target_rect),
        "speed": str(_num(spec.speed_mps)),
        "delta_t": str(_num(spec.delta_t)),
        "constraints": constraints_label(spec),
        "roster": roster,
    }
    return Message(_render(_template("raw_task.txt"), values))
