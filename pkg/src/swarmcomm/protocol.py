"""The three-phase propagation protocol driving one simulation run.

A run advances in discrete ticks:

* tick 1: the commander hands the compressed message to its first-hop
  recipients (the relays in the hierarchical scenario; all of its topology
  neighbors in the flat point-to-point/triangle/star scenarios, where range
  and fan-out caps do not apply).
* tick 2: each relay offers the message to up to ``k_max`` unreached
  neighbors within communication range, nearest first.
* tick 3 onward: every reached UAV, in ascending id order, rebroadcasts
  before moving one grid unit toward the target. A UAV reached earlier in the
  same tick does not act until the next tick, but its reception flag flips
  immediately, so the message is delivered at most once per UAV.

The loop stops at the first tick ``t`` with ``t * delta_t >= t_max`` or at
``s_max``, whichever comes first; UAVs never reached are then put on standby.
UAVs inside the target stop both moving and rebroadcasting. Everything here is
deterministic: the same scenario, placement, and engine reproduce the same log
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compression import CompressionEngine
from .core import Message, TransmissionRecord, UavState, distance, in_target
from .movement import step_toward
from .prompting import commander_recipients, render_raw_task, render_system_prompt
from .scenario import ScenarioSpec, Topology, relay_ids, roles_for


@dataclass
class SimulationRun:
    """State of one run: the swarm, the send log, and both message forms."""

    spec: ScenarioSpec
    swarm: list[UavState]
    m_raw: Message
    m_zip: Message
    tick: int = 0
    log: list[TransmissionRecord] = field(default_factory=list)

    def uav(self, uav_id: int) -> UavState:
        return self.swarm[uav_id - 1]


def initialize(spec: ScenarioSpec, positions, engine: CompressionEngine) -> SimulationRun:
    """Build a run: render the briefing, compress it once, flag the commander.

    An engine failure propagates and no partial run is created.
    """
    if len(positions) != spec.num_uavs:
        raise ValueError(
            f"expected {spec.num_uavs} positions, got {len(positions)}"
        )
    roles = roles_for(spec)
    swarm = [
        UavState(uav_id=i + 1, role=roles[i], pos=positions[i], received=(i == 0))
        for i in range(spec.num_uavs)
    ]
    m_raw = render_raw_task(spec, positions)
    m_zip = engine.compress(m_raw, render_system_prompt(spec, swarm, 0))
    return SimulationRun(spec=spec, swarm=swarm, m_raw=m_raw, m_zip=m_zip)


def select_recipients(
    sender: UavState,
    swarm: list[UavState],
    k_max: int | None,
    comm_range: float | None,
) -> list[int]:
    """Up to ``k_max`` unreached UAVs in range, never offered before by *sender*.

    Ordered by ascending distance, ties broken by ascending id. ``None`` for
    either limit disables it.
    """
    candidates = []
    for uav in swarm:
        if uav.uav_id == sender.uav_id or uav.received or uav.uav_id in sender.sent_to:
            continue
        gap = distance(sender.pos, uav.pos)
        if comm_range is not None and gap >= comm_range:
            continue
        candidates.append((gap, uav.uav_id))
    candidates.sort()
    if k_max is not None:
        candidates = candidates[:k_max]
    return [uav_id for _, uav_id in candidates]


def _deliver(run: SimulationRun, sender: UavState, receiver_id: int) -> None:
    receiver = run.uav(receiver_id)
    receiver.received = True
    sender.sent_to.add(receiver_id)
    run.log.append(
        TransmissionRecord(
            tick=run.tick,
            sender=sender.uav_id,
            receiver=receiver_id,
            bytes=run.m_zip.byte_len,
        )
    )


def step(run: SimulationRun) -> SimulationRun:
    """Advance the run by one tick (see the module docstring for the phases)."""
    spec = run.spec
    run.tick += 1
    if run.tick == 1:
        commander = run.uav(1)
        for receiver_id in commander_recipients(spec):
            _deliver(run, commander, receiver_id)
    elif run.tick == 2:
        for relay_id in relay_ids(spec):
            relay = run.uav(relay_id)
            for receiver_id in select_recipients(relay, run.swarm, spec.k_max, spec.comm_range):
                _deliver(run, relay, receiver_id)
    else:
        hierarchical = spec.topology is Topology.HIERARCHICAL
        k_max = spec.k_max if hierarchical else None
        acting = [u for u in run.swarm if u.received and not u.standby]
        for uav in acting:
            if in_target(uav.pos, spec.target_rect):
                continue
            for receiver_id in select_recipients(uav, run.swarm, k_max, spec.comm_range):
                _deliver(run, uav, receiver_id)
            uav.pos = step_toward(uav.pos, spec.target_rect)
    return run


def run_to_completion(run: SimulationRun) -> SimulationRun:
    """Run until the time or step bound, then put unreached UAVs on standby."""
    spec = run.spec
    while run.tick < spec.s_max:
        step(run)
        if run.tick * spec.delta_t >= spec.t_max:
            break
    for uav in run.swarm:
        if not uav.received:
            uav.standby = True
    return run
