"""Deterministic simulator for semantic-compression communication in UAV swarms."""

from .core import Message, Position, Rect, Role, TransmissionRecord, UavState
from .core import distance, in_target
from .metrics import AggregateMetrics, BandwidthParams, TrialMetrics
from .metrics import aggregate, bandwidth_utilization, compression_ratio
from .metrics import global_success_rate, success_rate
from .movement import step_toward
from .protocol import SimulationRun, initialize, run_to_completion, select_recipients, step
from .scenario import ScenarioSpec, Topology, ablation_spec, preset, sample_positions

__all__ = [
    "AggregateMetrics",
    "BandwidthParams",
    "Message",
    "Position",
    "Rect",
    "Role",
    "ScenarioSpec",
    "SimulationRun",
    "Topology",
    "TransmissionRecord",
    "TrialMetrics",
    "UavState",
    "ablation_spec",
    "aggregate",
    "bandwidth_utilization",
    "compression_ratio",
    "distance",
    "global_success_rate",
    "in_target",
    "initialize",
    "preset",
    "run_to_completion",
    "sample_positions",
    "select_recipients",
    "step",
    "step_toward",
    "success_rate",
]

__version__ = "0.1.0"
