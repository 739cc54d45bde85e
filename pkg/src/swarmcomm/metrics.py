"""The four evaluation metrics and their multi-trial aggregation.

Compression ratio (CR) and bandwidth utilization (BU) are byte/bit-exact
ratios; success rate (SR) counts UAVs whose final position lies in the target
rectangle (standby UAVs count toward the total, never toward the reached set).
Semantic preservation (SP) comes from a scorer and may be missing for a trial
when the scoring service is unavailable; missing values are excluded from the
aggregate rather than biased to zero. Every entry of the transmission log
contributes to BU, including rebroadcasts; the window length only normalizes.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .core import Rect, TransmissionRecord, UavState, in_target
from .errors import MetricError


@dataclass(frozen=True)
class BandwidthParams:
    """Link capacity (bits per second) and observation window (seconds)."""

    bandwidth_bps: float = 1e6
    window_s: float = 60.0

    def __post_init__(self) -> None:
        if self.bandwidth_bps <= 0 or self.window_s <= 0:
            raise MetricError("bandwidth and window must be positive")


@dataclass(frozen=True)
class TrialMetrics:
    """CR, SP, BU, SR for one run; ``sp`` is None when scoring failed."""

    cr: float
    sp: float | None
    bu: float
    sr: float
    n_reach: int
    n_total: int


@dataclass(frozen=True)
class AggregateMetrics:
    """Mean and sample standard deviation of each metric across trials."""

    trials: int
    mean_cr: float
    std_cr: float
    mean_sp: float | None
    std_sp: float | None
    mean_bu: float
    std_bu: float
    mean_sr: float
    std_sr: float
    sp_trials: int


def compression_ratio(original, compressed) -> float:
    """Compressed bytes over original bytes; lower means stronger compression."""
    if original.byte_len == 0:
        raise MetricError("compression ratio is undefined for an empty original")
    return compressed.byte_len / original.byte_len


def bandwidth_utilization(
    log: list[TransmissionRecord], params: BandwidthParams = BandwidthParams()
) -> float:
    """Total transmitted bits over link capacity times the window length."""
    return sum(record.bytes * 8 for record in log) / (params.bandwidth_bps * params.window_s)


def success_rate(swarm: list[UavState], rect: Rect) -> tuple[int, int, float]:
    """``(n_reach, n_total, sr)`` over the final swarm state."""
    n_total = len(swarm)
    n_reach = sum(1 for uav in swarm if in_target(uav.pos, rect))
    return n_reach, n_total, n_reach / n_total


def global_success_rate(per_scenario: list[float]) -> float:
    """Arithmetic mean of the four per-scenario success rates."""
    if len(per_scenario) != 4:
        raise MetricError(f"expected one SR per scenario (4), got {len(per_scenario)}")
    return sum(per_scenario) / 4


def _mean_std(values: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std


def aggregate(trials: list[TrialMetrics]) -> AggregateMetrics:
    """Mean and sample (n-1) standard deviation per metric; zero std for n=1."""
    if not trials:
        raise MetricError("cannot aggregate zero trials")
    mean_cr, std_cr = _mean_std([t.cr for t in trials])
    mean_bu, std_bu = _mean_std([t.bu for t in trials])
    mean_sr, std_sr = _mean_std([t.sr for t in trials])
    sp_values = [t.sp for t in trials if t.sp is not None]
    if sp_values:
        mean_sp, std_sp = _mean_std(sp_values)
    else:
        mean_sp, std_sp = None, None
    return AggregateMetrics(
        trials=len(trials),
        mean_cr=mean_cr, std_cr=std_cr,
        mean_sp=mean_sp, std_sp=std_sp,
        mean_bu=mean_bu, std_bu=std_bu,
        mean_sr=mean_sr, std_sr=std_sr,
        sp_trials=len(sp_values),
    )
