"""Batch experiment driver: seeded trials, ablation sweeps, and data emission.

Each experiment executes ``trials`` runs with seeds ``seed .. seed+trials-1``
and writes one JSON record per trial (metrics plus the full transmission log,
so runs can be re-scored without re-simulation), an aggregate CSV row, and an
aggregate JSON. Output bytes are a pure function of the configuration for
deterministic engines and scorers: no timestamps, stable key order, and trial
ordering by index regardless of worker completion order.
"""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .compression import CompressionEngine, RemoteEngineConfig, parse_engine
from .core import UavState, in_target
from .errors import ConfigError, ScorerError, SwarmCommError
from .metrics import AggregateMetrics, BandwidthParams, TrialMetrics, aggregate
from .metrics import bandwidth_utilization, compression_ratio, success_rate
from .protocol import SimulationRun, initialize, run_to_completion
from .scenario import PRESET_NAMES, ScenarioSpec, ablation_spec, preset, sample_positions
from .scoring import RemoteScorerConfig, SemanticScorer, parse_scorer

log = logging.getLogger(__name__)

AGGREGATE_CSV_FIELDS = [
    "scenario", "num_uavs", "trials",
    "mean_cr", "std_cr", "mean_sp", "std_sp",
    "mean_bu", "std_bu", "mean_sr", "std_sr",
]


class ExperimentError(SwarmCommError, RuntimeError):
    """An experiment aborted; carries the per-trial error report."""

    def __init__(self, failures: list[tuple[int, int, str]]) -> None:
        self.failures = failures
        lines = [f"trial {idx} (seed {seed}): {msg}" for idx, seed, msg in failures]
        super().__init__("experiment aborted:\n" + "\n".join(lines))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one experiment."""

    scenario: str
    engine: str = "identity"
    scorer: str = "lexical"
    trials: int = 10
    seed: int = 0
    out_dir: Path = Path("out")
    workers: int = 1
    num_uavs: int | None = None
    unlimited_range: bool = False
    bandwidth: BandwidthParams = BandwidthParams()
    remote_engine: RemoteEngineConfig | None = None
    remote_scorer: RemoteScorerConfig | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")


@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: int
    metrics: TrialMetrics
    run: SimulationRun


@dataclass(frozen=True)
class ExperimentResult:
    spec: ScenarioSpec
    config: ExperimentConfig
    trials: list[TrialResult]
    aggregate: AggregateMetrics


def resolve_spec(config: ExperimentConfig) -> ScenarioSpec:
    spec = preset(config.scenario)
    if config.num_uavs is not None:
        spec = ablation_spec(spec, config.num_uavs)
    if config.unlimited_range:
        spec = dataclasses.replace(spec, comm_range=None)
    return spec


def run_trial(
    spec: ScenarioSpec,
    seed: int,
    engine: CompressionEngine,
    scorer: SemanticScorer | None,
    bandwidth: BandwidthParams,
) -> tuple[TrialMetrics, SimulationRun]:
    """Simulate one seeded run and compute its metrics."""
    positions = sample_positions(spec, seed)
    run = run_to_completion(initialize(spec, positions, engine))
    sp: float | None = None
    if scorer is not None:
        try:
            sp = scorer.score(run.m_raw.text, run.m_zip.text)
        except ScorerError as exc:
            log.warning("SP missing for seed %d: %s", seed, exc)
    n_reach, n_total, sr = success_rate(run.swarm, spec.target_rect)
    trial = TrialMetrics(
        cr=compression_ratio(run.m_raw, run.m_zip),
        sp=sp,
        bu=bandwidth_utilization(run.log, bandwidth),
        sr=sr,
        n_reach=n_reach,
        n_total=n_total,
    )
    return trial, run


def _num(value: float) -> int | float:
    return int(value) if float(value).is_integer() else value


def _final_state_record(uav: UavState, spec: ScenarioSpec) -> dict:
    return {
        "id": uav.uav_id,
        "role": uav.role.value,
        "x": _num(uav.pos.x),
        "y": _num(uav.pos.y),
        "received": uav.received,
        "standby": uav.standby,
        "reached": in_target(uav.pos, spec.target_rect),
    }


def trial_record(result: TrialResult, config: ExperimentConfig, engine_name: str,
                 scorer_name: str | None) -> dict:
    run = result.run
    m = result.metrics
    return {
        "trial": result.trial,
        "seed": result.seed,
        "scenario": run.spec.name,
        "num_uavs": run.spec.num_uavs,
        "engine": engine_name,
        "scorer": scorer_name,
        "m_raw_bytes": run.m_raw.byte_len,
        "m_zip_bytes": run.m_zip.byte_len,
        "terminated_tick": run.tick,
        "metrics": {
            "cr": m.cr, "sp": m.sp, "bu": m.bu, "sr": m.sr,
            "n_reach": m.n_reach, "n_total": m.n_total,
        },
        "log": [
            {"tick": r.tick, "sender": r.sender, "receiver": r.receiver, "bytes": r.bytes}
            for r in run.log
        ],
        "final_states": [_final_state_record(u, run.spec) for u in run.swarm],
    }


def _dump_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def aggregate_row(spec: ScenarioSpec, agg: AggregateMetrics) -> dict[str, str]:
    def cell(value: float | None) -> str:
        return "" if value is None else repr(value)

    return {
        "scenario": spec.name,
        "num_uavs": str(spec.num_uavs),
        "trials": str(agg.trials),
        "mean_cr": cell(agg.mean_cr), "std_cr": cell(agg.std_cr),
        "mean_sp": cell(agg.mean_sp), "std_sp": cell(agg.std_sp),
        "mean_bu": cell(agg.mean_bu), "std_bu": cell(agg.std_bu),
        "mean_sr": cell(agg.mean_sr), "std_sr": cell(agg.std_sr),
    }


def _write_csv(path: Path, fields: list[str], rows: list[dict[str, str]]) -> None:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")


def _aggregate_json(spec: ScenarioSpec, agg: AggregateMetrics) -> dict:
    return {
        "scenario": spec.name,
        "num_uavs": spec.num_uavs,
        "trials": agg.trials,
        "sp_trials": agg.sp_trials,
        "mean_cr": agg.mean_cr, "std_cr": agg.std_cr,
        "mean_sp": agg.mean_sp, "std_sp": agg.std_sp,
        "mean_bu": agg.mean_bu, "std_bu": agg.std_bu,
        "mean_sr": agg.mean_sr, "std_sr": agg.std_sr,
    }


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute all trials of *config*, write artifacts, and return the result.

    Raises:
        ExperimentError: if any trial's compression engine fails; the error
            lists every failed trial with its seed.
    """
    spec = resolve_spec(config)
    engine = parse_engine(config.engine, config.remote_engine)
    scorer = parse_scorer(config.scorer, config.remote_scorer)

    def one(index: int) -> TrialResult:
        seed = config.seed + index
        trial, run = run_trial(spec, seed, engine, scorer, config.bandwidth)
        return TrialResult(trial=index, seed=seed, metrics=trial, run=run)

    results: list[TrialResult | None] = [None] * config.trials
    failures: list[tuple[int, int, str]] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = {pool.submit(one, i): i for i in range(config.trials)}
        for future in concurrent.futures.as_completed(futures):
            index = futures[future]
            try:
                results[index] = future.result()
            except SwarmCommError as exc:
                failures.append((index, config.seed + index, str(exc)))
    if failures:
        failures.sort()
        raise ExperimentError(failures)

    trials = [result for result in results if result is not None]
    agg = aggregate([t.metrics for t in trials])

    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    scorer_name = scorer.name if scorer is not None else None
    for result in trials:
        _dump_json(out_dir / f"trial_{result.trial:03d}.json",
                   trial_record(result, config, engine.name, scorer_name))
    _write_csv(out_dir / "aggregate.csv", AGGREGATE_CSV_FIELDS, [aggregate_row(spec, agg)])
    _dump_json(out_dir / "aggregate.json", _aggregate_json(spec, agg))
    return ExperimentResult(spec=spec, config=config, trials=trials, aggregate=agg)


HEATMAP_FIELDS = ["scenario", "cr", "sp", "bu", "sr"]
SIZES_FIELDS = ["num_uavs", "cr", "sp", "bu", "sr"]


def _means_row(label_field: str, label: str, agg: AggregateMetrics) -> dict[str, str]:
    return {
        label_field: label,
        "cr": repr(agg.mean_cr),
        "sp": "" if agg.mean_sp is None else repr(agg.mean_sp),
        "bu": repr(agg.mean_bu),
        "sr": repr(agg.mean_sr),
    }


def run_complexity_ablation(config: ExperimentConfig) -> dict[str, ExperimentResult]:
    """All four presets under one engine/scorer; emits the heatmap data table."""
    results: dict[str, ExperimentResult] = {}
    rows = []
    for name in PRESET_NAMES:
        sub = dataclasses.replace(
            config, scenario=name, num_uavs=None, out_dir=config.out_dir / name
        )
        results[name] = run_experiment(sub)
        rows.append(_means_row("scenario", name, results[name].aggregate))
    config.out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(config.out_dir / "heatmap.csv", HEATMAP_FIELDS, rows)
    return results


def run_size_ablation(config: ExperimentConfig, sizes: list[int]) -> dict[int, ExperimentResult]:
    """Extreme-scenario variants for each swarm size; emits the surface data table."""
    if not sizes:
        raise ConfigError("at least one swarm size is required")
    if any(not 2 <= size <= 16 for size in sizes):
        raise ConfigError(f"swarm sizes must lie within [2, 16], got {sizes}")
    results: dict[int, ExperimentResult] = {}
    rows = []
    for size in sizes:
        sub = dataclasses.replace(
            config, scenario="extreme", num_uavs=size,
            out_dir=config.out_dir / f"size_{size:02d}",
        )
        results[size] = run_experiment(sub)
        rows.append(_means_row("num_uavs", str(size), results[size].aggregate))
    config.out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(config.out_dir / "sizes.csv", SIZES_FIELDS, rows)
    return results


def format_aggregate_table(rows: list[tuple[str, AggregateMetrics]]) -> str:
    """Fixed-width mean±std table for terminal output."""
    def pm(mean: float | None, std: float | None) -> str:
        if mean is None:
            return "--"
        return f"{mean:.4g} ± {std:.4g}"

    header = ["config", "trials", "CR", "SP", "BU", "SR"]
    table = [header]
    for label, agg in rows:
        table.append([
            label, str(agg.trials),
            pm(agg.mean_cr, agg.std_cr),
            pm(agg.mean_sp, agg.std_sp),
            pm(agg.mean_bu, agg.std_bu),
            pm(agg.mean_sr, agg.std_sr),
        ])
    widths = [max(len(row[col]) for row in table) for col in range(len(header))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in table
    ]
    return "\n".join(lines)
