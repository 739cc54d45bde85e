"""Command-line entry points: presets, run, ablate-complexity, ablate-size.

Credentials for the remote compression endpoint come exclusively from the
environment (``SWARMCOMM_API_TOKEN``). A ``--config`` file, when given, holds
``key = value`` lines whose entries override the command-line flags.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .compression import RemoteEngineConfig
from .errors import ConfigError, SwarmCommError
from .metrics import BandwidthParams, global_success_rate
from .prompting import target_label
from .runner import (
    ExperimentConfig,
    format_aggregate_table,
    run_complexity_ablation,
    run_experiment,
    run_size_ablation,
)
from .scenario import PRESET_NAMES, preset
from .scoring import RemoteScorerConfig

_CONFIG_KEYS = {
    "scenario", "engine", "scorer", "trials", "seed", "out_dir", "workers",
    "num_uavs", "unlimited_range", "sizes",
    "remote_endpoint", "remote_model", "remote_timeout", "remote_retries",
    "remote_temperature", "sp_url", "sp_timeout", "sp_retries",
}


def _load_config_file(path: str) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for raw_line in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value' in {path}, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        overrides[key] = value.strip()
    return overrides


def _bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


def parse_sizes(text: str) -> list[int]:
    """Parse ``2-16`` or ``2,4,8`` (or a mix) into a sorted size list."""
    sizes: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo_text, _, hi_text = part.partition("-")
            sizes.extend(range(int(lo_text), int(hi_text) + 1))
        elif part:
            sizes.append(int(part))
    if not sizes:
        raise ConfigError(f"no swarm sizes in {text!r}")
    return sorted(dict.fromkeys(sizes))


def _experiment_settings(kwargs: dict) -> dict:
    """Merge flag values with config-file overrides (the file wins)."""
    if kwargs.get("config"):
        overrides = _load_config_file(kwargs["config"])
        for key, value in overrides.items():
            if key in ("trials", "seed", "workers", "num_uavs", "remote_retries", "sp_retries"):
                kwargs[key] = int(value)
            elif key in ("remote_timeout", "remote_temperature", "sp_timeout"):
                kwargs[key] = float(value)
            elif key == "unlimited_range":
                kwargs[key] = _bool(value)
            else:
                kwargs[key] = value
    return kwargs


def _build_config(kwargs: dict) -> ExperimentConfig:
    remote_engine = None
    if kwargs.get("remote_endpoint"):
        remote_engine = RemoteEngineConfig(
            endpoint=kwargs["remote_endpoint"],
            model=kwargs.get("remote_model") or "default",
            timeout=kwargs.get("remote_timeout", 30.0),
            max_retries=kwargs.get("remote_retries", 2),
            temperature=kwargs.get("remote_temperature", 0.0),
        )
    remote_scorer = None
    if kwargs.get("sp_url"):
        remote_scorer = RemoteScorerConfig(
            base_url=kwargs["sp_url"],
            timeout=kwargs.get("sp_timeout", 30.0),
            max_retries=kwargs.get("sp_retries", 2),
        )
    return ExperimentConfig(
        scenario=kwargs["scenario"],
        engine=kwargs["engine"],
        scorer=kwargs["scorer"],
        trials=kwargs["trials"],
        seed=kwargs["seed"],
        out_dir=Path(kwargs["out_dir"]),
        workers=kwargs["workers"],
        num_uavs=kwargs.get("num_uavs"),
        unlimited_range=kwargs.get("unlimited_range", False),
        bandwidth=BandwidthParams(),
        remote_engine=remote_engine,
        remote_scorer=remote_scorer,
    )


def _experiment_options(command):
    options = [
        click.option("--scenario", default="extreme", show_default=True,
                     help="Scenario preset name."),
        click.option("--engine", default="identity", show_default=True,
                     help="identity | fixed-ratio:R | template | remote[:MODEL]"),
        click.option("--scorer", default="lexical", show_default=True,
                     help="lexical | remote | none"),
        click.option("--trials", default=10, show_default=True, type=int),
        click.option("--seed", default=0, show_default=True, type=int),
        click.option("--out-dir", "out_dir", default="out", show_default=True),
        click.option("--workers", default=1, show_default=True, type=int),
        click.option("--num-uavs", "num_uavs", default=None, type=int,
                     help="Override the swarm size (extreme variants, 2-16)."),
        click.option("--unlimited-range", "unlimited_range", is_flag=True,
                     help="Lift the communication range limit."),
        click.option("--config", default=None,
                     help="key = value file; entries override the flags."),
        click.option("--remote-endpoint", default=None,
                     help="Chat-completion URL for the remote engine."),
        click.option("--remote-model", default=None),
        click.option("--remote-timeout", default=30.0, type=float),
        click.option("--remote-retries", default=2, type=int),
        click.option("--remote-temperature", default=0.0, type=float),
        click.option("--sp-url", default=None,
                     help="Base URL of the semantic-preservation service."),
        click.option("--sp-timeout", default=30.0, type=float),
        click.option("--sp-retries", default=2, type=int),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
def cli() -> None:
    """Semantic-compression swarm communication simulator."""


def presets_table() -> str:
    """The four scenario presets, one row per scenario."""
    header = ["Scenario", "UAVs", "Env. Size", "Target Area",
              "Comm. Range", "Max Time (s)", "Max Steps"]
    rows = [header]
    for name in PRESET_NAMES:
        spec = preset(name)
        comm = "Full Range" if spec.comm_range is None else f"{spec.comm_range} grids"
        rows.append([
            spec.name,
            str(spec.num_uavs),
            f"{spec.grid_width}x{spec.grid_height}",
            target_label(spec.target_rect),
            comm,
            str(int(spec.t_max)),
            str(spec.s_max),
        ])
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    )


@cli.command("presets")
def presets_command() -> None:
    """Print the built-in scenario parameter table."""
    click.echo(presets_table())


@cli.command("run")
@_experiment_options
def run_command(**kwargs) -> None:
    """Run one experiment (trials of a single scenario)."""
    config = _build_config(_experiment_settings(kwargs))
    result = run_experiment(config)
    click.echo(format_aggregate_table([(config.scenario, result.aggregate)]))
    click.echo(f"artifacts written to {config.out_dir}")


@cli.command("ablate-complexity")
@_experiment_options
def ablate_complexity_command(**kwargs) -> None:
    """Run all four presets with a shared engine and scorer."""
    config = _build_config(_experiment_settings(kwargs))
    results = run_complexity_ablation(config)
    click.echo(format_aggregate_table(
        [(name, result.aggregate) for name, result in results.items()]
    ))
    overall = global_success_rate([r.aggregate.mean_sr for r in results.values()])
    click.echo(f"global SR (mean of the four scenarios): {overall:.4f}")
    click.echo(f"artifacts written to {config.out_dir}")


@cli.command("ablate-size")
@click.option("--sizes", default="2-16", show_default=True,
              help="Swarm sizes, e.g. '2-16' or '2,4,8,16'.")
@_experiment_options
def ablate_size_command(sizes: str, **kwargs) -> None:
    """Sweep the swarm size on extreme-scenario variants."""
    kwargs["sizes"] = sizes
    settings = _experiment_settings(kwargs)
    size_list = parse_sizes(settings["sizes"])
    config = _build_config(settings)
    results = run_size_ablation(config, size_list)
    click.echo(format_aggregate_table(
        [(f"{size} UAVs", result.aggregate) for size, result in results.items()]
    ))
    click.echo(f"artifacts written to {config.out_dir}")


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)
    except SwarmCommError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
