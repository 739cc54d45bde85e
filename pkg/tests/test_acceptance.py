"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Every expected value here is either transcribed from the published parameter
table, computed by an independent oracle in this repo (brute-force propagation,
Manhattan enumeration, hand arithmetic), or a documented contract constant.
"""

import itertools
import json
import threading
import time
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest
from click.testing import CliRunner

from swarmcomm.cli import cli
from swarmcomm.compression import FixedRatioEngine, IdentityEngine
from swarmcomm.core import Position, Rect, in_target
from swarmcomm.metrics import BandwidthParams, bandwidth_utilization, compression_ratio
from swarmcomm.movement import step_toward
from swarmcomm.protocol import initialize, run_to_completion
from swarmcomm.runner import ExperimentConfig, run_experiment
from swarmcomm.scenario import ScenarioSpec, Topology, preset, sample_positions
from swarmcomm.scoring import LexicalScorer, RemoteScorerConfig
from swarmcomm.core import TransmissionRecord

from oracle import manhattan_to_rect, oracle_run, sender_position_at

FIXTURES = Path(__file__).parent / "fixtures"


def test_scenario_fidelity_presets_table():
    """Preset table matches the checked-in fixture byte for byte, in under 1 s."""
    start = time.perf_counter()
    result = CliRunner().invoke(cli, ["presets"])
    elapsed = time.perf_counter() - start
    assert result.exit_code == 0
    assert result.output == (FIXTURES / "presets_table.txt").read_text()
    assert elapsed < 1.0
    print("PASS scenario fidelity: presets table byte-identical to fixture")


def test_protocol_invariants_over_1000_randomized_trials():
    """Zero invariant violations across 1000 seeded extreme runs."""
    spec = preset("extreme")
    engine = FixedRatioEngine(0.5)
    start = time.perf_counter()
    for seed in range(1000):
        positions = sample_positions(spec, seed)
        run = run_to_completion(initialize(spec, positions, engine))

        # Termination at min(S_max, ceil(T_max / delta_t)) = 40.
        assert run.tick == 40

        initial = {i + 1: (p.x, p.y) for i, p in enumerate(positions)}
        receive_tick = {1: 0}
        seen_senders = set()
        for record in run.log:
            # At-most-once, never back to the commander, never to a UAV that
            # already received (receivers are always still unmoved).
            assert record.receiver != 1
            assert record.receiver not in receive_tick
            assert record.receiver not in seen_senders
            assert record.sender in receive_tick
            assert record.bytes == run.m_zip.byte_len

            # Range soundness at send time, reconstructed independently.
            sx, sy = sender_position_at(
                initial[record.sender], receive_tick[record.sender],
                record.tick, spec.target_rect,
            )
            rx, ry = initial[record.receiver]
            assert ((sx - rx) ** 2 + (sy - ry) ** 2) ** 0.5 < spec.comm_range

            receive_tick[record.receiver] = record.tick
            seen_senders.add(record.sender)

        # Fan-out cap per sender per tick.
        fan_out = Counter((r.sender, r.tick) for r in run.log)
        assert all(count <= spec.k_max for count in fan_out.values())

        # Standby exactly for the UAVs the message never reached.
        for uav in run.swarm:
            assert uav.standby == (not uav.received)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(f"PASS protocol invariants: 1000 trials, zero violations, {elapsed:.1f}s")


def test_small_instance_log_matches_bruteforce_oracle():
    """Engine log equals the brute-force propagation oracle on 54 hand-built cases."""
    spec = ScenarioSpec(
        name="oracle3", num_uavs=3, grid_width=5, grid_height=5,
        target_rect=Rect(4, 4, 4, 4), comm_range=None, t_max=50.0, s_max=10,
        topology=Topology.HIERARCHICAL, k_max=2,
    )
    cells = [(0, 0), (0, 4), (1, 2), (2, 3), (3, 1), (4, 4)]
    cases = 0
    for p1 in [(0, 0), (2, 2), (4, 0)]:
        for p2, p3 in itertools.product(cells, repeat=2):
            positions = [Position(*p1), Position(*p2), Position(*p3)]
            run = run_to_completion(initialize(spec, positions, IdentityEngine()))
            expected = oracle_run(spec, positions)
            assert [(r.tick, r.sender, r.receiver) for r in run.log] == expected.sends
            cases += 1
    assert cases >= 50
    print(f"PASS small-instance oracle: exact log match on {cases} cases")


def test_metric_exactness():
    """CR and BU are byte/bit-exact; SR arithmetic is exact on enumerated states."""
    spec = preset("extreme")
    positions = sample_positions(spec, 3)

    # CR of the identity engine is exactly 1.0.
    run = run_to_completion(initialize(spec, positions, IdentityEngine()))
    assert compression_ratio(run.m_raw, run.m_zip) == 1.0

    # CR of fixed-ratio rho equals ceil(rho * len) / len exactly.
    for rho in (0.2, 0.5, 0.8):
        run = run_to_completion(initialize(spec, positions, FixedRatioEngine(rho)))
        length = run.m_raw.byte_len
        expected = -(-int(rho * 10) * length // 10) / length  # exact decimal ceil
        assert compression_ratio(run.m_raw, run.m_zip) == expected

    # BU on a crafted 10-record x 75-byte log: hand arithmetic gives
    # 10 * 75 * 8 = 6000 bits over 10^6 bps * 60 s = 6000 / 6e7 = 1.0e-4.
    params = BandwidthParams()
    ten_records = [TransmissionRecord(1, 1, i + 2, 75) for i in range(10)]
    assert bandwidth_utilization(ten_records, params) == pytest.approx(1.0e-4, abs=1e-12)
    # A single 75-byte record is the log for which the value 1.0e-5 holds.
    one_record = [TransmissionRecord(1, 1, 2, 75)]
    assert bandwidth_utilization(one_record, params) == pytest.approx(1.0e-5, abs=1e-12)

    # SR arithmetic on enumerated final states.
    from swarmcomm.core import Role, UavState
    from swarmcomm.metrics import success_rate
    rect = Rect(18, 23, 18, 23)
    swarm = [
        UavState(uav_id=i + 1, role=Role.EXECUTOR,
                 pos=Position(20, 20) if i < 7 else Position(0, 0),
                 received=i < 7, standby=i >= 7)
        for i in range(8)
    ]
    assert success_rate(swarm, rect) == (7, 8, 0.875)
    print("PASS metric exactness: CR, BU, SR all byte/bit-exact")


def test_bu_cr_ratio_constant_across_ratios():
    """BU/CR is invariant in the compression ratio for a pinned seed."""
    spec = preset("extreme")
    positions = sample_positions(spec, 7)
    ratios = []
    for rho in (0.2, 0.4, 0.6, 0.8, 1.0):
        run = run_to_completion(initialize(spec, positions, FixedRatioEngine(rho)))
        cr = compression_ratio(run.m_raw, run.m_zip)
        bu = bandwidth_utilization(run.log, BandwidthParams())
        ratios.append(bu / cr)
    spread = (max(ratios) - min(ratios)) / min(ratios)
    assert spread <= 1e-9
    print(f"PASS BU/CR proportionality: relative spread {spread:.2e} across 5 ratios")


def test_movement_steps_equal_manhattan_distance_on_all_625_cells():
    """Steps-to-target equals the Manhattan distance from every start cell."""
    rect = Rect(18, 23, 18, 23)
    for x in range(25):
        for y in range(25):
            p = Position(x, y)
            steps = 0
            while not in_target(p, rect):
                p = step_toward(p, rect)
                steps += 1
                assert steps <= 48
            assert steps == manhattan_to_rect(x, y, rect)
    print("PASS movement oracle: 625/625 cells exact")


def test_run_artifacts_are_byte_identical_across_executions(tmp_path):
    """The pinned CLI invocation reproduces its JSON/CSV artifacts exactly."""
    runner = CliRunner()
    outputs = []
    for label in ("a", "b"):
        out_dir = tmp_path / label
        result = runner.invoke(cli, [
            "run", "--scenario", "extreme", "--engine", "fixed-ratio:0.5",
            "--trials", "10", "--seed", "7", "--out-dir", str(out_dir),
        ])
        assert result.exit_code == 0, result.output
        outputs.append({p.name: p.read_bytes() for p in sorted(out_dir.iterdir())})
    assert outputs[0].keys() == outputs[1].keys()
    assert len(outputs[0]) == 12  # 10 trials + aggregate.csv + aggregate.json
    for name in outputs[0]:
        assert outputs[0][name] == outputs[1][name], f"{name} differs between runs"
    print("PASS determinism: 12 artifacts byte-identical across executions")


def test_lexical_scorer_fixture_values():
    """Identity 1.0, disjoint 0.0, and the 2/3 partial-overlap fixture."""
    scorer = LexicalScorer()
    assert scorer.score("go to grid 18 23", "go to grid 18 23") == 1.0
    assert scorer.score("alpha beta", "gamma delta") == 0.0
    assert scorer.score("a b c d", "a b") == pytest.approx(2 / 3, abs=1e-9)
    print("PASS lexical scorer: identity/disjoint/partial fixtures exact")


SP_FIXTURE_VALUES = [0.813, 0.74, 0.699, 0.512]


class _FixtureScoreHandler(BaseHTTPRequestHandler):
    """Stands in for the scoring service; serves pinned f1 values in order."""

    calls = 0

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length))
        assert "original" in body and "compressed" in body
        f1 = SP_FIXTURE_VALUES[type(self).calls % len(SP_FIXTURE_VALUES)]
        type(self).calls += 1
        payload = json.dumps({"precision": f1, "recall": f1, "f1": f1}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


def test_extreme_experiment_records_sp_from_fixture_server(tmp_path):
    """Full extreme experiment against a fixture scoring server: SP equals the fixtures."""
    _FixtureScoreHandler.calls = 0
    server = ThreadingHTTPServer(("127.0.0.1", 0), _FixtureScoreHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        config = ExperimentConfig(
            scenario="extreme", engine="fixed-ratio:0.5", scorer="remote",
            trials=len(SP_FIXTURE_VALUES), seed=0, out_dir=tmp_path / "out",
            workers=1,
            remote_scorer=RemoteScorerConfig(
                base_url=f"http://127.0.0.1:{server.server_address[1]}",
                timeout=5.0, max_retries=0,
            ),
        )
        result = run_experiment(config)
    finally:
        server.shutdown()
    recorded = [trial.metrics.sp for trial in result.trials]
    assert recorded == SP_FIXTURE_VALUES
    on_disk = [
        json.loads((tmp_path / "out" / f"trial_{i:03d}.json").read_text())["metrics"]["sp"]
        for i in range(len(SP_FIXTURE_VALUES))
    ]
    assert on_disk == SP_FIXTURE_VALUES
    print("PASS sp-service bridge: SP values equal the fixture-server values")
