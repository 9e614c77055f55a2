import json

import pytest
from click.testing import CliRunner

from dynsparse.cli import METRIC_COLUMNS, cli


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


@pytest.fixture
def graphs(runner, tmp_path):
    g = tmp_path / "g.el"
    tr = tmp_path / "t.jsonl"
    r = invoke(runner, "gen", "random", "--n", "10", "--m", "24",
               "--seed", "3", "--out", str(g))
    assert r.exit_code == 0
    r = invoke(runner, "gen", "trace", "--g", str(g), "--events", "12",
               "--seed", "1", "--out", str(tr))
    assert r.exit_code == 0
    return g, tr


def test_gen_expander_contract(runner, tmp_path):
    out = tmp_path / "g.el"
    r = invoke(runner, "gen", "expander", "--n", "16", "--d", "16",
               "--out", str(out))
    assert r.exit_code == 0
    header = out.read_text().splitlines()[0].split()
    assert header[0] == "16"


def test_decompose_json(runner, graphs):
    g, _ = graphs
    r = invoke(runner, "decompose", "--g", str(g), "--phi", "0.1")
    assert r.exit_code == 0
    obj = json.loads(r.output)
    assert obj["certified"] is True


def test_prune_deterministic(runner, graphs, tmp_path):
    g = tmp_path / "c.el"
    invoke(runner, "gen", "circulant", "--n", "16",
           "--offsets", "1,2,3,4,5,6,7", "--copies", "2", "--out", str(g))
    a = invoke(runner, "prune", "--g", str(g), "--phi", "0.3",
               "--mode", "worstcase", "--deletions", "3", "--seed", "5")
    b = invoke(runner, "prune", "--g", str(g), "--phi", "0.3",
               "--mode", "worstcase", "--deletions", "3", "--seed", "5")
    assert a.exit_code == 0 and a.output == b.output


def test_maintain_metrics_csv_header(runner, graphs, tmp_path):
    g, tr = graphs
    out = tmp_path / "m.csv"
    rep = tmp_path / "rep.json"
    r = invoke(runner, "maintain", "--kind", "cut", "--mode", "amortized",
               "--eps", "1.0", "--g", str(g), "--trace", str(tr),
               "--verify-every", "4", "--seed", "0",
               "--out", str(out), "--report", str(rep))
    assert r.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(METRIC_COLUMNS)
    assert len(lines) == 13  # header + one row per event
    assert json.loads(rep.read_text())["ok"] is True


def test_trace_command_metrics(runner, tmp_path):
    out = tmp_path / "adv.csv"
    r = invoke(runner, "trace", "--strategy", "oblivious", "--stages", "4",
               "--seed", "0", "--out", str(out))
    assert r.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "stage,op,|H|,recourse,min_ratio,max_ratio," \
                       "promise_ok,violations"


def test_bench_lists_kernels(runner):
    r = invoke(runner, "bench", "--sizes", "10", "--trials", "1")
    assert r.exit_code == 0
    assert "portable" in r.output


def test_verify_spanner_exit_codes(runner, graphs, tmp_path):
    g, _ = graphs
    # identical graph: a perfect spanner at any stretch
    r = invoke(runner, "verify", "--kind", "spanner", "--g", str(g),
               "--h", str(g), "--t", "50")
    assert r.exit_code == 0
    r = invoke(runner, "verify", "--kind", "cut", "--g", str(g),
               "--h", str(g), "--eps", "0.1")
    assert r.exit_code == 0


def test_verify_failure_exits_one(runner, graphs, tmp_path):
    g, _ = graphs
    other = tmp_path / "h.el"
    invoke(runner, "gen", "circulant", "--n", "10", "--offsets", "1,2",
           "--out", str(other))
    r = runner.invoke(cli, ["verify", "--kind", "cut", "--g", str(g),
                            "--h", str(other), "--eps", "0.1"])
    assert r.exit_code == 1


def test_usage_error_exits_two(runner):
    r = runner.invoke(cli, ["decompose", "--g", "/nonexistent", "--phi",
                            "0.1"])
    assert r.exit_code == 2


def test_flow_json(runner, graphs, tmp_path):
    g, _ = graphs
    caps = tmp_path / "caps.txt"
    pairs = tmp_path / "pairs.txt"
    caps.write_text("0 inf\n9 inf\n" +
                    "".join(f"{v} 3.0\n" for v in range(1, 9)))
    pairs.write_text("0 9 1\n")
    r = invoke(runner, "flow", "--mode", "throughput", "--g", str(g),
               "--caps", str(caps), "--pairs", str(pairs), "--eps", "0.3")
    assert r.exit_code == 0
    obj = json.loads(r.output)
    assert obj["feasible"] is True
    assert obj["total_value"] > 0
