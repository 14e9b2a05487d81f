import json
import subprocess
import sys

import pytest

from deltasieve import cli


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "deltasieve.cli", *args],
        capture_output=True,
        text=True,
        **kw,
    )


def test_usage_error_exit_2():
    r = run_cli(["verify"])  # missing --suite
    assert r.returncode == 2
    r = run_cli(["nonsense"])
    assert r.returncode == 2


def test_verify_density_json():
    r = run_cli(["verify", "--suite", "density", "--format", "json"])
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["ok"] is True
    names = [c["name"] for c in payload["suites"][0]["checks"]]
    assert "sigma_small_enumeration" in names
    assert "one_third_factor_exact" in names
    # header goes to stderr, not stdout
    assert "deltasieve" in r.stderr
    assert "wall-clock" in r.stderr


def test_verify_payload_deterministic():
    a = run_cli(["verify", "--suite", "poisson", "--seed", "42", "--format", "json"])
    b = run_cli(["verify", "--suite", "poisson", "--seed", "42", "--format", "json"])
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_constant_json():
    r = run_cli(["constant", "--theorem", "2", "--prime-bound", "1000"])
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["theorem"] == 2
    assert payload["value_lo"] <= payload["value_hi"]
    assert payload["value_hi"] - payload["value_lo"] <= 2 * payload["tail_bound"] + 1e-30
    r1 = run_cli(["constant", "--theorem", "1", "--prime-bound", "1000"])
    p1 = json.loads(r1.stdout)
    assert p1["value_lo"] <= payload["value_hi"] and payload["value_lo"] <= p1["value_hi"]


def test_count_csv(tmp_path):
    out = tmp_path / "counts.csv"
    r = run_cli(["count", "--X", "1,2", "--mode", "exact", "--out", str(out)])
    assert r.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].split(",")[:3] == ["X", "mode", "count_or_sum"]
    assert len(lines) == 3
    first = lines[1].split(",")
    assert float(first[2]) == 4.0


def test_count_payload_deterministic_modulo_seconds(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        r = run_cli(["count", "--X", "1,2", "--out", str(out)])
        assert r.returncode == 0
        rows = [line.split(",") for line in out.read_text().strip().splitlines()]
        outs.append([row[:-1] for row in rows])  # drop the seconds column
    assert outs[0] == outs[1]


def test_count_bad_X():
    r = run_cli(["count", "--X", "abc"])
    assert r.returncode == 2


def test_balance_paper():
    r = run_cli(["balance", "--preset", "paper"])
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["exponent"] == "184/27"
    assert payload["t"] == "124/27" and payload["kappa"] == "16/31"
    assert abs(payload["exponent_decimal"] - (7 - 5 / 27)) < 1e-12


def test_balance_terms_file(tmp_path):
    f = tmp_path / "terms.json"
    f.write_text(json.dumps([{"const": "6"}]))
    r = run_cli(["balance", "--terms", str(f)])
    assert r.returncode == 0
    assert json.loads(r.stdout)["exponent"] == "6"
    bad = tmp_path / "bad.json"
    bad.write_text("[]")
    assert run_cli(["balance", "--terms", str(bad)]).returncode == 2


def test_time_budget_guard():
    r = run_cli(
        ["verify", "--suite", "expsum"],
        env={"DELTASIEVE_MAX_SECONDS": "0.0", "PATH": "/usr/bin:/bin"},
    )
    assert r.returncode == 1
    assert "DELTASIEVE_MAX_SECONDS" in r.stderr


def test_verify_failure_path(monkeypatch, capsys):
    from deltasieve import suites

    def fake_run_suite(name, seed=0):
        rep = suites.SuiteReport("expsum", seed)
        rep.checks.append(
            suites.CheckResult("exptrans_exhaustive_l15", False, 4.2, "l=13 m=2 n=-1")
        )
        return [rep]

    monkeypatch.setattr(cli, "run_suite", fake_run_suite)
    ap = cli.build_parser()
    args = ap.parse_args(["verify", "--suite", "expsum", "--format", "text"])
    rc = args.func(args)
    captured = capsys.readouterr()
    assert rc == 1
    assert "exptrans_exhaustive_l15" in captured.err
    assert "l=13 m=2 n=-1" in captured.err


def test_parser_flags():
    ap = cli.build_parser()
    ns = ap.parse_args(["verify", "--suite", "all", "--seed", "7"])
    assert ns.suite == "all" and ns.seed == 7
    with pytest.raises(SystemExit):
        ap.parse_args(["verify", "--suite", "bogus"])
