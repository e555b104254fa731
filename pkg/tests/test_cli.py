import csv
import io
import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

import tigroups.cli as cli
from tigroups.theorems import TheoremReport


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv(cli.CONFIG_ENV, raising=False)
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli.main, list(args), catch_exceptions=False)


def test_verify_json_small(runner):
    res = run(runner, "verify", "--max-order", "12")
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["checked"] == len(doc["reports"]) > 0
    assert doc["summary"]["held"] == doc["summary"]["checked"]
    assert doc["falsification_candidates"] == 0
    assert "summary:" in res.stderr
    reports = [TheoremReport.from_dict(r) for r in doc["reports"]]
    assert reports == sorted(reports, key=lambda r: r.sort_key)
    assert all(r.group_order <= 12 for r in reports)


def test_report_schema(runner):
    doc = json.loads(run(runner, "verify", "--max-order", "6", "--theorems", "T1").stdout)
    keys = {"group_name", "group_order", "prime", "theorem_id", "lhs", "rhs", "rhs_case",
            "biconditional_holds", "falsification_candidate", "witness"}
    assert all(set(r) == keys for r in doc["reports"])
    assert set(doc) == {"reports", "summary", "skipped", "coverage", "unexercised_cases",
                        "falsification_candidates", "stopped_early"}
    assert set(doc["coverage"]) == {"T1"}


def test_deterministic_and_parallel(runner):
    a = run(runner, "verify", "--max-order", "24").stdout
    b = run(runner, "verify", "--max-order", "24").stdout
    c = run(runner, "verify", "--max-order", "24", "--jobs", "3").stdout
    assert a == b == c


def test_primes_filter(runner):
    doc = json.loads(run(runner, "verify", "--max-order", "30", "--primes", "3").stdout)
    assert doc["reports"] and {r["prime"] for r in doc["reports"]} == {3}
    # C1 is only reported at the smallest prime divisor
    assert all(r["group_order"] % 2 for r in doc["reports"] if r["theorem_id"] == "C1")


def test_theorem_filter_and_csv(runner):
    res = run(runner, "verify", "--max-order", "8", "--theorems", "T5,T1", "--format", "csv")
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.stdout)))
    assert tuple(rows[0]) == cli.CSV_COLUMNS
    assert {r[3] for r in rows[1:]} == {"T1", "T5"}


def test_text_format(runner):
    res = run(runner, "verify", "--max-order", "6", "--format", "text")
    lines = res.stdout.splitlines()
    assert any(line.startswith("ok   S3") for line in lines)
    assert "case coverage:" in lines
    assert lines[-1].startswith("summary: ")


def test_failure_exit_code(runner, monkeypatch):
    real = cli.verify

    def broken(G, lattice, p, theorem_id):
        r = real(G, lattice, p, theorem_id)
        if G.name == "S3" and theorem_id == "T1":
            r.biconditional_holds = False
        return r

    monkeypatch.setattr(cli, "verify", broken)
    res = run(runner, "verify", "--max-order", "6", "--format", "text")
    assert res.exit_code == 1
    assert any(line.startswith("FAIL S3") for line in res.stdout.splitlines())
    assert json.loads(res.stdout.splitlines()[-1][len("summary: "):])["failed"] >= 1

    res = run(runner, "verify", "--max-order", "12", "--fail-fast")
    doc = json.loads(res.stdout)
    assert res.exit_code == 1 and doc["stopped_early"]
    names = [r["group_name"] for r in doc["reports"]]
    # S3 is the first family group; nothing after it in corpus order is checked
    assert "S3" in names and "A4" not in names and "D3" not in names


def test_malformed_corpus_exit_2(runner, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("S3; 3; (0 1 2)\nX; 3; (0 1\n")
    res = run(runner, "verify", "--corpus", str(bad))
    assert res.exit_code == 2
    assert "line 2" in res.stderr


def test_missing_corpus_exit_2(runner, tmp_path):
    res = run(runner, "verify", "--corpus", str(tmp_path / "nope.txt"))
    assert res.exit_code == 2
    assert "cannot read" in res.stderr


@pytest.mark.parametrize(
    "args",
    [
        ("--max-order", "1000"),
        ("--max-order", "0"),
        ("--theorems", "T4"),
        ("--primes", "4"),
        ("--primes", "x"),
        ("--jobs", "0"),
    ],
)
def test_bad_options_exit_2(runner, args):
    assert run(runner, "verify", *args).exit_code == 2


def test_config_file(runner, tmp_path, monkeypatch):
    extra = tmp_path / "g.txt"
    extra.write_text("S6; 6; (0 1 2 3 4 5); (0 1)\nA4p; 4; (0 1 2); (0 1)(2 3)\n")
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_order": 12, "theorems": "T1", "corpus": str(extra), "format": "json"}))
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    res = run(runner, "verify")
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert {r["theorem_id"] for r in doc["reports"]} == {"T1"}
    assert "A4p" in {r["group_name"] for r in doc["reports"]}
    assert doc["skipped"] == [{"group": "S6", "order": 720, "reason": "order 720 exceeds max_order 12"}]
    assert "skipped: S6 (order 720)" in res.stderr
    # command-line options override the file
    doc = json.loads(run(runner, "verify", "--theorems", "T2").stdout)
    assert {r["theorem_id"] for r in doc["reports"]} == {"T2"}


@pytest.mark.parametrize("content", ["{not json", '{"colour": 1}', "[1]", '{"max_order": 4096}'])
def test_bad_config_exit_2(runner, tmp_path, monkeypatch, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    assert run(runner, "verify").exit_code == 2


def _report(res):
    line = res.stdout.strip().splitlines()[-1]
    assert line.startswith("report: ")
    return json.loads(line[len("report: "):])


def test_explain_examples(runner):
    res = run(runner, "explain", "S3", "2", "T1")
    assert res.exit_code == 0
    last = _report(res)
    assert last["rhs_case"] == "C2" and last["biconditional_holds"]
    last = _report(run(runner, "explain", "Q8", "2", "T1"))
    assert last["rhs_case"] == "C1_subnormal"
    res = run(runner, "explain", "S4", "2", "t1")
    last = _report(res)
    assert not last["lhs"] and "order 8" in last["witness"]
    assert "frobenius" in res.stdout.lower()


def test_explain_errors(runner):
    assert run(runner, "explain", "Nope", "2", "T1").exit_code == 2
    assert run(runner, "explain", "S3", "5", "T1").exit_code == 2


def test_list_corpus(runner, tmp_path):
    res = run(runner, "list-corpus", "--max-order", "8")
    names = [line.split("\t")[0] for line in res.stdout.splitlines()]
    assert "S3" in names and "Q8" in names and "S4" not in names
    extra = tmp_path / "g.txt"
    extra.write_text("Mine; 3; (0 1 2)\n")
    res = run(runner, "list-corpus", "--max-order", "8", "--corpus", str(extra))
    assert res.stdout.splitlines()[-1].startswith("Mine\t3")


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "tigroups.cli", "verify", "--max-order", "4", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0 and "summary:" in out.stdout
