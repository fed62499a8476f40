import io
import json
import subprocess
import sys

import pytest

from fullyonline import cli
from fullyonline.core import serialize_stream
from fullyonline.fixtures import FIG1_TEXTS, SECTION2_OPS, round_robin_ops


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines() if line], err


@pytest.fixture
def fig1_file(tmp_path):
    p = tmp_path / "fig1.txt"
    p.write_text(serialize_stream(round_robin_ops(FIG1_TEXTS)), encoding="utf-8")
    return str(p)


def test_build_section2(capsys, tmp_path):
    p = tmp_path / "u.txt"
    p.write_text(serialize_stream(SECTION2_OPS), encoding="utf-8")
    code, (stats,), _ = run(capsys, "build", str(p))
    assert code == 0
    assert stats["N"] == 15 and stats["texts"] == 3 and stats["lengths"] == [5, 4, 6]
    assert stats["dawg"]["deletions"] == 0


def test_build_empty_stdin(capsys, monkeypatch):
    code, (stats,), _ = run(capsys, "build", stdin="", monkeypatch=monkeypatch)
    assert code == 0
    assert stats["N"] == 0 and stats["texts"] == 0 and stats["lengths"] == []
    assert stats["dawg"]["edges"] == 0 and stats["stree"]["leaves_created"] == 0


def test_build_snapshots(capsys, fig1_file, tmp_path):
    out = tmp_path / "snap"
    code, _, _ = run(capsys, "build", fig1_file, "--snapshot-every", "4", "--out", str(out))
    assert code == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == sorted(f"step_{i}.{s}.dot" for i in (4, 8, 12) for s in ("dawg", "lpt", "stree"))


def test_parse_error_exit(capsys, monkeypatch):
    code, _, err = run(capsys, "build", stdin="1\ta\n2\tbad\n", monkeypatch=monkeypatch)
    assert code == 2 and "line 2" in err


def test_query(capsys, fig1_file):
    code, rows, _ = run(capsys, "query", fig1_file, "--pattern", "ab", "--pattern", "ca",
                        "--report")
    assert code == 0
    assert rows[0] == {"pattern": "ab", "found": True, "count": 4,
                       "occurrences": [[1, 3], [2, 1], [2, 3], [3, 2]]}
    assert rows[1]["found"] is False and rows[1]["count"] == 0


def test_query_needs_a_pattern(capsys, fig1_file):
    code, _, err = run(capsys, "query", fig1_file)
    assert code == 2 and "pattern" in err


def test_export_dot(capsys, fig1_file, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "export-dot", fig1_file, "--finalize", "--out", str(a))
    run(capsys, "export-dot", fig1_file, "--finalize", "--out", str(b))
    for name in ("dawg.dot", "lpt.dot", "stree.dot"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert (a / "stree.dot").read_text(encoding="utf-8").count("(lazy)") == 0


def test_export_dot_live_tree_has_lazy_edges(capsys, fig1_file, tmp_path):
    run(capsys, "export-dot", fig1_file, "--out", str(tmp_path))
    assert (tmp_path / "stree.dot").read_text(encoding="utf-8").count("(lazy)") > 0


def test_export_dot_empty(capsys, monkeypatch, tmp_path):
    code, _, _ = run(capsys, "export-dot", "--out", str(tmp_path), stdin="", monkeypatch=monkeypatch)
    assert code == 0
    for name in ("dawg.dot", "lpt.dot", "stree.dot"):
        text = (tmp_path / name).read_text(encoding="utf-8")
        edges = [line for line in text.splitlines() if "->" in line]
        # only the LPT root's dashed link to the suffix-tree root remains
        assert all("dashed" in line for line in edges) and len(edges) <= 1


def test_export_dot_deterministic_random(capsys, tmp_path):
    from fullyonline.verify import random_ops

    p = tmp_path / "r.txt"
    p.write_text(serialize_stream(random_ops(300, 3, 3, seed=5)), encoding="utf-8")
    run(capsys, "export-dot", str(p), "--out", str(tmp_path / "x"))
    run(capsys, "export-dot", str(p), "--out", str(tmp_path / "y"))
    for name in ("dawg.dot", "lpt.dot", "stree.dot"):
        assert (tmp_path / "x" / name).read_bytes() == (tmp_path / "y" / name).read_bytes()


def test_verify_fixtures(capsys):
    code, rows, _ = run(capsys, "verify")
    assert code == 0
    cases = {r["case"]: r for r in rows if "case" in r}
    for name in ("fig1", "fig4", "fig7", "fig8", "fig9", "round-robin"):
        assert cases[name]["ok"] and cases[name]["reverse_ok"]
    assert rows[-1]["ok"] is True


@pytest.mark.parametrize("oracle", ["full", "walkup"])
def test_verify_fuzz(capsys, oracle):
    code, rows, _ = run(capsys, "verify", "--fuzz", "3", "--length", "150", "--oracle", oracle)
    assert code == 0 and rows[-1] == {"cases": 3, "failed": 0, "ok": True}


@pytest.mark.parametrize("oracle", ["full", "walkup"])
def test_verify_dump_oracle(capsys, fig1_file, oracle):
    code, rows, _ = run(capsys, "verify", fig1_file, "--dump-oracle", "--oracle", oracle)
    assert code == 0
    dump = rows[0]["oracle"]
    if oracle == "walkup":
        assert dump["kind"] == "walkup"
    else:
        assert set(dump) >= {"heavy", "light_trees", "induced"}


def test_verify_failure_echoes_prefix(capsys, monkeypatch, tmp_path):
    from fullyonline.verify import StepVerifier

    monkeypatch.setattr(StepVerifier, "check_stree",
                        lambda self: ["boom"] if len(self.ops) == 3 else [])
    p = tmp_path / "u.txt"
    p.write_text(serialize_stream(SECTION2_OPS), encoding="utf-8")
    code, rows, err = run(capsys, "verify", str(p))
    assert code == 1 and rows[-1]["failed"] == 1
    assert serialize_stream(SECTION2_OPS[:3]) in err


def test_verify_guard(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--max-n", "5000")
    assert code == 2 and "guard" in err
    code, _, err = run(capsys, "verify", "--max-n", "50")
    assert code == 2


def test_bench(capsys):
    code, rows, _ = run(capsys, "bench", "--max-n", "3000", "--scaling")
    assert code == 0 and len(rows) == 2
    assert rows[0]["n"] == 3000 and rows[1]["n"] == 6000 and rows[1]["ratio"] > 0
    assert rows[0]["deletions"] == 0 and rows[0]["dawg_edges_created"] <= 3 * 3000


def test_module_entry_point(tmp_path):
    p = tmp_path / "u.txt"
    p.write_text(serialize_stream(SECTION2_OPS), encoding="utf-8")
    out = subprocess.run([sys.executable, "-m", "fullyonline", "build", str(p)],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["N"] == 15
