import io
import subprocess
import sys

import pytest

from conftest import DATA
from slhr.cli import main

GRAMMAR = str(DATA / "example.slhr")
SCRIPT = str(DATA / "example.script")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("engine", ["tableau", "naive", "oracle"])
def test_traverse_example(engine):
    assert run("traverse", GRAMMAR, "--script", SCRIPT, "--engine", engine) == (0, "1\n6\n7\n4\n")


def test_expand_golden():
    assert run("expand", GRAMMAR) == (0, (DATA / "example.graph").read_text())


def test_expand_budget():
    code, _ = run("expand", GRAMMAR, "--max-vertices", "5")
    assert code == 1


def test_validate_and_stats():
    code, out = run("validate", GRAMMAR)
    assert code == 0 and "kappa=3 height=3 r=2" in out
    code, out = run("stats", GRAMMAR)
    stats = dict(line.split() for line in out.splitlines())
    assert code == 0
    assert stats["kappa"] == "3" and stats["rules"] == "4" and stats["traverse_entries"] == "28"
    assert int(stats["tableaux"]) <= 28 and int(stats["total_cells"]) > 0


def test_validate_star_names_conflict(tmp_path, capsys):
    f = tmp_path / "star3.slhr"
    code, text = run("gen", "star", "3")
    f.write_text(text)
    code, _ = run("validate", str(f))
    err = capsys.readouterr().err
    assert code == 1
    assert "UniqueLabelViolation" in err and "vertex 2" in err and "'a'" in err and "index 1" in err


def test_relaxed_mode(tmp_path, capsys):
    f = tmp_path / "g.slhr"
    f.write_text(
        "terminal a 2\nnonterminal A 1\nstart\n  vertices 2\n  edge a 1 2\nend\n"
        "rule A\n  vertices 1\n  ext 1\nend\n"
    )
    assert run("validate", str(f))[0] == 1
    assert run("validate", str(f), "--relaxed")[0] == 0
    assert "unreachable" in capsys.readouterr().err


def test_bench_output():
    code, out = run("bench", GRAMMAR, "--steps", "200", "--seed", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("steps=200")
    assert [l.split()[0] for l in lines[1:]] == ["tableau", "naive", "oracle"]
    code, out = run("bench", GRAMMAR, "--steps", "50", "--engines", "naive")
    assert len(out.splitlines()) == 2


def test_gen_random_and_family():
    code, out = run("gen", "path", "2")
    assert code == 0 and out.startswith("terminal a 2\n")
    assert run("gen", "random", "4")[0] == 0
    assert run("gen", "path", "0")[0] == 2


def test_usage_errors(tmp_path):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("expand", str(tmp_path / "missing.slhr"))[0] == 2
    assert run("traverse", GRAMMAR)[0] == 2


def test_domain_error_on_bad_script(tmp_path):
    s = tmp_path / "s.txt"
    s.write_text("start 1\nstep b 1 2\n")
    assert run("traverse", GRAMMAR, "--script", str(s))[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "slhr", "traverse", GRAMMAR, "--script", SCRIPT],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1\n6\n7\n4\n"
