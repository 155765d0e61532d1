import subprocess
import sys

import pytest

from qudit_compiler import formats
from qudit_compiler.cli import main

from conftest import DATA


def run(*args):
    return main([str(a) for a in args])


def test_compile_synth_verify_pipeline(tmp_path, capsys):
    qct = DATA / "ccz_fig1.qct"
    assert run("compile", qct, "--method", "ms", "-o", tmp_path / "c.imp") == 0
    assert "m = 4" in capsys.readouterr().out
    assert run("synth", tmp_path / "c.imp", "-o", tmp_path / "c.qct") == 0
    assert run("verify", qct, tmp_path / "c.qct") == 0
    assert capsys.readouterr().out.strip().endswith("equal")


def test_compile_legacy_then_optimize(tmp_path, capsys):
    sig = DATA / "ccz.sig"
    assert run("compile", sig, "--method", "legacy", "-o", tmp_path / "l.imp") == 0
    assert "m = 7" in capsys.readouterr().out
    assert run("optimize", tmp_path / "l.imp", "--dam", "--seed", "1", "-o", tmp_path / "d.imp") == 0
    imp = formats.load(tmp_path / "d.imp")
    assert 4 <= imp.m <= 6
    assert run("synth", tmp_path / "d.imp", "-o", tmp_path / "d.qct") == 0
    assert run("verify", DATA / "ccz_fig1.qct", tmp_path / "d.qct") == 0


def test_verify_mismatch(tmp_path):
    (tmp_path / "a.qct").write_text("QUDITS 5 2\nM 0 1\n")
    (tmp_path / "b.qct").write_text("QUDITS 5 2\nM 0 2\n")
    assert run("verify", tmp_path / "a.qct", tmp_path / "a.qct") == 0
    assert run("verify", tmp_path / "a.qct", tmp_path / "b.qct") == 1


def test_parse_error_exit(tmp_path, capsys):
    (tmp_path / "bad.sig").write_text("SIG 5 3\n3 2 1 1\n")
    assert run("compile", tmp_path / "bad.sig", "-o", tmp_path / "x.imp") == 2
    assert "bad.sig:2:" in capsys.readouterr().err
    assert run("compile", tmp_path / "missing.sig", "-o", tmp_path / "x.imp") == 2
    assert run("nonsense") == 2


def test_bfs_exhausted_exit(tmp_path):
    assert run("compile", DATA / "ccz.sig", "--method", "bfs", "--m-max", "3", "-o", tmp_path / "x.imp") == 3
    assert run("compile", DATA / "ccz.sig", "--method", "bfs", "--m-max", "4", "-o", tmp_path / "x.imp") == 0
    assert formats.load(tmp_path / "x.imp").m == 4


def test_dimension_too_large_exit(tmp_path):
    (tmp_path / "big.qct").write_text("QUDITS 11 6\nM 0 1\n")
    assert run("verify", tmp_path / "big.qct", tmp_path / "big.qct") == 4


def test_extract(tmp_path, capsys):
    (tmp_path / "lin.qct").write_text("QUDITS 5 2\nSUM 0 1\nM 1 1\nS 0 1\n")
    out = tmp_path / "o.sig"
    assert run("extract", tmp_path / "lin.qct", "-o", out) == 2
    assert run("extract", tmp_path / "lin.qct", "-o", out, "--allow-linear") == 0
    assert (tmp_path / "o.sig.lin").read_text().startswith("LIN 5 2")
    S = formats.load(out)
    assert S[(0, 0, 0)] == 1 and S[(0, 0, 1)] == 1
    assert run("extract", DATA / "ccz_fig1.qct", "-o", tmp_path / "f.sig") == 0
    assert formats.load(tmp_path / "f.sig") == formats.load(DATA / "ccz.sig")


def test_bench_csv_reproducible(tmp_path, capsys):
    args = ["bench", "--rows", "ccz,random", "--d", "5", "--instances", "3", "--omit-times", "--seed", "7"]
    assert run(*args, "--csv", tmp_path / "a.csv") == 0
    assert run(*args, "--csv", tmp_path / "b.csv", "--threads", "2") == 0
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    lines = a.decode().splitlines()
    assert lines[0] == "circuit,d,n,m_leg,m_ms,m_dam,t_leg_s,t_ms_s,t_dam_s"
    assert lines[1].startswith("CCZ,5,3,7,4,")
    assert lines[2].startswith("Random,5,3,")


def test_stats(capsys):
    assert run("stats", "--p-opt", "--instances", "2", "--runs", "5") == 0
    out = capsys.readouterr().out
    assert "p_opt =" in out and "mu <= m held" in out
    assert run("stats") == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qudit_compiler", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "compile" in proc.stdout
