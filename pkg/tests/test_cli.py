"""End-to-end CLI runs, in process via main(argv)."""

import json
import subprocess
import sys

import pytest

from polarswitch.cli import main
from polarswitch.graph import (Graph, degree_sequence, graph6_read,
                               graph6_write)


def run(*argv):
    return main([str(a) for a in argv])


def read_json(path):
    return json.loads(path.read_text())


def write_g6(path, graph):
    path.write_text(graph6_write(graph) + "\n")


@pytest.fixture(scope="module")
def built(tmp_path_factory):
    """One Sp(4,2) build shared by the read-only subcommand tests."""
    out = tmp_path_factory.mktemp("build") / "sp42.g6"
    assert run("build", "--kind", "sp", "-d", 2, "-q", 2, "-o", out) == 0
    return out


def test_build_artifacts(built, capsys):
    g = graph6_read(built.read_text())
    assert g.n == 15
    assert degree_sequence(g) == (6,) * 15
    side = read_json(built.with_suffix(".g6.json"))
    assert side["vertices"] == 15
    assert side["edges"] == 45
    assert side["expected_params"] == [15, 6, 1, 3]
    assert side["kind"] == "sp" and side["d"] == 2 and side["q"] == 2
    assert len(side["points"]) == 15


def test_build_dimacs(tmp_path):
    out = tmp_path / "sp42.dim"
    assert run("build", "--kind", "sp", "-d", 2, "-q", 2,
               "-o", out, "--format", "dimacs") == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p edge 15 45"
    assert sum(1 for ln in lines if ln.startswith("e ")) == 45


def test_build_guard_trips(tmp_path, capsys):
    out = tmp_path / "huge.g6"
    assert run("build", "--kind", "o-minus", "-d", 9, "-q", 2, "-o", out) == 4
    assert "error:" in capsys.readouterr().err
    assert not out.exists()


def test_check_pass_and_expect(built, tmp_path, capsys):
    assert run("check", built) == 0
    assert "strongly regular" in capsys.readouterr().out
    report = tmp_path / "report.json"
    assert run("check", built, "--expect", "15,6,1,3", "--json", report) == 0
    assert read_json(report)["ok"] is True
    assert run("check", built, "--expect", "15,6,1,2") == 2
    err = capsys.readouterr().err
    assert "expected (15, 6, 1, 2)" in err


def test_check_rejects_non_srg(tmp_path, capsys):
    hexagon = tmp_path / "c6.g6"
    write_g6(hexagon, Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)]))
    assert run("check", hexagon) == 2
    assert "verification failed" in capsys.readouterr().err


def test_check_bad_expect_string(built):
    assert run("check", built, "--expect", "1,2,3") == 4


def test_spectrum_lines_and_json(tmp_path, capsys):
    k4 = tmp_path / "k4.g6"
    write_g6(k4, Graph.from_edges(4, [(i, j) for i in range(4)
                                      for j in range(i + 1, 4)]))
    report = tmp_path / "spec.json"
    assert run("spectrum", k4, "--json", report) == 0
    assert capsys.readouterr().out.splitlines() == ["1 4"]
    side = read_json(report)
    assert side["triangles"] == 4
    assert side["spectrum"] == [[1, 4]]


@pytest.fixture(scope="module")
def gamma1_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("gamma1") / "sp62"
    assert main(["gamma1", "--kind", "sp", "-d", "3", "-q", "2",
                 "--out-dir", str(out)]) == 0
    return out


ARTIFACTS = ["base.g6", "switched.g6", "spec.txt", "certificate.txt",
             "summary.json"]


def test_gamma1_artifacts(gamma1_dir):
    for name in ARTIFACTS:
        assert (gamma1_dir / name).exists()
    summary = read_json(gamma1_dir / "summary.json")
    assert summary["params"] == [63, 30, 13, 15]
    assert summary["certified"] is True
    assert summary["single_swap"]["witness_value"] == 11
    assert summary["certificate"]["value"] == 11
    assert summary["certificate"]["reason"] == "triangles"
    report = (gamma1_dir / "certificate.txt").read_text()
    assert "11" in report and "not isomorphic" in report.lower()
    base = graph6_read((gamma1_dir / "base.g6").read_text())
    switched = graph6_read((gamma1_dir / "switched.g6").read_text())
    assert base.n == switched.n == 63
    assert base != switched


def test_gamma1_reruns_byte_identical(gamma1_dir, tmp_path):
    rerun = tmp_path / "again"
    assert main(["gamma1", "--kind", "sp", "-d", "3", "-q", "2",
                 "--out-dir", str(rerun)]) == 0
    for name in ARTIFACTS:
        assert (rerun / name).read_bytes() == (gamma1_dir / name).read_bytes()


def test_gamma1_seeded(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("gamma1", "--kind", "o-plus", "-d", 3, "-q", 2,
                   "--out-dir", out, "--seed", 5) in (0, 3)
    for name in ARTIFACTS:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert read_json(a / "summary.json")["seed"] == 5


def test_switch_replays_gamma1_spec(gamma1_dir, tmp_path, capsys):
    out = tmp_path / "replay.g6"
    assert run("switch", gamma1_dir / "spec.txt", "-o", out, "--check") == 0
    assert "(verified)" in capsys.readouterr().out
    assert out.read_bytes() == (gamma1_dir / "switched.g6").read_bytes()
    side = read_json(tmp_path / "replay.g6.json")
    assert side["identity"] is False
    assert side["checked_params"] == [63, 30, 13, 15]


def test_compare_certifies(gamma1_dir, tmp_path, capsys):
    report = tmp_path / "cert.json"
    assert run("compare", gamma1_dir / "base.g6", gamma1_dir / "switched.g6",
               "--json", report) == 0
    assert "not isomorphic" in capsys.readouterr().out.lower()
    side = read_json(report)
    assert side["non_isomorphic"] is True
    assert side["certificate"]["vertices"] == [63, 63]


def test_compare_self_is_inconclusive(gamma1_dir, capsys):
    assert run("compare", gamma1_dir / "base.g6", gamma1_dir / "base.g6") == 3
    assert "inconclusive" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run("check", tmp_path / "nope.g6") == 4


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        run("frobnicate")
    assert info.value.code == 4


def test_version_subprocess():
    proc = subprocess.run([sys.executable, "-m", "polarswitch", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("polarswitch ")
