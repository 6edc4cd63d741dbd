import json
import subprocess
import sys

import numpy as np
import pytest

from coupled_sheets.cli import main
from coupled_sheets.continuation import loop_around
from coupled_sheets.paths import circle_path, save_path, segment_path
from coupled_sheets.reports import fmt, read_trace_csv, trace_csv

OSC = ["--nu", "2", "--omega", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def loop4(tmp_path):
    f = tmp_path / "loop4.json"
    save_path(circle_path(4, 2, 64), f)
    return str(f)


def test_eval_golden(capsys):
    assert run(capsys, "eval", *OSC, "--g", "0,0", "--sheet", "1") == (0, "3.0\n", "")
    assert run(capsys, "eval", *OSC, "--g", "4,0", "--sheet", "1")[1] == "2.23606798\n"
    code, out, _ = run(capsys, "eval", *OSC, "--g=-1,0", "--sheet", "4")
    assert code == 0 and out == fmt(-np.sqrt(5 + np.sqrt(15))) + "\n"


def test_eval_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["eval", *OSC, "--g", "0,0", "--sheet", "5"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["eval", *OSC, "--g", "a,b", "--sheet", "1"])
    assert e.value.code == 2
    code, _, err = run(capsys, "eval", "--nu", "1", "--omega", "1", "--g", "0", "--sheet", "1")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "eval", *OSC, "--g", "0,3", "--sheet", "2")
    assert code == 2


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", *OSC, "--g", "1,1", "--sheet", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["sheet"] == 2 and len(d["E"]) == 2


def test_monodromy(capsys, loop4, tmp_path):
    code, out, _ = run(capsys, "monodromy", *OSC, "--path", loop4, "--from-sheet", "1")
    assert code == 0 and out.splitlines()[0] == "(1 2)"
    assert run(capsys, "monodromy", *OSC, "--path", loop4)[1].splitlines()[0] == "(1 2)(3 4)"
    assert run(capsys, "monodromy", *OSC, "--path", loop4, "--from-sheet", "3")[1].splitlines()[0] == "(3 4)"
    f = tmp_path / "outer.json"
    save_path(circle_path(3j, 1.5, 64), f)
    assert run(capsys, "monodromy", *OSC, "--path", str(f), "--from-sheet", "2")[1].splitlines()[0] == "(2 3)"
    f0 = tmp_path / "zero.json"
    save_path(circle_path(0, 1, 64), f0)
    assert run(capsys, "monodromy", *OSC, "--path", str(f0))[1].splitlines()[0] == "()"


def test_monodromy_open_path_rejected(capsys, tmp_path):
    f = tmp_path / "seg.json"
    save_path(segment_path(0, 1 + 1j), f)
    assert run(capsys, "monodromy", *OSC, "--path", str(f))[0] == 2


def test_trace_closed_loop(capsys, loop4):
    code, out, _ = run(capsys, "trace", *OSC, "--path", loop4)
    assert code == 0
    tr = read_trace_csv(out)
    first, last = tr.roots[0], tr.roots[-1]
    d = np.abs(last[:, None] - first[None, :]).min(axis=1)
    assert d.max() < 1e-7
    assert trace_csv(tr) == out


def test_trace_open_segment(capsys, tmp_path):
    f = tmp_path / "seg.json"
    save_path(segment_path(0, 3.9), f)
    code, out, _ = run(capsys, "trace", *OSC, "--path", str(f))
    rows = out.splitlines()
    assert code == 0 and rows[0] == "s,g_re,g_im,E1_re,E1_im,E2_re,E2_im,E3_re,E3_im,E4_re,E4_im"
    assert len(rows) - 1 >= 2
    assert float(rows[-1].split(",")[3]) == pytest.approx(np.sqrt(5 + np.sqrt(16 - 3.9**2) * 1), abs=1e-8)


def test_trace_malformed(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "trace", *OSC, "--path", str(f))
    assert code == 2 and err
    assert run(capsys, "trace", *OSC, "--path", str(tmp_path / "missing.json"))[0] == 2


def test_trace_figure(capsys, loop4, tmp_path):
    out = tmp_path / "t.csv"
    png = tmp_path / "t.png"
    assert run(capsys, "trace", *OSC, "--path", loop4, "--out", str(out), "--figure", str(png))[0] == 0
    assert out.read_text().startswith("s,g_re")
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_grand_tour(capsys, tmp_path):
    png = tmp_path / "tour.png"
    code, out, _ = run(capsys, "grand-tour", *OSC, "--format", "json", "--figure", str(png))
    d = json.loads(out)
    assert code == 0
    assert [leg["E0"] for leg in d["legs"]] == [3, 1, -1, -3]
    assert d["net_change"] == -6 and d["composed"] == "(1 4)"
    assert png.stat().st_size > 0
    d = json.loads(run(capsys, "grand-tour", "--nu", "3", "--omega", "1", "--format", "json")[1])
    assert [leg["E0"] for leg in d["legs"]] == [4, 2, -2, -4] and d["net_change"] == -8
    assert run(capsys, "grand-tour", "--nu", "1", "--omega", "1")[0] == 2


def test_quartets(capsys):
    code, out, _ = run(capsys, "quartets", *OSC, "--g", "0,0", "--sheet", "1")
    assert code == 0
    assert out.splitlines() == ["(0,0) 3.0", "(0,1) 5.0", "(1,0) 7.0", "(1,1) 9.0"]


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", *OSC, "--g", "1", "--nmax", "30", "--k", "1")
    assert code == 0 and abs(float(out) - 2.9787561) < 1e-6
    assert run(capsys, "oracle", *OSC, "--g", "4")[0] == 2


def test_partition(capsys):
    code, out, _ = run(capsys, "partition", "--model", "sextic", "--g", "1", "--format", "csv")
    header, row = out.splitlines()
    assert code == 0
    assert header.split(",") == ["series_re", "series_im", "connection_re", "connection_im",
                                "quadrature_re", "quadrature_im", "abs_delta"]
    assert float(row.split(",")[-1]) < 1e-8
    code, out, _ = run(capsys, "partition", "--model", "quadratic", "--g", "1")
    assert out == fmt(2 * np.pi / np.sqrt(3)) + "\n"
    assert run(capsys, "partition", "--model", "quadratic", "--g", "1", "--sheet", "3")[0] == 2
    code, out, _ = run(capsys, "partition", "--model", "sextic", "--g", "1.5", "--sheet", "3")
    assert code == 0 and "connection" in out


def test_greens(capsys):
    code, out, _ = run(capsys, "greens", "--alpha", "2", "--beta", "2", "--g", "1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["abs_delta"] < 1e-8 and d["singularity_exponent"] == "-1/2"


def test_branch_points_and_circle(capsys, tmp_path):
    code, out, _ = run(capsys, "branch-points", *OSC)
    assert out.splitlines() == ["inner 4.0", "inner -4.0", "outer 0.0,3.0", "outer 0.0,-3.0"]
    f = tmp_path / "c.json"
    assert run(capsys, "circle", "--center", "4", "--radius", "2", "--out", str(f))[0] == 0
    assert run(capsys, "monodromy", *OSC, "--path", str(f), "--from-sheet", "1")[1].startswith("(1 2)")


def test_rt_tol(capsys, loop4, monkeypatch):
    monkeypatch.setenv("RT_TOL", "1e-11")
    assert run(capsys, "monodromy", *OSC, "--path", loop4)[0] == 0
    monkeypatch.setenv("RT_TOL", "-1")
    code, _, err = run(capsys, "monodromy", *OSC, "--path", loop4)
    assert code == 2 and "RT_TOL" in err


def test_deterministic(capsys, loop4):
    a = run(capsys, "trace", *OSC, "--path", loop4)[1]
    b = run(capsys, "trace", *OSC, "--path", loop4)[1]
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "coupled_sheets", "eval", *OSC, "--g", "0", "--sheet", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1.0\n"
