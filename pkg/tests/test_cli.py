import json
import subprocess
import sys

import numpy as np
import pytest

from rtdlite.cli import main
from rtdlite.graph_core import write_matrix_csv
from rtdlite.rtdl import barcode_pairs_from_json


@pytest.fixture
def tri_files(tmp_path, tri):
    a, b = tri
    pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
    write_matrix_csv(a, pa)
    write_matrix_csv(b, pb)
    return str(pa), str(pb)


def run(capsys, *argv):
    code = main([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_barcode_hand_trace(capsys, tri_files):
    code, out, _ = run(capsys, "barcode", *tri_files, "--no-normalize")
    assert code == 0
    doc = json.loads(out)
    assert doc["intervals"] == [[1.0, 1.0], [1.0, 2.0]]
    assert doc["rtdl"] == 1.0
    assert doc["direction"] == "AB"


def test_barcode_drop_zero_and_ba(capsys, tri_files):
    _, out, _ = run(capsys, "barcode", *tri_files, "--no-normalize", "--drop-zero", "--direction", "ba")
    doc = json.loads(out)
    assert doc["intervals"] == [[1.0, 2.0]]
    assert doc["direction"] == "BA"


def test_identical_files(capsys, tri_files):
    _, out, _ = run(capsys, "barcode", tri_files[0], tri_files[0])
    doc = json.loads(out)
    assert doc["rtdl"] == 0.0
    assert all(b == d for b, d in doc["intervals"])


def test_round_trip_barcode_vs_rtdl(capsys, tmp_path):
    rng = np.random.default_rng(3)
    for k in range(5):
        p, q = rng.standard_normal((30, 2)), rng.standard_normal((30, 4))
        fp, fq = tmp_path / f"p{k}.csv", tmp_path / f"q{k}.csv"
        np.savetxt(fp, p, delimiter=",")
        np.savetxt(fq, q, delimiter=",")
        _, out_b, _ = run(capsys, "barcode", fp, fq, "--kind", "cloud")
        _, out_r, _ = run(capsys, "rtdl", fp, fq, "--kind", "cloud")
        assert abs(json.loads(out_b)["rtdl"] - float(out_r)) <= 1e-9
        pairs = barcode_pairs_from_json(out_b)
        assert abs(sum(d - b for b, d in pairs) - float(out_r)) <= 1e-9


def test_rtdl_directions(capsys, tri_files):
    assert run(capsys, "rtdl", *tri_files, "--no-normalize")[1].strip() == "1.0"
    assert run(capsys, "rtdl", *tri_files, "--no-normalize", "--direction", "sym")[1].strip() == "2.0"


def test_missing_file(capsys, tri_files):
    code, _, err = run(capsys, "rtdl", "does-not-exist.csv", tri_files[1])
    assert code == 2
    assert err.startswith("error: io: ")
    assert len(err.strip().splitlines()) == 1


def test_parse_failure(capsys, tmp_path, tri_files):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n1,zero\n")
    code, _, err = run(capsys, "rtdl", bad, tri_files[1])
    assert code == 2 and err.startswith("error: io: ")
    asym = tmp_path / "asym.csv"
    asym.write_text("0,1\n2,0\n")
    assert run(capsys, "rtdl", asym, asym)[0] == 2


def test_disconnected(capsys, tmp_path, tri_files):
    d = tmp_path / "d.csv"
    d.write_text("0,inf,1\ninf,0,inf\n1,inf,0\n")
    code, _, err = run(capsys, "barcode", d, tri_files[1])
    assert code == 3 and err.startswith("error: disconnected: ")
    code, out, _ = run(capsys, "barcode", d, tri_files[1], "--allow-infinite-bars")
    assert code == 0 and json.loads(out)["rtdl"] == "inf"


def test_dimension_mismatch(capsys, tmp_path, tri_files):
    m = tmp_path / "two.csv"
    m.write_text("0,1\n1,0\n")
    code, _, err = run(capsys, "rtdl", tri_files[0], m)
    assert code == 4 and err.startswith("error: dimension: ")


def test_grad_output(capsys, tri_files):
    code, out, _ = run(capsys, "grad", *tri_files, "--no-normalize")
    assert code == 0
    assert out.splitlines()[1:] == ["# d_a", "0,2,1.0", "# d_b", "0,2,-1.0"]


def test_synth_and_matrix(capsys, tmp_path):
    paths = []
    for k in (1, 2, 3):
        path = tmp_path / f"c{k}.csv"
        assert run(capsys, "synth", "--type", "clusters", "--n", 40, "--count", k, "--seed", 1, "--out", path)[0] == 0
        paths.append(path)
    assert paths[0].read_text().startswith("# kind=clusters seed=1 n=40")
    out_csv = tmp_path / "m.csv"
    assert run(capsys, "matrix", *paths, "--labels", "k1,k2,k3", "--out", out_csv)[0] == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == ",k1,k2,k3"
    out_json = tmp_path / "m.json"
    run(capsys, "matrix", *paths, "--direction", "sym", "--parallelism", 3, "--subsample", 30, "--out", out_json)
    doc = json.loads(out_json.read_text())
    vals = np.array(doc["values"])
    assert np.array_equal(vals, vals.T)
    assert doc["subsample"] == {"size": 30, "seed": 0}


def test_gradcheck_pass(capsys):
    code, out, _ = run(capsys, "gradcheck", "--instances", 3)
    assert code == 0
    assert out.startswith("PASS rel_err_max<=1e-4")


def test_trend_output(capsys, tmp_path):
    out_csv = tmp_path / "t.csv"
    code, out, _ = run(capsys, "trend", "clusters", "--seeds", 1, "--n", 60, "--out", out_csv)
    assert code == 0
    assert "kendall_tau=" in out.splitlines()[-1]
    assert out_csv.read_text().startswith("orientation,seed,k1,")


def test_bench_small(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--sizes", 50, 100, 200, "--repeats", 1)
    assert code == 0
    assert "loglog_slope=" in out


def test_console_entry_point(tri_files):
    proc = subprocess.run(
        [sys.executable, "-m", "rtdlite", "rtdl", *tri_files, "--no-normalize"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1.0"
