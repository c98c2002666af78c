import json

import numpy as np
import pytest

from dissim.cli import main
from dissim.io import read_indices, read_results_csv, read_streamlines


@pytest.fixture
def gauss(tmp_path):
    path = tmp_path / "g.txt"
    assert main(["generate", "gaussian", "--n", "10", "--seed", "1", "--out", str(path)]) == 0
    return path


def test_generate_polylines(tmp_path, capsys):
    out = tmp_path / "p.txt"
    assert main(["generate", "polylines", "--n", "20", "--min-points", "2", "--max-points", "5",
                 "--out", str(out)]) == 0
    ds = read_streamlines(out)
    assert len(ds) == 20 and ds.dim == 3
    config = json.loads(capsys.readouterr().err.splitlines()[0])
    assert config["seed"] == 0 and config["extent"] == 100.0 and config["jitter"] == 0.0


def test_select_sff_clamped(gauss, tmp_path, capsys):
    idx, protos = tmp_path / "i.txt", tmp_path / "p.txt"
    assert main(["select", "--input", str(gauss), "--policy", "sff", "--p", "5", "--c", "3",
                 "--seed", "2", "--out-indices", str(idx), "--out-prototypes", str(protos)]) == 0
    assert "candidate pool size: 10" in capsys.readouterr().err
    indices = read_indices(idx)
    assert len(set(indices.tolist())) == 5
    ds = read_streamlines(gauss)
    assert read_streamlines(protos) == ds.subset(indices)


def test_select_fft_start_zero(tmp_path):
    data = tmp_path / "line.txt"
    data.write_text("0 0\n\n1 0\n\n10 0\n\n11 0\n")
    idx = tmp_path / "i.txt"
    assert main(["select", "--input", str(data), "--policy", "fft", "--p", "3", "--kernel",
                 "euclidean", "--start-zero", "--out-indices", str(idx)]) == 0
    assert read_indices(idx).tolist() == [0, 3, 1]


def test_embed(gauss, tmp_path):
    idx, out = tmp_path / "i.txt", tmp_path / "e.csv"
    main(["select", "--input", str(gauss), "--policy", "random", "--p", "3",
          "--out-indices", str(idx)])
    assert main(["embed", "--input", str(gauss), "--prototypes", str(idx), "--indices",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "proto_0,proto_1,proto_2"
    mat = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
    assert mat.shape == (10, 3)
    for k, i in enumerate(read_indices(idx)):
        assert mat[i, k] == 0.0


def test_evaluate_rows_and_reproducible(gauss, tmp_path):
    outs = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for out in outs:
        assert main(["evaluate", "--input", str(gauss), "--policy", "random,fft,sff",
                     "--p-list", "2,3", "--repetitions", "3", "--pairs", "all", "--seed", "4",
                     "--no-times", "--out", str(out)]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
    with open(outs[0]) as fh:
        rows = read_results_csv(fh)
    assert len(rows) == 3 * 2 * 3
    assert {r["policy"] for r in rows} == {"random", "fft", "sff"}
    assert [r["seed"] for r in rows[:3]] == [4, 5, 6]


def test_bench(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--policy", "sff,fft", "--p", "3", "--sizes", "20,40",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "policy,p,size,seed,pool_size,wall_time_ms"
    assert len(lines) == 5


def test_usage_errors(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["select", "--input", "x"]) == 2
    assert main(["evaluate", "--input", "x", "--p-list", "a,b"]) == 2


def test_runtime_errors(tmp_path, gauss):
    assert main(["select", "--input", str(tmp_path / "missing.txt"), "--policy", "random",
                 "--p", "2", "--out-indices", str(tmp_path / "i")]) == 1
    assert main(["select", "--input", str(gauss), "--policy", "random", "--p", "11",
                 "--out-indices", str(tmp_path / "i")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 0\n1 1\n")
    assert main(["evaluate", "--input", str(bad), "--p-list", "1"]) == 1


def test_invalid_values_are_runtime_errors(tmp_path, gauss):
    assert main(["generate", "polylines", "--min-points", "1", "--out",
                 str(tmp_path / "p.txt")]) == 1
    assert main(["evaluate", "--input", str(gauss), "--p-list", "2", "--pairs", "some"]) == 1
