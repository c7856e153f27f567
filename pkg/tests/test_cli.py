import json
import math

import numpy as np
import pytest

import oracles
from siegelkit.cli import main
from siegelkit.io import MatrixFile, read_matrix_file, write_matrix_file


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, mats, model=None):
    p = tmp_path / name
    write_matrix_file(p, MatrixFile(np.asarray(mats[0]).shape[0], [np.asarray(m, dtype=complex) for m in mats], model))
    return p


def test_roundtrip_bit_exact(tmp_path, rng):
    M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    p = write(tmp_path, "m.json", [M])
    assert np.array_equal(read_matrix_file(p).matrices[0], M)


def test_dist_klein_origin(tmp_path, capsys):
    p = write(tmp_path, "k.json", [0.5 * np.eye(2)])
    code, rep, _ = run(capsys, "dist", "--model", "klein", "--method", "origin", p)
    assert code == 0
    assert rep["outputs"]["distance"] == pytest.approx(0.5 * math.log(3))
    assert set(rep) == {"command", "inputs_digest", "outputs", "timing_ms", "counters", "seed"}


def test_dist_upper_fixture(tmp_path, capsys):
    p = write(tmp_path, "z.json", [oracles.Z1, oracles.Z2], "upper")
    code, rep, _ = run(capsys, "dist", "--model", "upper", p)
    assert code == 0 and rep["outputs"]["distance"] == pytest.approx(oracles.FIXTURE_DISTANCE, abs=1e-8)
    code, rep, _ = run(capsys, "dist", "--model", "upper", "--method", "series", p)
    assert rep["outputs"]["distance"] == pytest.approx(oracles.FIXTURE_DISTANCE, abs=1e-6)


def test_dist_klein_bisection(tmp_path, capsys):
    a = write(tmp_path, "a.json", [np.zeros((2, 2))])
    b = write(tmp_path, "b.json", [0.5 * np.eye(2)])
    code, rep, _ = run(capsys, "dist", "--model", "klein", "--method", "bisection", "--eps", "1e-10", a, b)
    lo, hi = rep["outputs"]["bounds"]
    assert code == 0 and lo <= hi
    assert abs(lo - 0.5 * math.log(3)) < 1e-9 and abs(hi - 0.5 * math.log(3)) < 1e-9


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "dist", "--model", "upper", bad)[0] == 2
    assert run(capsys, "dist", "--model", "upper", tmp_path / "missing.json")[0] == 2
    out = write(tmp_path, "o.json", [np.eye(2), 0.5 * np.eye(2)])
    assert run(capsys, "dist", "--model", "poincare", out)[0] == 3
    shape = tmp_path / "shape.json"
    shape.write_text(json.dumps({"dim": 2, "matrices": [{"re": [[1.0]], "im": [[0.0]]}]}))
    assert run(capsys, "dist", "--model", "klein", shape)[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["dist"])
    assert err.value.code == 2


def test_convert(tmp_path, capsys):
    p = write(tmp_path, "z.json", [1j * np.eye(2)])
    code, rep, _ = run(capsys, "convert", "--from", "upper", "--to", "poincare", p)
    W = np.array(rep["outputs"]["matrices"][0]["re"]) + 1j * np.array(rep["outputs"]["matrices"][0]["im"])
    assert code == 0 and np.abs(W).max() < 1e-12
    p = write(tmp_path, "w.json", [0.2679491924311227 * np.eye(2)])
    code, rep, _ = run(capsys, "convert", "--from", "poincare", "--to", "klein", "--roundtrip", p)
    K = np.array(rep["outputs"]["matrices"][0]["re"])
    assert K == pytest.approx(0.5 * np.eye(2), abs=1e-6)
    assert rep["outputs"]["roundtrip_ok"]


def test_convert_composition(tmp_path, capsys):
    k = write(tmp_path, "k.json", [np.array([[0.3, 0.1j], [0.1j, -0.2]])])
    run(capsys, "convert", "--from", "klein", "--to", "poincare", k, "-o", tmp_path / "w.json")
    _, direct, _ = run(capsys, "convert", "--from", "klein", "--to", "upper", k)
    _, composed, _ = run(capsys, "convert", "--from", "poincare", "--to", "upper", tmp_path / "w.json")
    a = direct["outputs"]["matrices"][0]
    b = composed["outputs"]["matrices"][0]
    assert np.array(a["re"]) == pytest.approx(np.array(b["re"]), abs=1e-9)
    assert np.array(a["im"]) == pytest.approx(np.array(b["im"]), abs=1e-9)


def test_gen_deterministic(tmp_path, capsys):
    for name in ("a.json", "b.json"):
        code, rep, _ = run(capsys, "gen", "--count", 3, "--dim", 2, "--seed", 7, "-o", tmp_path / name)
        assert code == 0 and rep["outputs"]["count"] == 3
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    from siegelkit.siegel_poincare_disk import membership_disk
    from siegelkit.siegel_upper import membership_upper

    assert all(membership_disk(M).ok for M in read_matrix_file(tmp_path / "a.json").matrices)
    run(capsys, "gen", "--count", 4, "--dim", 3, "--domain", "upper", "-o", tmp_path / "u.json")
    for Z in read_matrix_file(tmp_path / "u.json").matrices:
        m = membership_upper(Z)
        assert m.ok and m.margin >= 0.1 - 1e-12


def test_seb_commands(tmp_path, capsys):
    one = write(tmp_path, "one.json", [np.array([[0.2, 0.1], [0.1, -0.3j]])])
    code, rep, _ = run(capsys, "seb", "--model", "poincare", one, "--iters", 5)
    assert code == 0 and rep["outputs"]["radius"] < 1e-8
    pair = write(tmp_path, "pair.json", [0.3 * np.eye(2), -0.3 * np.eye(2)])
    code, rep, _ = run(capsys, "seb", "--model", "klein", pair, "--iters", 1000, "--trace")
    c = rep["outputs"]["center"]
    assert np.abs(np.array(c["re"]) + 1j * np.array(c["im"])).max() < 1e-3
    assert len(rep["outputs"]["trace"]) == 1000


def test_bench(tmp_path, capsys):
    run(capsys, "gen", "--count", 8, "--dim", 2, "--seed", 3, "-o", tmp_path / "c.json")
    code, rep, _ = run(capsys, "bench", tmp_path / "c.json", "--iters", 20, "--repeats", 3)
    rows = rep["outputs"]["rows"]
    assert code == 0 and len(rows) == 3
    assert all(r["poincare_counters"]["matrix_sqrt"] == 2 * 8 * 20 for r in rows)
    assert all(r["klein_counters"] == rows[0]["klein_counters"] for r in rows)
    assert rows[0]["klein_counters"]["matrix_sqrt"] == 0
    run(capsys, "gen", "--count", 3, "--dim", 1, "--seed", 3, "-o", tmp_path / "d1.json")
    code, rep, _ = run(capsys, "bench", tmp_path / "d1.json", "--iters", 5, "--repeats", 1)
    assert rep["outputs"]["sanity_d1"]["equal"]
