import json
import random
import subprocess
import sys

import pytest

import oracles as o
from volstrassen.cli import main
from volstrassen.decomp_gen import c_matrix, canonical_strassen_params
from volstrassen.exact_arith import QQ
from volstrassen.sampling import random_matrix
from volstrassen.serialization import algorithm_from_dict, load_json_file, matrix_to_csv, params_to_dict
from volstrassen.tensor_core import S3, mat_equal


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def canon_files(tmp_path, capsys):
    params = tmp_path / "params.json"
    alg = tmp_path / "alg.json"
    assert run(capsys, "params", "-o", params)[0] == 0
    assert run(capsys, "gen", params, "-o", alg)[0] == 0
    return params, alg


def test_gen_and_verify(canon_files, capsys):
    params, alg = canon_files
    code, out, _ = run(capsys, "verify", alg)
    assert code == 0 and "16/16" in out
    data = algorithm_from_dict(load_json_file(alg))
    p = canonical_strassen_params()
    for sigma, (_, _, z) in zip(S3, data.terms[1:]):
        c = c_matrix(sigma(3), sigma(1), p)
        assert mat_equal(z, c) or mat_equal(z, -c)


def test_gen_colinear_rejected(tmp_path, capsys):
    d = params_to_dict(canonical_strassen_params())
    d["v"][1] = d["v"][0]
    d["lambda"][1] = d["lambda"][0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, _, err = run(capsys, "gen", path)
    assert code == 1
    assert "noncolinear" in err


def test_gen_prime_field(tmp_path, capsys):
    params, alg = tmp_path / "p.json", tmp_path / "a.json"
    assert run(capsys, "params", "--field", "prime:5", "-o", params)[0] == 0
    assert run(capsys, "gen", params, "-o", alg)[0] == 0
    assert json.loads(alg.read_text())["field"] == {"prime": 5}
    assert run(capsys, "verify", alg)[0] == 0


def test_verify_perturbed(canon_files, tmp_path, capsys):
    _, alg = canon_files
    d = json.loads(alg.read_text())
    d["terms"][2]["z"][0][0] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", bad)
    assert code == 1
    assert "mismatch" in out


def test_verify_rank_mismatch(canon_files, tmp_path, capsys):
    _, alg = canon_files
    d = json.loads(alg.read_text())
    d["rank"] = 8
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", bad)
    assert code == 2 and "ParseError" in err


def test_export_and_brent(canon_files, tmp_path, capsys):
    _, alg = canon_files
    factors = tmp_path / "f.json"
    assert run(capsys, "export", alg, "-o", factors)[0] == 0
    code, out, _ = run(capsys, "verify", factors)
    assert code == 0 and "64/64" in out
    d = json.loads(factors.read_text())
    d["W"][0][0] = "2"
    factors.write_text(json.dumps(d))
    assert run(capsys, "verify", factors)[0] == 1


def test_demo_matches_golden(capsys):
    code, out, err = run(capsys, "demo")
    assert code == 0
    assert "(ab)^{1,2} = III + V" in out
    assert "match" in err


def test_multiply_identity(canon_files, tmp_path, capsys):
    _, alg = canon_files
    a = tmp_path / "i.csv"
    a.write_text("1,0\n0,1\n")
    code, out, _ = run(capsys, "multiply", alg, a, a)
    assert code == 0 and out == "1,0\n0,1\n"


def test_multiply_matches_oracle_bytes(canon_files, tmp_path, capsys):
    _, alg = canon_files
    rng = random.Random(0)
    A = random_matrix(rng, QQ, (8, 8), max_den=5)
    B = random_matrix(rng, QQ, (8, 8), max_den=5)
    (tmp_path / "a.csv").write_text(matrix_to_csv(A))
    (tmp_path / "b.csv").write_text(matrix_to_csv(B))
    code, out, _ = run(capsys, "multiply", alg, tmp_path / "a.csv", tmp_path / "b.csv", "--cutoff", "2")
    assert code == 0
    prod = o.matmul(o.to_lists(A), o.to_lists(B))
    expected = "".join(",".join(str(x) for x in row) + "\n" for row in prod)
    assert out == expected


def test_multiply_float(canon_files, tmp_path, capsys):
    _, alg = canon_files
    a = tmp_path / "a.csv"
    a.write_text("0.5,1\n2,0.25\n")
    code, out, _ = run(capsys, "multiply", alg, a, a, "--float")
    assert code == 0
    assert out == "2.25,0.75\n1.5,2.0625\n"


def test_multiply_dimension_mismatch(canon_files, tmp_path, capsys):
    _, alg = canon_files
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    a.write_text("1,0\n0,1\n")
    b.write_text("1,0,0\n0,1,0\n0,0,1\n")
    code, _, err = run(capsys, "multiply", alg, a, b)
    assert code == 2 and "DimensionMismatch" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2


def test_suite_commands(capsys):
    code, out, _ = run(capsys, "suite", "--seed", "0", "--trials", "20")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) >= 10
    assert run(capsys, "suite", "--trials", "20", "--field", "prime:2")[0] == 0


def test_suite_zero_trials(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["suite", "--trials", "0"])
    assert exc.value.code == 2


def test_bench_schema(capsys):
    code, out, _ = run(capsys, "bench", "--n", "32", "--cutoff", "8", "--reps", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "path,n,cutoff,median_seconds,max_rel_error"
    assert len(lines) == 3
    assert lines[1].startswith("recursive,32,8,") and lines[2].startswith("naive,32,8,")


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "volstrassen", "demo"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "c_{2,3} = [[0,0],[1,-1]]" in r.stdout
