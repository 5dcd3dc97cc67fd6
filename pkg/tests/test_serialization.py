import json
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from volstrassen.decomp_gen import build_algorithm, canonical_strassen_params
from volstrassen.errors import ParseError
from volstrassen.exact_arith import GF, QQ
from volstrassen.sampling import random_matrix, random_valid_params
from volstrassen.serialization import (
    algorithm_from_dict,
    algorithm_to_dict,
    dumps_algorithm,
    dumps_params,
    factors_from_dict,
    factors_to_algorithm,
    factors_to_dict,
    loads_algorithm,
    loads_params,
    matrix_from_csv,
    matrix_to_csv,
    read_matrix,
    write_matrix,
)
from volstrassen.tensor_core import mat_equal

CANON_ALG = build_algorithm(canonical_strassen_params())


@pytest.mark.parametrize("field", [QQ, GF(2), GF(5), GF(7)], ids=repr)
def test_algorithm_round_trip_bit_exact(field):
    rng = random.Random(0)
    for _ in range(20):
        alg = build_algorithm(random_valid_params(rng, field))
        text = dumps_algorithm(alg)
        back = loads_algorithm(text)
        assert back == alg
        assert dumps_algorithm(back) == text


@pytest.mark.parametrize("field", [QQ, GF(3)], ids=repr)
def test_params_round_trip(field):
    rng = random.Random(1)
    for _ in range(20):
        p = random_valid_params(rng, field)
        text = dumps_params(p)
        assert loads_params(text) == p
        assert dumps_params(loads_params(text)) == text


def test_algorithm_schema():
    data = json.loads(dumps_algorithm(CANON_ALG))
    assert data["field"] == "rational"
    assert data["rank"] == 7 == len(data["terms"])
    assert set(data["terms"][0]) == {"x", "y", "z"}
    assert all(isinstance(s, str) for row in data["terms"][3]["z"] for s in row)
    gf = json.loads(dumps_algorithm(build_algorithm(canonical_strassen_params(GF(5)))))
    assert gf["field"] == {"prime": 5}


def test_rational_coefficients_written_as_fractions():
    rng = random.Random(2)
    while True:
        alg = build_algorithm(random_valid_params(rng, QQ))
        text = dumps_algorithm(alg)
        if "/" in text:
            break
    assert loads_algorithm(text) == alg


def _canon_dict():
    return algorithm_to_dict(CANON_ALG)


def test_rank_mismatch():
    d = _canon_dict()
    d["rank"] = 6
    with pytest.raises(ParseError):
        algorithm_from_dict(d)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("field"),
        lambda d: d.update(field="real"),
        lambda d: d["terms"][0].pop("z"),
        lambda d: d["terms"][0].update(w=[["0", "0"], ["0", "0"]]),
        lambda d: d["terms"][1].update(x=[["1", "0"]]),
        lambda d: d["terms"][1].update(x=[[1, 0], [0, 0]]),
        lambda d: d["terms"][1].update(x=[["1.5", "0"], ["0", "0"]]),
        lambda d: d.update(terms="none"),
    ],
)
def test_malformed_algorithm(mutate):
    d = _canon_dict()
    mutate(d)
    with pytest.raises(ParseError):
        algorithm_from_dict(d)


def test_bad_json_text():
    with pytest.raises(ParseError):
        loads_algorithm("{not json")
    with pytest.raises(ParseError):
        loads_algorithm("[1, 2]")
    with pytest.raises(ParseError):
        loads_params('{"field": "rational", "v": [], "lambda": [], "extra": 1}')


def test_factor_round_trip():
    d = factors_to_dict(CANON_ALG)
    assert d["rank"] == 7 and len(d["U"]) == 7 and len(d["U"][0]) == 4
    assert factors_to_algorithm(json.loads(json.dumps(d))) == CANON_ALG
    field, U, V, W = factors_from_dict(d)
    assert field is QQ and U.shape == (7, 4)
    d["rank"] = 8
    with pytest.raises(ParseError):
        factors_from_dict(d)


def test_matrix_csv_exact_round_trip(tmp_path):
    rng = random.Random(3)
    M = random_matrix(rng, QQ, (5, 5), max_den=7)
    text = matrix_to_csv(M)
    assert mat_equal(matrix_from_csv(text, QQ), M)
    path = tmp_path / "m.csv"
    write_matrix(path, M)
    assert path.read_text() == text
    assert mat_equal(read_matrix(path, QQ), M)


def test_matrix_csv_float_round_trip():
    M = np.random.default_rng(0).standard_normal((4, 4))
    back = matrix_from_csv(matrix_to_csv(M))
    assert back.dtype == np.float64
    assert np.array_equal(back, M)


def test_matrix_csv_errors():
    with pytest.raises(ParseError):
        matrix_from_csv("1,2\n3\n", QQ)
    with pytest.raises(ParseError):
        matrix_from_csv("1,2,3\n4,5,6\n", QQ)
    with pytest.raises(ParseError):
        matrix_from_csv("", QQ)
    with pytest.raises(ParseError):
        matrix_from_csv("a\n")
    with pytest.raises(ParseError):
        matrix_from_csv("1/-2\n", QQ)


@given(st.lists(st.tuples(st.integers(-10**9, 10**9), st.integers(1, 10**9)), min_size=9, max_size=9))
def test_csv_round_trip_property(entries):
    M = np.array([QQ(n, d) for n, d in entries], dtype=object).reshape(3, 3)
    assert mat_equal(matrix_from_csv(matrix_to_csv(M), QQ), M)
