"""JSON files for algorithms, parameters and factor matrices; CSV for matrices.

All scalars are written as strings in the ``-?digits(/digits)?`` format.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Union

import numpy as np

from .decomp_gen import BilinearAlgorithm, Params
from .errors import ParseError
from .exact_arith import Field, field_from_descriptor, format_scalar, parse_scalar
from .verifier import algorithm_from_factors, factor_matrices

PathLike = Union[str, Path]


def _format_array(m: np.ndarray) -> list:
    return [_format_array(x) for x in m] if m.ndim > 1 else [format_scalar(x) for x in m]


def _parse_array(data, field: Field, shape: tuple, what: str) -> np.ndarray:
    try:
        arr = np.array(data, dtype=object)
    except ValueError as exc:
        raise ParseError(f"{what}: ragged array") from exc
    if arr.shape != shape:
        raise ParseError(f"{what}: expected shape {shape}, got {arr.shape}")
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        x = arr[idx]
        if not isinstance(x, str):
            raise ParseError(f"{what}: scalars must be strings, got {x!r}")
        out[idx] = parse_scalar(x, field)
    return out


def _load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    return data


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Algorithms
# ---------------------------------------------------------------------------


def algorithm_to_dict(alg: BilinearAlgorithm) -> dict:
    return {
        "field": alg.field.descriptor(),
        "rank": alg.rank,
        "terms": [{"x": _format_array(x), "y": _format_array(y), "z": _format_array(z)} for x, y, z in alg.terms],
    }


def algorithm_from_dict(data: dict) -> BilinearAlgorithm:
    if "field" not in data or "terms" not in data or "rank" not in data:
        raise ParseError("algorithm file needs 'field', 'rank' and 'terms'")
    field = field_from_descriptor(data["field"])
    terms = data["terms"]
    if not isinstance(terms, list):
        raise ParseError("'terms' must be a list")
    if data["rank"] != len(terms):
        raise ParseError(f"rank {data['rank']!r} does not match {len(terms)} terms")
    parsed = []
    for r, term in enumerate(terms):
        if not isinstance(term, dict) or set(term) != {"x", "y", "z"}:
            raise ParseError(f"term {r} must have exactly the keys x, y, z")
        parsed.append(tuple(_parse_array(term[k], field, (2, 2), f"term {r}.{k}") for k in "xyz"))
    return BilinearAlgorithm(field, parsed)


def dumps_algorithm(alg: BilinearAlgorithm) -> str:
    return dumps(algorithm_to_dict(alg))


def loads_algorithm(text: str) -> BilinearAlgorithm:
    return algorithm_from_dict(_load_json(text))


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def params_to_dict(p: Params) -> dict:
    return {
        "field": p.field.descriptor(),
        "v": [_format_array(v) for v in p.v],
        "lambda": [_format_array(l) for l in p.lam],
    }


def params_from_dict(data: dict) -> Params:
    if set(data) != {"field", "v", "lambda"}:
        raise ParseError("params file needs exactly 'field', 'v' and 'lambda'")
    field = field_from_descriptor(data["field"])
    v = _parse_array(data["v"], field, (3, 2), "v")
    lam = _parse_array(data["lambda"], field, (3, 2), "lambda")
    return Params(tuple(v[i].copy() for i in range(3)), tuple(lam[i].copy() for i in range(3)))


def dumps_params(p: Params) -> str:
    return dumps(params_to_dict(p))


def loads_params(text: str) -> Params:
    return params_from_dict(_load_json(text))


# ---------------------------------------------------------------------------
# Factor matrices (U, V, W), rank × 4, 2×2 blocks flattened row-major
# ---------------------------------------------------------------------------


def factors_to_dict(alg: BilinearAlgorithm) -> dict:
    U, V, W = factor_matrices(alg)
    return {
        "field": alg.field.descriptor(),
        "rank": alg.rank,
        "U": _format_array(U),
        "V": _format_array(V),
        "W": _format_array(W),
    }


def factors_from_dict(data: dict):
    """Returns (field, U, V, W)."""
    if not {"field", "rank", "U", "V", "W"} <= set(data):
        raise ParseError("factor file needs 'field', 'rank', 'U', 'V', 'W'")
    field = field_from_descriptor(data["field"])
    rank = data["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise ParseError(f"bad rank {rank!r}")
    mats = [_parse_array(data[k], field, (rank, 4), k) for k in "UVW"]
    return (field, *mats)


def factors_to_algorithm(data: dict) -> BilinearAlgorithm:
    field, U, V, W = factors_from_dict(data)
    return algorithm_from_factors(field, U, V, W)


def load_json_file(path: PathLike) -> dict:
    return _load_json(Path(path).read_text())


# ---------------------------------------------------------------------------
# CSV matrices
# ---------------------------------------------------------------------------


def matrix_to_csv(M: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in M:
        if M.dtype == object:
            writer.writerow([format_scalar(x) for x in row])
        else:
            writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str, field: Field = None) -> np.ndarray:
    """Exact matrix when ``field`` is given, float64 otherwise. Must be square."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    n = len(rows)
    if n == 0:
        raise ParseError("empty matrix file")
    if any(len(r) != n for r in rows):
        raise ParseError("matrix CSV must be square")
    if field is None:
        try:
            return np.array([[float(x) for x in r] for r in rows], dtype=float)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    out = np.empty((n, n), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = parse_scalar(x, field)
    return out


def read_matrix(path: PathLike, field: Field = None) -> np.ndarray:
    return matrix_from_csv(Path(path).read_text(), field)


def write_matrix(path: PathLike, M: np.ndarray) -> None:
    Path(path).write_text(matrix_to_csv(M))

