"""Command-line interface.

Exit status: 0 success, 1 verification or validation failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import List, Optional

from .decomp_gen import build_algorithm, canonical_strassen_params, validate_params
from .demo import diff_against_golden, render
from .errors import DimensionMismatch, DivisionByZero, FieldMismatch, ParseError, UnverifiedAlgorithm
from .exact_arith import QQ, GF, Field
from .recursive_engine import bench, multiply_recursive
from .serialization import (
    dumps,
    dumps_algorithm,
    dumps_params,
    factors_from_dict,
    factors_to_dict,
    algorithm_from_dict,
    load_json_file,
    matrix_to_csv,
    params_from_dict,
    read_matrix,
)
from .verifier import brent_check, run_lemma_suite, verify_bilinear

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

BENCH_FIELDS = ["path", "n", "cutoff", "median_seconds", "max_rel_error"]


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _field_arg(text: str) -> Field:
    if text in ("rational", "QQ", "Q"):
        return QQ
    for prefix in ("prime:", "GF", "gf"):
        if text.startswith(prefix):
            try:
                return GF(int(text[len(prefix):].strip("()")))
            except ValueError as exc:
                raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"field must be 'rational' or 'prime:P', got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def cmd_params(args) -> int:
    _emit(dumps_params(canonical_strassen_params(args.field)), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    params = params_from_dict(load_json_file(args.params))
    report = validate_params(params)
    if not report.valid:
        print("invalid parameters:", file=sys.stderr)
        for problem in report.problems:
            print(f"  {problem}", file=sys.stderr)
        return EXIT_FAIL
    _emit(dumps_algorithm(build_algorithm(params)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    data = load_json_file(args.algorithm)
    if "U" in data:
        field, U, V, W = factors_from_dict(data)
        bad = brent_check(field, U, V, W)
        for eq in bad:
            print("Brent equation (i,j,k,l,m,n)=%s violated" % (eq,))
        print(f"{'PASS' if not bad else 'FAIL'}: {64 - len(bad)}/64 Brent equations hold")
        return EXIT_OK if not bad else EXIT_FAIL
    alg = algorithm_from_dict(data)
    report = verify_bilinear(alg)
    for (i, j, k, l), expected, got in report.failures:
        print(f"mismatch e_{{{i},{j}}} e_{{{k},{l}}}: expected {expected.tolist()}, got {got.tolist()}")
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: {report.checked_count - len(report.failures)}/{report.checked_count} basis pairs, rank {alg.rank}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_export(args) -> int:
    alg = algorithm_from_dict(load_json_file(args.algorithm))
    _emit(dumps(factors_to_dict(alg)), args.output)
    return EXIT_OK


def cmd_demo(args) -> int:
    text = render()
    sys.stdout.write(text)
    if args.no_check:
        return EXIT_OK
    diff = diff_against_golden(text)
    if diff:
        print("\n".join(diff), file=sys.stderr)
        print("demo output differs from golden text", file=sys.stderr)
        return EXIT_FAIL
    print("golden text: match", file=sys.stderr)
    return EXIT_OK


def cmd_multiply(args) -> int:
    alg = algorithm_from_dict(load_json_file(args.algorithm))
    field = None if args.float else alg.field
    if args.float and alg.field.characteristic != 0:
        raise UsageError("the float path needs an algorithm over the rationals")
    A = read_matrix(args.a, field)
    B = read_matrix(args.b, field)
    if A.shape != B.shape:
        raise DimensionMismatch(f"A is {A.shape[0]}x{A.shape[1]}, B is {B.shape[0]}x{B.shape[1]}")
    C, _ = multiply_recursive(alg, A, B, args.cutoff)
    sys.stdout.write(matrix_to_csv(C))
    return EXIT_OK


def cmd_suite(args) -> int:
    report = run_lemma_suite(args.seed, args.trials, args.field)
    for line in report.lines():
        print(line)
    ok = report.passed
    print(f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in report.results)}/{len(report.results)} lemma checks "
          f"(seed {args.seed}, {args.trials} trials, field {args.field!r})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bench(args) -> int:
    if args.algorithm:
        alg = algorithm_from_dict(load_json_file(args.algorithm))
    else:
        alg = build_algorithm(canonical_strassen_params())
    report = bench(alg, args.n, args.cutoff, args.reps, args.seed)
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows():
        writer.writerow({**row, "median_seconds": f"{row['median_seconds']:.6g}",
                         "max_rel_error": f"{row['max_rel_error']:.3e}"})
    if not report.coefficients_exact:
        print("note: algorithm coefficients were rounded to float64", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="volstrassen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="write the canonical Strassen parameter file")
    p.add_argument("--field", type=_field_arg, default=QQ, help="'rational' (default) or 'prime:P'")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("gen", help="build a rank-7 algorithm from a parameter file")
    p.add_argument("params")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify an algorithm file (or a factor-matrix file via Brent equations)")
    p.add_argument("algorithm")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write the U, V, W factor matrices of an algorithm")
    p.add_argument("algorithm")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("demo", help="derive Strassen's original algorithm step by step")
    p.add_argument("--no-check", action="store_true", help="skip the golden-text comparison")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("multiply", help="multiply two CSV matrices recursively")
    p.add_argument("algorithm")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cutoff", type=_positive, default=1)
    p.add_argument("--float", action="store_true", help="read decimals and compute in float64")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("suite", help="run the randomized lemma suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--field", type=_field_arg, default=QQ)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("bench", help="time recursive vs naive multiplication in float64")
    p.add_argument("--n", type=_positive, default=128)
    p.add_argument("--cutoff", type=_positive, default=64)
    p.add_argument("--reps", type=_positive, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithm", help="algorithm file (default: canonical Strassen)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DivisionByZero, DimensionMismatch, FieldMismatch, UsageError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnverifiedAlgorithm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
