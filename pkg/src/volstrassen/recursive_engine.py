"""Recursive n×n multiplication driven by any verified 2×2 bilinear algorithm.

Matrices are plain 2-D numpy arrays: object dtype holding exact scalars, or
float64 for the benchmark path. Inputs are zero-padded to the next power of
two; blocks of size <= cutoff use :func:`multiply_naive`.

The ``7`` subproducts of each level are computed in term order and the output
blocks are accumulated in the same fixed order, so float results do not depend
on scheduling.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .decomp_gen import BilinearAlgorithm
from .errors import DimensionMismatch, FieldMismatch, UnverifiedAlgorithm
from .exact_arith import Field
from .ops import OpCounter
from .tensor_core import common_field
from .verifier import verify_bilinear


def _check_square_pair(A: np.ndarray, B: np.ndarray) -> int:
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise DimensionMismatch(f"need two square matrices of equal size, got {A.shape} and {B.shape}")
    if A.shape[0] < 1:
        raise DimensionMismatch("empty matrix")
    return A.shape[0]


def _is_exact(A: np.ndarray) -> bool:
    return A.dtype == object


def _check_kinds(A: np.ndarray, B: np.ndarray) -> Optional[Field]:
    if _is_exact(A) != _is_exact(B):
        raise FieldMismatch("cannot mix exact and floating-point matrices")
    if _is_exact(A):
        return common_field(A, B)
    return None


def _naive(A: np.ndarray, B: np.ndarray, counter: Optional[OpCounter]) -> np.ndarray:
    # C[i] = Σ_k A[i,k] B[k], k ascending
    n = A.shape[0]
    C = np.empty_like(B)
    for i in range(n):
        row = A[i, 0] * B[0]
        for k in range(1, n):
            row = row + A[i, k] * B[k]
        C[i] = row
    if counter is not None:
        counter.base_multiplications += n ** 3
        counter.scalar_multiplications += n ** 3
        counter.scalar_additions += n * n * (n - 1)
    return C


def multiply_naive(A: np.ndarray, B: np.ndarray, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Textbook product with a fixed summation order; exact on exact scalars."""
    _check_square_pair(A, B)
    _check_kinds(A, B)
    return _naive(A, B, counter)


def next_power_of_two(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def pad(A: np.ndarray, size: int, zero) -> np.ndarray:
    n = A.shape[0]
    if n == size:
        return A
    P = np.full((size, size), zero, dtype=A.dtype)
    P[:n, :n] = A
    return P


@dataclass
class _Plan:
    """Nonzero coefficients of each term, in the order they are combined.

    ``lhs[r]`` / ``rhs[r]`` list (block index, coefficient) for the combination
    of A / B blocks feeding term r (block index 2i+j for block (i, j)).
    ``out[q]`` lists (term, coefficient) accumulated into output block q.
    """

    lhs: List[List[Tuple[int, object]]]
    rhs: List[List[Tuple[int, object]]]
    out: List[List[Tuple[int, object]]]


def _plan(alg: BilinearAlgorithm, as_float: bool) -> _Plan:
    conv = float if as_float else (lambda x: x)

    def nonzero(pairs):
        return [(idx, conv(c)) for idx, c in pairs if c != 0]

    lhs, rhs = [], []
    for x, y, _ in alg.terms:
        # tr(X a) = Σ X[j, i] a[i, j]
        lhs.append(nonzero(((2 * i + j, x[j, i]) for i in range(2) for j in range(2))))
        rhs.append(nonzero(((2 * i + j, y[j, i]) for i in range(2) for j in range(2))))
    out = []
    for i in range(2):
        for j in range(2):
            out.append(nonzero((r, z[i, j]) for r, (_, _, z) in enumerate(alg.terms)))
    return _Plan(lhs, rhs, out)


def _combine(blocks: Sequence[np.ndarray], coeffs, shape, zero, counter: Optional[OpCounter]) -> np.ndarray:
    """Σ c_k blocks[k]: sign flips free, other scalings one mult per entry."""
    m2 = shape[0] * shape[1]
    acc = None
    for idx, c in coeffs:
        blk = blocks[idx]
        if c == 1:
            term, negate = blk, False
        elif c == -1:
            term, negate = blk, True
        else:
            term, negate = blk * c, False
            if counter is not None:
                counter.scalar_multiplications += m2
        if acc is None:
            acc = -term if negate else term
        else:
            acc = acc - term if negate else acc + term
            if counter is not None:
                counter.scalar_additions += m2
    if acc is None:
        return np.full(shape, zero, dtype=blocks[0].dtype)
    return acc


def _split(A: np.ndarray) -> List[np.ndarray]:
    h = A.shape[0] // 2
    return [A[:h, :h], A[:h, h:], A[h:, :h], A[h:, h:]]


def _recurse(plan: _Plan, A, B, cutoff: int, zero, counter: Optional[OpCounter]) -> np.ndarray:
    n = A.shape[0]
    if n <= cutoff or n == 1:
        return _naive(A, B, counter)
    h = n // 2
    Ab, Bb = _split(A), _split(B)
    products = []
    for lc, rc in zip(plan.lhs, plan.rhs):
        SA = _combine(Ab, lc, (h, h), zero, counter)
        SB = _combine(Bb, rc, (h, h), zero, counter)
        products.append(_recurse(plan, SA, SB, cutoff, zero, counter))
    C = np.empty_like(A)
    for q, coeffs in enumerate(plan.out):
        i, j = divmod(q, 2)
        C[i * h:(i + 1) * h, j * h:(j + 1) * h] = _combine(products, coeffs, (h, h), zero, counter)
    return C


def multiply_recursive(
    alg: BilinearAlgorithm,
    A: np.ndarray,
    B: np.ndarray,
    cutoff: int = 1,
    *,
    check: bool = True,
) -> Tuple[np.ndarray, OpCounter]:
    """Product of A and B by recursive application of ``alg``.

    Exact (object) inputs must live in ``alg.field``. Float inputs use the
    algorithm's coefficients converted to float.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    n = _check_square_pair(A, B)
    field = _check_kinds(A, B)
    if field is not None and field != alg.field:
        raise FieldMismatch(f"matrices in {field!r}, algorithm over {alg.field!r}")
    if check and not verify_bilinear(alg).passed:
        raise UnverifiedAlgorithm("algorithm fails basis-pair verification")
    counter = OpCounter()
    exact = field is not None
    zero = alg.field.zero if exact else 0.0
    if n <= cutoff:
        return _naive(A, B, counter), counter
    size = next_power_of_two(n)
    plan = _plan(alg, as_float=not exact)
    C = _recurse(plan, pad(A, size, zero), pad(B, size, zero), cutoff, zero, counter)
    return C[:n, :n].copy(), counter


# ---------------------------------------------------------------------------
# Operation-count model
# ---------------------------------------------------------------------------


@dataclass
class CountModel:
    """Per-level constants of an algorithm under the counting rules of OpCounter.

    At block size m (children of size m/2 = h) one level costs
    ``additions_per_level * h²`` additions and ``scalings_per_level * h²``
    multiplications on top of the ``rank`` recursive calls.
    """

    rank: int
    additions_per_level: int
    scalings_per_level: int

    def predict(self, k: int, leaf: int = 1) -> OpCounter:
        """Counts for n = leaf * 2**k with cutoff ``leaf``."""
        if k < 0:
            raise ValueError("k must be >= 0")
        base = leaf ** 3
        mults = leaf ** 3
        adds = leaf * leaf * (leaf - 1)
        size = leaf
        for _ in range(k):
            h2 = size * size
            base = self.rank * base
            mults = self.rank * mults + self.scalings_per_level * h2
            adds = self.rank * adds + self.additions_per_level * h2
            size *= 2
        return OpCounter(base, mults, adds)


def count_model(alg: BilinearAlgorithm) -> CountModel:
    plan = _plan(alg, as_float=False)
    adds = 0
    scalings = 0
    for group in (plan.lhs, plan.rhs, plan.out):
        for coeffs in group:
            adds += max(len(coeffs) - 1, 0)
            scalings += sum(1 for _, c in coeffs if c != 1 and c != -1)
    return CountModel(alg.rank, adds, scalings)


def predict_counts(k: int, alg: Optional[BilinearAlgorithm] = None, leaf: int = 1) -> OpCounter:
    """Predicted OpCounter at n = leaf·2^k (default: canonical Strassen, leaf 1)."""
    if alg is None:
        from .decomp_gen import build_algorithm, canonical_strassen_params

        alg = build_algorithm(canonical_strassen_params())
    return count_model(alg).predict(k, leaf)


# ---------------------------------------------------------------------------
# Float benchmark
# ---------------------------------------------------------------------------


@dataclass
class BenchReport:
    n: int
    cutoff: int
    reps: int
    recursive_samples: List[float] = dc_field(default_factory=list)
    naive_samples: List[float] = dc_field(default_factory=list)
    max_rel_error: float = 0.0
    coefficients_exact: bool = True

    @property
    def recursive_median(self) -> float:
        return statistics.median(self.recursive_samples)

    @property
    def naive_median(self) -> float:
        return statistics.median(self.naive_samples)

    def rows(self) -> List[dict]:
        return [
            dict(path="recursive", n=self.n, cutoff=self.cutoff,
                 median_seconds=self.recursive_median, max_rel_error=self.max_rel_error),
            dict(path="naive", n=self.n, cutoff=self.cutoff,
                 median_seconds=self.naive_median, max_rel_error=0.0),
        ]


def coefficients_float_exact(alg: BilinearAlgorithm) -> bool:
    """True when every coefficient survives conversion to float64 unchanged."""
    from gmpy2 import mpq

    for term in alg.terms:
        for m in term:
            for x in m.flat:
                if mpq(float(x)) != x:
                    return False
    return True


def relative_error(approx: np.ndarray, ref: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """max_ij |approx - ref|_ij / (|A| |B|)_ij.

    Each entry is normalized by the magnitude of its own inner product, so
    entries where ``ref`` cancels to near zero do not inflate the figure.
    """
    scale = np.abs(A) @ np.abs(B)
    err = np.abs(approx - ref)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(scale > 0, err / scale, np.where(err > 0, np.inf, 0.0))
    return float(rel.max()) if rel.size else 0.0


def bench(alg: BilinearAlgorithm, n: int, cutoff: int = 64, reps: int = 3, seed: int = 0) -> BenchReport:
    """Time recursive vs naive on float64 inputs uniform in [-1, 1]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if alg.field.characteristic != 0:
        raise FieldMismatch("float benchmark needs an algorithm over the rationals")
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1.0, 1.0, (n, n))
    B = rng.uniform(-1.0, 1.0, (n, n))
    if not verify_bilinear(alg).passed:
        raise UnverifiedAlgorithm("algorithm fails basis-pair verification")
    report = BenchReport(n, cutoff, reps, coefficients_exact=coefficients_float_exact(alg))
    rec = ref = None
    for _ in range(reps):
        t0 = time.perf_counter()
        rec, _ = multiply_recursive(alg, A, B, cutoff, check=False)
        t1 = time.perf_counter()
        ref = multiply_naive(A, B)
        t2 = time.perf_counter()
        report.recursive_samples.append(t1 - t0)
        report.naive_samples.append(t2 - t1)
    report.max_rel_error = relative_error(rec, ref, A, B)
    return report
