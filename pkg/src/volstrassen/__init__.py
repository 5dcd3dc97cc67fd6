"""Strassen-type 2×2 multiplication algorithms from the volume form on L(V)/kI."""

from .decomp_gen import (
    BilinearAlgorithm,
    HDecomposition,
    Params,
    QStarForm,
    build_algorithm,
    c_matrix,
    canonical_strassen_params,
    decompose_g_alpha,
    decompose_h,
    denominator,
    validate_params,
)
from .errors import (
    BadCalibration,
    DegenerateBasis,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    InvalidIndex,
    InvalidParams,
    ParseError,
    UnverifiedAlgorithm,
)
from .exact_arith import GF, QQ, PrimeFieldElem, format_scalar, parse_scalar
from .ops import OpCounter
from .recursive_engine import bench, multiply_naive, multiply_recursive, predict_counts
from .verifier import apply_algorithm, run_lemma_suite, verify_bilinear

__version__ = "0.1.0"
