"""Rank-6 decompositions of h and rank-7 multiplication algorithms from three
(vector, kernel form) pairs.

Given nonzero v_i ∈ V and nonzero λ_i ∈ V* with λ_i(v_i) = 0, set
c_{i,j} = v_i λ_j. When the v_i are pairwise noncolinear,

    ab = tr(a) tr(b) I + (1/d) Σ_σ ε(σ) tr(a c_{σ1,σ2}) tr(b c_{σ2,σ3}) c_{σ3,σ1}

with d = λ1(v2) λ2(v3) λ3(v1) ≠ 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import BadCalibration, DegenerateBasis, FieldMismatch, InvalidIndex, InvalidParams
from .exact_arith import QQ, Field, inv
from .tensor_core import (
    CYCLE_123,
    S3,
    CoVec2,
    Mat2,
    Mat8,
    Perm3,
    Vec2,
    common_field,
    covec2,
    eval_g,
    form_as_mat8,
    identity,
    iota,
    iota_star_eval,
    mat_equal,
    pair,
    vec2,
)


@dataclass(frozen=True, eq=False)
class Params:
    v: Tuple[Vec2, Vec2, Vec2]
    lam: Tuple[CoVec2, CoVec2, CoVec2]

    def __post_init__(self):
        if len(self.v) != 3 or len(self.lam) != 3:
            raise ValueError("Params needs exactly three vectors and three forms")
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "lam", tuple(self.lam))

    @property
    def field(self) -> Field:
        return common_field(*self.v, *self.lam)

    def __eq__(self, other):
        if not isinstance(other, Params):
            return NotImplemented
        return all(mat_equal(a, b) for a, b in zip(self.v + self.lam, other.v + other.lam))

    def replace(self, *, v=None, lam=None) -> Params:
        """Copy with some of v1..v3 / λ1..λ3 overridden; ``v={2: vec}`` etc."""
        vs = list(self.v)
        ls = list(self.lam)
        for i, x in (v or {}).items():
            vs[i - 1] = x
        for i, x in (lam or {}).items():
            ls[i - 1] = x
        return Params(tuple(vs), tuple(ls))


def kernel_form(v: Vec2) -> CoVec2:
    """The form (-v[1], v[0]), which vanishes on v and spans the annihilator of v."""
    return np.array([-v[1], v[0]], dtype=object)


def params_from_vectors(v1: Vec2, v2: Vec2, v3: Vec2) -> Params:
    return Params((v1, v2, v3), tuple(kernel_form(v) for v in (v1, v2, v3)))


def canonical_strassen_params(field: Field = QQ) -> Params:
    """The choice of (v_i, λ_i) that reproduces Strassen's original algorithm."""
    return Params(
        (vec2(1, 0, field), vec2(0, 1, field), vec2(1, 1, field)),
        (covec2(0, 1, field), covec2(1, 0, field), covec2(1, -1, field)),
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _det2(x, y):
    return x[0] * y[1] - x[1] * y[0]


def _det3(m) -> object:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def pairwise_noncolinear(xs: Sequence[np.ndarray]) -> Optional[Tuple[int, int]]:
    """First colinear pair (1-based), or None if all pairs are independent."""
    for i, j in itertools.combinations(range(3), 2):
        if not _det2(xs[i], xs[j]):
            return i + 1, j + 1
    return None


def mu_coordinates(v: Vec2, lam: CoVec2) -> list:
    """Values of μ = ι*(v⊗λ) on e11, e12, e21, e22 (μ(e_jk) = λ_j v_k)."""
    return [lam[j] * v[k] for j in range(2) for k in range(2)]


def mu_independent(p: Params) -> bool:
    """Linear independence of μ1, μ2, μ3 in L(V)*.

    When every μ_i lies in Q* (μ(I) = 0) the e22 coordinate is minus the e11
    one, so the 3×3 determinant on (e11, e12, e21) decides independence.
    Otherwise fall back to the rank of the full 3×4 coordinate matrix.
    """
    rows = [mu_coordinates(v, l) for v, l in zip(p.v, p.lam)]
    if all(not (r[0] + r[3]) for r in rows):
        return bool(_det3([r[:3] for r in rows]))
    return any(bool(_det3([[r[c] for c in cols] for r in rows])) for cols in itertools.combinations(range(4), 3))


@dataclass
class ValidationReport:
    hypothesis: bool
    vectors_noncolinear: bool
    forms_noncolinear: bool
    mu_independent: bool
    mu_basis_of_qstar: bool
    problems: List[str] = dc_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.hypothesis and self.vectors_noncolinear

    def __bool__(self):
        return self.valid


def validate_params(p: Params) -> ValidationReport:
    """Check the hypothesis (v_i ≠ 0, λ_i ≠ 0, λ_i(v_i) = 0) and conditions 1–4.

    Conditions 2–4 are computed independently of condition 1, so a caller can
    compare them; validity itself only requires the hypothesis and condition 1.
    """
    p.field  # raises FieldMismatch on mixed fields
    problems = []
    hyp = True
    for i, (v, l) in enumerate(zip(p.v, p.lam), start=1):
        if not any(v):
            problems.append(f"hypothesis: v_{i} is zero")
            hyp = False
        if not any(l):
            problems.append(f"hypothesis: lambda_{i} is zero")
            hyp = False
        if pair(l, v):
            problems.append(f"hypothesis: lambda_{i}(v_{i}) = {pair(l, v)} is nonzero")
            hyp = False
    col_v = pairwise_noncolinear(p.v)
    if col_v is not None:
        problems.append("condition 1 (pairwise noncolinearity of v): v_%d and v_%d are colinear" % col_v)
    col_l = pairwise_noncolinear(p.lam)
    if col_l is not None:
        problems.append(
            "condition 2 (pairwise noncolinearity of lambda): lambda_%d and lambda_%d are colinear" % col_l
        )
    indep = mu_independent(p)
    if not indep:
        problems.append("condition 3 (independence of mu): mu_1, mu_2, mu_3 are linearly dependent")
    return ValidationReport(
        hypothesis=hyp,
        vectors_noncolinear=col_v is None,
        forms_noncolinear=col_l is None,
        mu_independent=indep,
        mu_basis_of_qstar=hyp and indep,
        problems=problems,
    )


def require_valid(p: Params) -> ValidationReport:
    report = validate_params(p)
    if not report.valid:
        raise InvalidParams("; ".join(report.problems), report)
    return report


def denominator(p: Params):
    """λ1(v2) λ2(v3) λ3(v1), nonzero for valid params."""
    require_valid(p)
    return pair(p.lam[0], p.v[1]) * pair(p.lam[1], p.v[2]) * pair(p.lam[2], p.v[0])


# ---------------------------------------------------------------------------
# Decomposition of h
# ---------------------------------------------------------------------------


def lambda_index(sigma: Perm3, i: int) -> int:
    """Index of the form paired with v_σ(i): σ applied after the cycle (123)."""
    return sigma(CYCLE_123(i))


@dataclass
class HTerm:
    sigma: Perm3
    sign: int
    factors: Tuple[Tuple[Vec2, CoVec2], ...]

    def evaluate(self, a1: Mat2, a2: Mat2, a3: Mat2):
        out = None
        for (v, l), a in zip(self.factors, (a1, a2, a3)):
            x = iota_star_eval(v, l, a)
            out = x if out is None else out * x
        return out


@dataclass
class HDecomposition:
    coefficient: object
    terms: List[HTerm]

    def evaluate(self, a1: Mat2, a2: Mat2, a3: Mat2):
        total = None
        for t in self.terms:
            x = t.evaluate(a1, a2, a3)
            x = x if t.sign > 0 else -x
            total = x if total is None else total + x
        return self.coefficient * total

    def as_mat8(self) -> Mat8:
        field = common_field(*(np.stack([v for v, _ in t.factors]) for t in self.terms))
        terms = [(self.coefficient * t.sign, t.factors) for t in self.terms]
        return form_as_mat8(terms, field)


def decompose_h(p: Params) -> HDecomposition:
    d = denominator(p)
    terms = []
    for sigma in S3:
        factors = tuple((p.v[sigma(i) - 1], p.lam[lambda_index(sigma, i) - 1]) for i in (1, 2, 3))
        terms.append(HTerm(sigma, sigma.signature, factors))
    return HDecomposition(-inv(d), terms)


# ---------------------------------------------------------------------------
# Decomposition of g over an arbitrary basis of Q*
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QStarForm:
    """The rank-one form μ = ι*(v⊗λ), required to vanish on the identity."""

    v: Vec2
    l: CoVec2

    def __post_init__(self):
        if pair(self.l, self.v):
            raise ValueError("λ(v) must vanish for ι*(v⊗λ) to lie in Q*")

    def __call__(self, a: Mat2):
        return iota_star_eval(self.v, self.l, a)


def qstar_basis(p: Params) -> Tuple[QStarForm, QStarForm, QStarForm]:
    return tuple(QStarForm(v, l) for v, l in zip(p.v, p.lam))


def antisymmetrized_sum(basis: Sequence[QStarForm], c1: Mat2, c2: Mat2, c3: Mat2):
    """Σ_σ ε(σ) Π_i μ_σ(i)(c_i)."""
    cs = (c1, c2, c3)
    total = None
    for sigma in S3:
        prod = None
        for i in (1, 2, 3):
            x = basis[sigma(i) - 1](cs[i - 1])
            prod = x if prod is None else prod * x
        prod = prod if sigma.signature > 0 else -prod
        total = prod if total is None else total + prod
    return total


def decompose_g_alpha(basis: Sequence[QStarForm], c1: Mat2, c2: Mat2, c3: Mat2):
    """Scalar α with g = α Σ_σ ε(σ) μ_σ(1)⊗μ_σ(2)⊗μ_σ(3).

    ``(c1, c2, c3)`` calibrate the scale and must satisfy g(c1, c2, c3) = 1.
    """
    if len(basis) != 3:
        raise ValueError("need exactly three forms")
    if eval_g(c1, c2, c3) != 1:
        raise BadCalibration(f"g(c1, c2, c3) = {eval_g(c1, c2, c3)}, expected 1")
    s = antisymmetrized_sum(basis, c1, c2, c3)
    if not s:
        raise DegenerateBasis("the forms are linearly dependent")
    return inv(s)


def g_decomposition_mat8(basis: Sequence[QStarForm], alpha) -> Mat8:
    field = common_field(*(f.v for f in basis), *(f.l for f in basis))
    terms = [
        (alpha * sigma.signature, tuple((basis[sigma(i) - 1].v, basis[sigma(i) - 1].l) for i in (1, 2, 3)))
        for sigma in S3
    ]
    return form_as_mat8(terms, field)


# ---------------------------------------------------------------------------
# Bilinear algorithm
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class BilinearAlgorithm:
    """Terms (X, Y, Z) with ab = Σ_r tr(X_r a) tr(Y_r b) Z_r."""

    field: Field
    terms: List[Tuple[Mat2, Mat2, Mat2]]

    def __post_init__(self):
        for term in self.terms:
            if len(term) != 3:
                raise ValueError("each term is an (X, Y, Z) triple")
            for m in term:
                if m.shape != (2, 2):
                    raise ValueError("term matrices must be 2x2")
                if common_field(m) != self.field:
                    raise FieldMismatch(f"term entries not in {self.field!r}")

    @property
    def rank(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BilinearAlgorithm):
            return NotImplemented
        return (
            self.field == other.field
            and self.rank == other.rank
            and all(mat_equal(x, y) for s, t in zip(self.terms, other.terms) for x, y in zip(s, t))
        )

    def copy(self) -> BilinearAlgorithm:
        return BilinearAlgorithm(self.field, [tuple(m.copy() for m in t) for t in self.terms])


def c_matrix(i: int, j: int, p: Params) -> Mat2:
    """c_{i,j} = ι(v_i ⊗ λ_j), i.e. u ↦ λ_j(u) v_i."""
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise InvalidIndex(f"c_{{{i},{j}}} needs distinct indices in 1..3")
    return iota(p.v[i - 1], p.lam[j - 1])


def sigma_term_indices(sigma: Perm3) -> Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]:
    """Index pairs of (X, Y, Z) = (c_{σ1,σ2}, c_{σ2,σ3}, c_{σ3,σ1})."""
    return (sigma(1), sigma(2)), (sigma(2), sigma(3)), (sigma(3), sigma(1))


def build_algorithm(p: Params) -> BilinearAlgorithm:
    """Identity term first, then one term per σ in :data:`S3` order, sign and 1/d folded into Z."""
    d = denominator(p)
    field = p.field
    one = identity(2, field)
    terms = [(one, one.copy(), one.copy())]
    scale = inv(d)
    for sigma in S3:
        (i1, j1), (i2, j2), (i3, j3) = sigma_term_indices(sigma)
        z = c_matrix(i3, j3, p) * (scale if sigma.signature > 0 else -scale)
        terms.append((c_matrix(i1, j1, p), c_matrix(i2, j2, p), z))
    return BilinearAlgorithm(field, terms)
