"""Linear algebra on V = k^2 and V^{⊗3}.

Conventions
-----------
* Vectors (``Vec2``) are columns, linear forms (``CoVec2``) rows; both are
  length-2 numpy object arrays of exact scalars.
* ``Mat2`` is a 2×2 object array, ``Mat8`` an 8×8 one acting on V^{⊗3} with
  basis index ``b = 4*i1 + 2*i2 + i3`` (big-endian, same as ``np.kron``).
* A trilinear form F on L(V) is stored as the ``Mat8`` T with
  ``F(a1, a2, a3) = tr(T · kron(a1, a2, a3))``. Composition with left
  multiplication by t then is ``T @ t``.
* :class:`Perm3` stores images ``(σ(1), σ(2), σ(3))``. The cycle (123) is
  ``1→2→3→1`` i.e. ``Perm3((2, 3, 1))``; (321) is its inverse.
  ``t_σ(u1⊗u2⊗u3) = u_σ(1)⊗u_σ(2)⊗u_σ(3)``, so ``t_σ·t_τ = t_{τ∘σ}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .errors import FieldMismatch
from .exact_arith import Field, QQ, field_of

Vec2 = np.ndarray
CoVec2 = np.ndarray
Mat2 = np.ndarray
Mat8 = np.ndarray


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _to_field(values, field: Field, shape: tuple) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    flat = np.asarray(values, dtype=object).reshape(-1)
    if flat.size != out.size:
        raise ValueError(f"expected {out.size} entries, got {flat.size}")
    for i, x in enumerate(flat):
        out.flat[i] = field(x)
    return out


def vec2(x, y, field: Field = QQ) -> Vec2:
    return _to_field([x, y], field, (2,))


def covec2(x, y, field: Field = QQ) -> CoVec2:
    return _to_field([x, y], field, (2,))


def mat2(rows, field: Field = QQ) -> Mat2:
    return _to_field(rows, field, (2, 2))


def identity(n: int, field: Field = QQ) -> np.ndarray:
    out = np.full((n, n), field.zero, dtype=object)
    for i in range(n):
        out[i, i] = field.one
    return out


def zeros(shape, field: Field = QQ) -> np.ndarray:
    return np.full(shape, field.zero, dtype=object)


def elementary(i: int, j: int, field: Field = QQ) -> Mat2:
    """e_{ij} with 1-based indices, matching the usual e_{1,1} ... e_{2,2}."""
    out = zeros((2, 2), field)
    out[i - 1, j - 1] = field.one
    return out


def field_of_array(arr: np.ndarray) -> Field:
    """Common field of all entries; FieldMismatch if they disagree."""
    fields = {field_of(x) for x in np.asarray(arr, dtype=object).flat}
    if len(fields) != 1:
        raise FieldMismatch(f"entries from {len(fields)} fields")
    return fields.pop()


def common_field(*arrays) -> Field:
    fields = {field_of_array(a) for a in arrays}
    if len(fields) != 1:
        raise FieldMismatch(f"operands from several fields: {sorted(map(repr, fields))}")
    return fields.pop()


def trace(a: np.ndarray):
    n = a.shape[0]
    out = a[0, 0]
    for i in range(1, n):
        out = out + a[i, i]
    return out


def pair(lam: CoVec2, v: Vec2):
    """λ(v)."""
    return lam[0] * v[0] + lam[1] * v[1]


def mat_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.all(a == b))


# ---------------------------------------------------------------------------
# ι, ι*, *
# ---------------------------------------------------------------------------


def iota(v: Vec2, lam: CoVec2) -> Mat2:
    """ι(v⊗λ) = (u ↦ λ(u) v), i.e. the outer product v·λ."""
    common_field(v, lam)
    return np.outer(v, lam)


def iota_star_eval(v: Vec2, lam: CoVec2, a: Mat2):
    """ι*(v⊗λ)(a) = λ(a v)."""
    common_field(v, lam, a)
    return pair(lam, a.dot(v))


def star_eval(a: Mat2, b: Mat2):
    """a*(b) = tr(ab)."""
    common_field(a, b)
    return trace(a.dot(b))


def left_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """L_a(b) = ab."""
    return a.dot(b)


def right_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """R_a(b) = ba."""
    return b.dot(a)


# ---------------------------------------------------------------------------
# Permutations of tensor factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Perm3:
    images: Tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3]:
            raise ValueError(f"not a permutation of (1, 2, 3): {self.images}")
        object.__setattr__(self, "images", tuple(self.images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @property
    def signature(self) -> int:
        inversions = sum(
            1 for i, j in itertools.combinations(range(3), 2) if self.images[i] > self.images[j]
        )
        return -1 if inversions % 2 else 1

    def compose(self, other: Perm3) -> Perm3:
        """``self ∘ other``: apply ``other`` first."""
        return Perm3(tuple(self(other(i)) for i in (1, 2, 3)))

    def inverse(self) -> Perm3:
        inv = [0, 0, 0]
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Perm3(tuple(inv))

    @property
    def cycle_name(self) -> str:
        return _CYCLE_NAMES[self.images]

    def __repr__(self):
        return f"Perm3{self.cycle_name}"


_CYCLE_NAMES = {
    (1, 2, 3): "id",
    (2, 3, 1): "(123)",
    (3, 1, 2): "(321)",
    (2, 1, 3): "(12)",
    (1, 3, 2): "(23)",
    (3, 2, 1): "(13)",
}

PERM_ID = Perm3((1, 2, 3))
CYCLE_123 = Perm3((2, 3, 1))
CYCLE_321 = Perm3((3, 1, 2))

# Fixed order: id, (123), (321), (12), (23), (13). The product expansion of
# the generated algorithm follows this order term by term.
S3: Tuple[Perm3, ...] = tuple(Perm3(images) for images in _CYCLE_NAMES)


def _basis_digits(b: int) -> Tuple[int, int, int]:
    return (b >> 2) & 1, (b >> 1) & 1, b & 1


@lru_cache(maxsize=None)
def _perm_pattern(images: Tuple[int, int, int]) -> Tuple[int, ...]:
    """dest[b] = basis index of t_σ(e_b)."""
    dest = []
    for b in range(8):
        digits = _basis_digits(b)
        d = [digits[s - 1] for s in images]
        dest.append(4 * d[0] + 2 * d[1] + d[2])
    return tuple(dest)


def perm_matrix(sigma: Perm3, field: Field = QQ) -> Mat8:
    """Matrix of t_σ: sends e_(i1,i2,i3) to e_(i_σ(1), i_σ(2), i_σ(3))."""
    out = zeros((8, 8), field)
    for src, dst in enumerate(_perm_pattern(sigma.images)):
        out[dst, src] = field.one
    return out


def kron3(a1: Mat2, a2: Mat2, a3: Mat2) -> Mat8:
    common_field(a1, a2, a3)
    return np.kron(np.kron(a1, a2), a3)


def t_sigma_star_eval(sigma: Perm3, a1: Mat2, a2: Mat2, a3: Mat2):
    """t_σ*(a1⊗a2⊗a3) = tr(t_σ · (a1⊗a2⊗a3))."""
    field = common_field(a1, a2, a3)
    return trace(perm_matrix(sigma, field).dot(kron3(a1, a2, a3)))


# ---------------------------------------------------------------------------
# The forms g and h
# ---------------------------------------------------------------------------


def eval_g(a1: Mat2, a2: Mat2, a3: Mat2):
    """g = tr(a1 a2 a3) - tr(a3 a2 a1)."""
    common_field(a1, a2, a3)
    return trace(a1.dot(a2).dot(a3)) - trace(a3.dot(a2).dot(a1))


def eval_h(a1: Mat2, a2: Mat2, a3: Mat2):
    """h = tr(a1) tr(a2) tr(a3) - tr(a1 a2 a3)."""
    common_field(a1, a2, a3)
    return trace(a1) * trace(a2) * trace(a3) - trace(a1.dot(a2).dot(a3))


# A formal term is (coefficient, item). The item is either a Perm3, meaning
# t_σ*, or a triple of (v, λ) pairs, meaning ι*(v1⊗λ1)⊗ι*(v2⊗λ2)⊗ι*(v3⊗λ3).
RankOneFactors = Sequence[Tuple[Vec2, CoVec2]]
FormTerm = Tuple[object, Union[Perm3, RankOneFactors]]


def g_terms(field: Field = QQ) -> list:
    return [(field.one, CYCLE_123), (-field.one, CYCLE_321)]


def h_terms(field: Field = QQ) -> list:
    return [(field.one, PERM_ID), (-field.one, CYCLE_123)]


def form_as_mat8(terms: Iterable[FormTerm], field: Field = QQ) -> Mat8:
    """Dual Mat8 of a signed combination of t_σ* and rank-one triple forms."""
    out = zeros((8, 8), field)
    for coef, item in terms:
        coef = field(coef) if isinstance(coef, int) else field.check(coef)
        if isinstance(item, Perm3):
            out = out + coef * perm_matrix(item, field)
        else:
            (v1, l1), (v2, l2), (v3, l3) = item
            block = kron3(iota(v1, l1), iota(v2, l2), iota(v3, l3))
            if field_of_array(block) != field:
                raise FieldMismatch("rank-one factors outside the requested field")
            out = out + coef * block
    return out


def eval_mat8_form(T: Mat8, a1: Mat2, a2: Mat2, a3: Mat2):
    common_field(T, a1, a2, a3)
    return trace(T.dot(kron3(a1, a2, a3)))


def compose_with_L(T: Mat8, sigma: Perm3) -> Mat8:
    """Dual of F ∘ L_{t_σ} where T is the dual of F."""
    return T.dot(perm_matrix(sigma, field_of_array(T)))
