import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles as o
from volstrassen.errors import FieldMismatch
from volstrassen.exact_arith import GF, QQ
from volstrassen.sampling import random_matrix, random_vec2
from volstrassen.tensor_core import (
    CYCLE_123,
    CYCLE_321,
    PERM_ID,
    S3,
    Perm3,
    compose_with_L,
    elementary,
    eval_g,
    eval_h,
    eval_mat8_form,
    form_as_mat8,
    g_terms,
    h_terms,
    identity,
    iota,
    iota_star_eval,
    kron3,
    mat2,
    mat_equal,
    pair,
    perm_matrix,
    star_eval,
    t_sigma_star_eval,
    trace,
    vec2,
    covec2,
)


def frac(x):
    return o.to_lists(x) if isinstance(x, np.ndarray) else o.F(int(x.numerator)) / int(x.denominator)


def test_perm3_basics():
    assert S3[0] == PERM_ID
    assert CYCLE_123.images == (2, 3, 1)
    assert CYCLE_321.images == (3, 1, 2)
    assert [s.signature for s in S3] == [1, 1, 1, -1, -1, -1]
    assert CYCLE_123.inverse() == CYCLE_321
    assert CYCLE_123.compose(CYCLE_123) == CYCLE_321
    assert len(set(S3)) == 6
    with pytest.raises(ValueError):
        Perm3((1, 1, 2))


def test_perm_matrix_is_a_permutation():
    for s in S3:
        P = perm_matrix(s)
        assert mat_equal(P.dot(perm_matrix(s.inverse())), identity(8))
        assert all(sum(int(x) for x in row) == 1 for row in P)


def test_perm_matrix_anti_homomorphism():
    # matrices multiply in the opposite order of composition
    for s, t in itertools.product(S3, repeat=2):
        assert mat_equal(perm_matrix(s).dot(perm_matrix(t)), perm_matrix(t.compose(s)))


def test_elementary_products():
    for i, j, k, l in itertools.product((1, 2), repeat=4):
        assert frac(elementary(i, j).dot(elementary(k, l))) == o.elementary_product(i, j, k, l)


def test_iota_is_rank_one_map():
    rng = random.Random(0)
    for _ in range(100):
        v, lam = random_vec2(rng, QQ), random_vec2(rng, QQ)
        m = iota(v, lam)
        u = random_vec2(rng, QQ)
        assert mat_equal(m.dot(u), v * pair(lam, u))
        a = random_matrix(rng, QQ)
        # ι*(v⊗λ)(a) = λ(a v)
        assert iota_star_eval(v, lam, a) == pair(lam, a.dot(v))
        assert iota_star_eval(v, lam, a) == star_eval(m, a)


def test_star_eval_is_trace_pairing():
    rng = random.Random(1)
    for _ in range(100):
        a, b = random_matrix(rng, QQ), random_matrix(rng, QQ)
        assert frac(star_eval(a, b)) == o.trace(o.matmul(frac(a), frac(b)))


@pytest.mark.parametrize("field", [QQ, GF(2), GF(7)], ids=repr)
def test_t_sigma_star_against_index_sum(field):
    rng = random.Random(2)
    for _ in range(40):
        a1, a2, a3 = (random_matrix(rng, field) for _ in range(3))
        for s in S3:
            got = t_sigma_star_eval(s, a1, a2, a3)
            if field is QQ:
                assert frac(got) == o.t_sigma_star(s.images, frac(a1), frac(a2), frac(a3))
        assert t_sigma_star_eval(PERM_ID, a1, a2, a3) == trace(a1) * trace(a2) * trace(a3)
        assert t_sigma_star_eval(CYCLE_123, a1, a2, a3) == trace(a1.dot(a2).dot(a3))
        assert t_sigma_star_eval(CYCLE_321, a1, a2, a3) == trace(a3.dot(a2).dot(a1))


def test_g_h_against_oracle():
    rng = random.Random(3)
    for _ in range(100):
        ms = [random_matrix(rng, QQ, max_den=4) for _ in range(3)]
        fs = [frac(m) for m in ms]
        assert frac(eval_g(*ms)) == o.g(*fs)
        assert frac(eval_h(*ms)) == o.h(*fs)


def test_g_is_antisymmetric_and_kills_identity():
    rng = random.Random(4)
    I = identity(2)
    for _ in range(100):
        a, b, c = (random_matrix(rng, QQ) for _ in range(3))
        x = eval_g(a, b, c)
        assert eval_g(b, a, c) == -x
        assert eval_g(a, c, b) == -x
        assert eval_g(c, b, a) == -x
        assert eval_g(a, a, c) == 0
        assert eval_g(I, b, c) == 0 and eval_g(a, I, c) == 0 and eval_g(a, b, I) == 0
        k = rng.randint(-5, 5)
        assert eval_g(a + k * I, b, c) == x


def test_form_mat8_matches_evaluation():
    rng = random.Random(5)
    G = form_as_mat8(g_terms())
    H = form_as_mat8(h_terms())
    for _ in range(50):
        ms = [random_matrix(rng, QQ) for _ in range(3)]
        assert eval_mat8_form(G, *ms) == eval_g(*ms)
        assert eval_mat8_form(H, *ms) == eval_h(*ms)


def test_g_composed_with_cycle_is_h():
    G = form_as_mat8(g_terms())
    H = form_as_mat8(h_terms())
    assert mat_equal(compose_with_L(G, CYCLE_321), H)


def test_kron3_index_convention():
    a = [elementary(1, 2), elementary(2, 2), elementary(2, 1)]
    K = kron3(*a)
    # row index 4*i1 + 2*i2 + i3 with zero-based digits
    assert K[0 * 4 + 1 * 2 + 1, 1 * 4 + 1 * 2 + 0] == 1
    assert sum(int(x) for x in K.flat) == 1


def test_field_mismatch_in_arrays():
    with pytest.raises(FieldMismatch):
        kron3(identity(2, GF(3)), identity(2, GF(5)), identity(2, GF(3)))


def test_constructors():
    assert mat_equal(mat2([[1, 2], [3, 4]]), np.array([[QQ(1), QQ(2)], [QQ(3), QQ(4)]], dtype=object))
    assert pair(covec2(1, -1), vec2(3, 5)) == -2
    assert mat_equal(identity(2, GF(2)), elementary(1, 1, GF(2)) + elementary(2, 2, GF(2)))


small = st.integers(-20, 20)
mat_st = st.lists(small, min_size=4, max_size=4).map(lambda xs: mat2([xs[:2], xs[2:]]))


@given(mat_st, mat_st, mat_st)
def test_trace_cyclic_property(a, b, c):
    assert trace(a.dot(b).dot(c)) == trace(b.dot(c).dot(a))
    assert eval_h(a, b, c) == trace(a) * trace(b) * trace(c) - trace(c.dot(a).dot(b))
