"""Exact verification of bilinear algorithms and the randomized lemma suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .decomp_gen import (
    BilinearAlgorithm,
    antisymmetrized_sum,
    build_algorithm,
    decompose_g_alpha,
    decompose_h,
    denominator,
    g_decomposition_mat8,
    lambda_index,
    qstar_basis,
    validate_params,
)
from .errors import FieldMismatch
from .exact_arith import QQ, Field, inv
from .ops import OpCounter
from .sampling import (
    random_degenerate_params,
    random_hypothesis_params,
    random_matrix,
    random_scalar,
    random_valid_params,
    random_vec2,
)
from .tensor_core import (
    CYCLE_123,
    CYCLE_321,
    PERM_ID,
    S3,
    Mat2,
    common_field,
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
    mat_equal,
    pair,
    perm_matrix,
    star_eval,
    trace,
)

Failure = Tuple[Tuple[int, int, int, int], Mat2, Mat2]


@dataclass
class VerificationReport:
    passed: bool
    failures: List[Failure]
    checked_count: int

    def __bool__(self):
        return self.passed


def linear_form_eval(x: Mat2, a: Mat2):
    """tr(x a) = Σ x[j, i] a[i, j]."""
    return trace(x.dot(a))


def apply_algorithm(alg: BilinearAlgorithm, a: Mat2, b: Mat2, counter: Optional[OpCounter] = None) -> Mat2:
    """Σ_r tr(X_r a) tr(Y_r b) Z_r, one multiplication event per term."""
    if common_field(a, b) != alg.field:
        raise FieldMismatch(f"operands not in {alg.field!r}")
    out = np.full((2, 2), alg.field.zero, dtype=object)
    for x, y, z in alg.terms:
        m = linear_form_eval(x, a) * linear_form_eval(y, b)
        out = out + m * z
    if counter is not None:
        counter.base_multiplications += alg.rank
    return out


def verify_bilinear(alg: BilinearAlgorithm) -> VerificationReport:
    """Compare against e_ij e_kl = δ_jk e_il on all 16 basis pairs (1-based indices)."""
    f = alg.field
    failures = []
    checked = 0
    for i, j, k, l in itertools.product((1, 2), repeat=4):
        expected = elementary(i, l, f) if j == k else np.full((2, 2), f.zero, dtype=object)
        got = apply_algorithm(alg, elementary(i, j, f), elementary(k, l, f))
        checked += 1
        if not mat_equal(got, expected):
            failures.append(((i, j, k, l), expected, got))
    return VerificationReport(not failures, failures, checked)


# ---------------------------------------------------------------------------
# Factor-matrix form and the Brent equations
# ---------------------------------------------------------------------------


def factor_matrices(alg: BilinearAlgorithm):
    """Rank×4 matrices U, V, W with (ab)_mn = Σ_r (U_r·vec a)(V_r·vec b) W_r[mn].

    Blocks are flattened row-major, so column 2i+j holds the coefficient of
    a_ij: U[r, 2i+j] = X_r[j, i] since tr(X a) = Σ X[j, i] a[i, j].
    """
    rank = alg.rank
    U = np.empty((rank, 4), dtype=object)
    V = np.empty((rank, 4), dtype=object)
    W = np.empty((rank, 4), dtype=object)
    for r, (x, y, z) in enumerate(alg.terms):
        U[r] = x.T.reshape(4)
        V[r] = y.T.reshape(4)
        W[r] = z.reshape(4)
    return U, V, W


def algorithm_from_factors(field: Field, U, V, W) -> BilinearAlgorithm:
    terms = []
    for r in range(U.shape[0]):
        terms.append(
            (
                np.array(U[r], dtype=object).reshape(2, 2).T.copy(),
                np.array(V[r], dtype=object).reshape(2, 2).T.copy(),
                np.array(W[r], dtype=object).reshape(2, 2).copy(),
            )
        )
    return BilinearAlgorithm(field, terms)


def brent_check(field: Field, U, V, W) -> List[Tuple[int, int, int, int, int, int]]:
    """Unsatisfied Brent equations Σ_r U[r,ij] V[r,kl] W[r,mn] = δ_jk δ_im δ_ln (0-based)."""
    bad = []
    rank = U.shape[0]
    for i, j, k, l, m, n in itertools.product(range(2), repeat=6):
        s = field.zero
        for r in range(rank):
            s = s + U[r, 2 * i + j] * V[r, 2 * k + l] * W[r, 2 * m + n]
        target = field.one if (j == k and i == m and l == n) else field.zero
        if s != target:
            bad.append((i, j, k, l, m, n))
    return bad


# ---------------------------------------------------------------------------
# Lemma suite
# ---------------------------------------------------------------------------


@dataclass
class LemmaResult:
    name: str
    description: str
    passed: bool = True
    checks: int = 0
    counterexample: Optional[str] = None

    def fail(self, detail: str):
        if self.passed:
            self.passed = False
            self.counterexample = detail

    def expect(self, cond: bool, detail: Callable[[], str]):
        self.checks += 1
        if not cond:
            self.fail(detail())


@dataclass
class SuiteReport:
    seed: int
    trials: int
    field: Field
    results: List[LemmaResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.name:<42} {r.checks:>6} checks  {r.description}"
            if r.counterexample:
                line += f"\n     counterexample: {r.counterexample}"
            out.append(line)
        return out

    def __getitem__(self, name: str) -> LemmaResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _fmt(*arrays) -> str:
    return " | ".join(str(np.asarray(a).tolist()) for a in arrays)


def _basis_triples(field: Field):
    es = [elementary(i, j, field) for i, j in itertools.product((1, 2), repeat=2)]
    return list(itertools.product(es, repeat=3))


def _basis_table(v, l):
    """μ(e_jk) = λ_j v_k for μ = ι*(v⊗λ), indexed as 2j+k (0-based)."""
    return [l[j] * v[k] for j in range(2) for k in range(2)]


def run_lemma_suite(
    seed: int,
    trials: int,
    field: Field = QQ,
    perm: Callable = perm_matrix,
) -> SuiteReport:
    """Run every lemma check with ``trials`` random instances each.

    ``perm`` is the t_σ matrix constructor; it is a parameter so that a wrong
    convention can be injected and shown to be caught.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    report = SuiteReport(seed, trials, field)
    f = field

    def mat():
        return random_matrix(rng, f, max_den=4)

    def vec():
        return random_vec2(rng, f, -9, 9)

    def new(name, desc):
        res = LemmaResult(name, desc)
        report.results.append(res)
        return res

    # ι equations and the commuting diagram.
    r_iota = new("iota_equations", "ι(v⊗λ)ι(u⊗μ)=λ(u)ι(v⊗μ); ι*(v⊗λ)(ι(u⊗μ))=λ(u)μ(v); tr ι(v⊗λ)=λ(v)")
    r_diag = new("diagram_iota_star_commutes", "ι*(v⊗λ) = ι(v⊗λ)*")
    for _ in range(trials):
        v, u, lam, mu = vec(), vec(), vec(), vec()
        a = mat()
        r_iota.expect(
            mat_equal(iota(v, lam).dot(iota(u, mu)), pair(lam, u) * iota(v, mu)),
            lambda: _fmt(v, u, lam, mu),
        )
        r_iota.expect(iota_star_eval(v, lam, iota(u, mu)) == pair(lam, u) * pair(mu, v), lambda: _fmt(v, u, lam, mu))
        r_iota.expect(trace(iota(v, lam)) == pair(lam, v), lambda: _fmt(v, lam))
        r_diag.expect(star_eval(iota(v, lam), a) == iota_star_eval(v, lam, a), lambda: _fmt(v, lam, a))

    r_star = new("star_product", "(ab)* = a*∘L_b = b*∘R_a")
    for _ in range(trials):
        a, b, c = mat(), mat(), mat()
        lhs = star_eval(a.dot(b), c)
        r_star.expect(lhs == star_eval(a, b.dot(c)) and lhs == star_eval(b, c.dot(a)), lambda: _fmt(a, b, c))

    r_tss = new("lemma_t_sigma_star", "t_id*, t_(123)*, t_(321)* = tr·tr·tr, tr(a1a2a3), tr(a3a2a1)")
    for _ in range(trials):
        a1, a2, a3 = mat(), mat(), mat()
        k = kron3(a1, a2, a3)
        closed = {
            PERM_ID: trace(a1) * trace(a2) * trace(a3),
            CYCLE_123: trace(a1.dot(a2).dot(a3)),
            CYCLE_321: trace(a3.dot(a2).dot(a1)),
        }
        for sigma, want in closed.items():
            got = trace(perm(sigma, f).dot(k))
            r_tss.expect(got == want, lambda: f"σ={sigma.cycle_name}: got {got}, want {want}; " + _fmt(a1, a2, a3))

    r_comp = new("t_composition_law", "t_σ·t_τ = t_(τ∘σ) for all 36 pairs; t_(123)·t_(321) = t_id")
    for s, t in itertools.product(S3, S3):
        r_comp.expect(
            mat_equal(perm(s, f).dot(perm(t, f)), perm(t.compose(s), f)),
            lambda: f"σ={s.cycle_name}, τ={t.cycle_name}",
        )
    r_comp.expect(mat_equal(perm(CYCLE_123, f).dot(perm(CYCLE_321, f)), identity(8, f)), lambda: "t_(123)·t_(321)")

    r_evl = new("lemma_eval_L", "L_tσ(⊗ι(u_i⊗ζ_i)) = ⊗ι(u_σ(i)⊗ζ_i)")
    r_cwl = new("lemma_eval_composition_with_L_t_sigma", "(⊗ι*(v_i⊗λ_i))∘L_tσ = ⊗ι*(v_i⊗λ_σ⁻¹(i))")
    for _ in range(trials):
        us = [vec() for _ in range(3)]
        zs = [vec() for _ in range(3)]
        for sigma in S3:
            lhs = perm(sigma, f).dot(kron3(*(iota(us[i], zs[i]) for i in range(3))))
            rhs = kron3(*(iota(us[sigma(i + 1) - 1], zs[i]) for i in range(3)))
            r_evl.expect(mat_equal(lhs, rhs), lambda: f"σ={sigma.cycle_name}; " + _fmt(*us, *zs))
            T = form_as_mat8([(1, tuple(zip(us, zs)))], f)
            lhs = T.dot(perm(sigma, f))
            sinv = sigma.inverse()
            rhs = form_as_mat8([(1, tuple((us[i], zs[sinv(i + 1) - 1]) for i in range(3)))], f)
            r_cwl.expect(mat_equal(lhs, rhs), lambda: f"σ={sigma.cycle_name}; " + _fmt(*us, *zs))

    r_vol = new("g_volume_form", "g antisymmetric; g = 0 if an argument is a multiple of I")
    one = identity(2, f)
    for _ in range(trials):
        a1, a2, a3 = mat(), mat(), mat()
        g = eval_g(a1, a2, a3)
        for swapped in ((a2, a1, a3), (a3, a2, a1), (a1, a3, a2)):
            r_vol.expect(eval_g(*swapped) == -g, lambda: "swap: " + _fmt(a1, a2, a3))
            if f.characteristic == 2:
                r_vol.expect(eval_g(*swapped) == g, lambda: "char 2 swap: " + _fmt(a1, a2, a3))
        s = random_scalar(rng, f)
        for pos in range(3):
            args = [a1, a2, a3]
            args[pos] = s * one
            r_vol.expect(not eval_g(*args), lambda: f"scalar {s} at position {pos + 1}: " + _fmt(a1, a2, a3))

    G = perm(CYCLE_123, f) - perm(CYCLE_321, f)
    H = perm(PERM_ID, f) - perm(CYCLE_123, f)
    r_ght = new("lemma_g_h_t_sigma_star", "g = t_(123)* - t_(321)*, h = t_id* - t_(123)*")
    r_ght.expect(mat_equal(form_as_mat8(g_terms(f), f), G), lambda: "g as Mat8")
    r_ght.expect(mat_equal(form_as_mat8(h_terms(f), f), H), lambda: "h as Mat8")
    for _ in range(trials):
        a1, a2, a3 = mat(), mat(), mat()
        r_ght.expect(eval_mat8_form(G, a1, a2, a3) == eval_g(a1, a2, a3), lambda: "g: " + _fmt(a1, a2, a3))
        r_ght.expect(eval_mat8_form(H, a1, a2, a3) == eval_h(a1, a2, a3), lambda: "h: " + _fmt(a1, a2, a3))

    r_rgh = new("relation_g_h", "h = g∘L_t(321) as Mat8")
    r_rgh.expect(mat_equal(G.dot(perm(CYCLE_321, f)), H), lambda: "Mat8 mismatch")

    r_rem = new("remark_rank_one_necessary", "t_(123)*∘L_t(321) = t_id* (evaluation identity)")
    r_rem.expect(mat_equal(perm(CYCLE_123, f).dot(perm(CYCLE_321, f)), perm(PERM_ID, f)), lambda: "Mat8 mismatch")
    for _ in range(trials):
        a1, a2, a3 = mat(), mat(), mat()
        k = kron3(a1, a2, a3)
        lhs = trace(perm(CYCLE_123, f).dot(perm(CYCLE_321, f)).dot(k))
        r_rem.expect(lhs == trace(a1) * trace(a2) * trace(a3), lambda: _fmt(a1, a2, a3))

    r_eqv = new("lemma_eqconv_bases", "conditions 1, 2, 3 agree under the hypothesis")
    for _ in range(trials):
        p = random_hypothesis_params(rng, f)
        rep = validate_params(p)
        r_eqv.expect(
            rep.hypothesis and rep.vectors_noncolinear == rep.forms_noncolinear == rep.mu_independent,
            lambda: f"{rep}",
        )
        p = random_degenerate_params(rng, f)
        rep = validate_params(p)
        r_eqv.expect(
            rep.hypothesis and not (rep.vectors_noncolinear or rep.forms_noncolinear or rep.mu_independent),
            lambda: f"degenerate: {rep}",
        )

    r_pdg = new("prop_decomp_g", "g = α Σ ε(σ) ⊗μ_σ(i), α from calibration, α = -1/denominator")
    c_cal = (elementary(1, 1, f), elementary(1, 2, f), elementary(2, 1, f))
    r_pdh = new("prop_decomp_h", "6-term decomposition equals h on all 64 basis triples")
    r_fix = new("alpha_fixed_points", "only σ = (123) survives at a_i = ι(v_i⊗λ_i)")
    r_cdh = new("concrete_decomp_h", "tr(a1a2a3) = Π tr(a_i) + (1/d) Σ ε(σ) Π λ_σ(123)(i)(a_i v_σ(i))")
    r_bil = new("concrete_decomp_h_bilinear", "generated 7-term algorithm multiplies 2×2 matrices")
    basis = _basis_triples(f)
    h_on_basis = [eval_h(*t) for t in basis]
    for _ in range(trials):
        p = random_valid_params(rng, f)
        d = denominator(p)
        mus = qstar_basis(p)
        alpha = decompose_g_alpha(mus, *c_cal)
        r_pdg.expect(alpha == -inv(d), lambda: f"alpha={alpha}, d={d}")
        Gd = g_decomposition_mat8(mus, alpha)
        a1, a2, a3 = mat(), mat(), mat()
        r_pdg.expect(eval_mat8_form(Gd, a1, a2, a3) == eval_g(a1, a2, a3), lambda: _fmt(a1, a2, a3))
        # an independent calibration triple must give the same α
        cal2 = (a1, a2, a3)
        gv = eval_g(*cal2)
        if gv:
            s = antisymmetrized_sum(mus, a1 * inv(gv), a2, a3)
            r_pdg.expect(s * alpha == 1, lambda: "second calibration: " + _fmt(a1, a2, a3))

        dec = decompose_h(p)
        r_pdh.expect(bool(d), lambda: "zero denominator")
        tables = [
            (-1 if t.sign < 0 else 1, [_basis_table(v, l) for v, l in t.factors]) for t in dec.terms
        ]
        for idx, (t1, t2, t3) in enumerate(itertools.product(range(4), repeat=3)):
            total = f.zero
            for sign, (m1, m2, m3) in tables:
                x = m1[t1] * m2[t2] * m3[t3]
                total = total + x if sign > 0 else total - x
            r_pdh.expect(dec.coefficient * total == h_on_basis[idx], lambda: f"basis triple {idx}")

        rank_one = [iota(v, l) for v, l in zip(p.v, p.lam)]
        lhs = eval_h(*rank_one)
        r_fix.expect(lhs == -d, lambda: f"h(a1,a2,a3)={lhs}, -d={-d}")
        for term in dec.terms:
            x = term.evaluate(*rank_one)
            if term.sigma == CYCLE_123:
                r_fix.expect(x * term.sign == d * d, lambda: f"(123) term {x}")
            else:
                r_fix.expect(not x, lambda: f"σ={term.sigma.cycle_name} contributes {x}")

        total = f.zero
        for sigma in S3:
            prod = f.one
            for i in (1, 2, 3):
                prod = prod * pair(p.lam[lambda_index(sigma, i) - 1], (a1, a2, a3)[i - 1].dot(p.v[sigma(i) - 1]))
            total = total + sigma.signature * prod
        want = trace(a1.dot(a2).dot(a3))
        r_cdh.expect(trace(a1) * trace(a2) * trace(a3) + inv(d) * total == want, lambda: _fmt(a1, a2, a3))

        alg = build_algorithm(p)
        r_bil.expect(alg.rank == 7 and verify_bilinear(alg).passed, lambda: "verification failed")

    return report
