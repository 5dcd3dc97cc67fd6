"""Reconstruction of Strassen's original algorithm from the canonical parameters.

Every line of the derivation is computed from the generator output. Strassen's
seven products I..VII enter only as reference bilinear forms, used to label the
generated terms; the product-coefficient formulas then follow from the
generated Z matrices.
"""

from __future__ import annotations

from importlib import resources
from typing import Dict, List, Optional, Tuple

import numpy as np

from .decomp_gen import BilinearAlgorithm, Params, build_algorithm, c_matrix, canonical_strassen_params, denominator
from .exact_arith import QQ, format_scalar
from .tensor_core import identity, mat_equal

POSITIONS = [(1, 1), (1, 2), (2, 1), (2, 2)]
ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII"]

# Strassen's products as (coefficients on a, coefficients on b), positions as above.
STRASSEN_PRODUCTS: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {
    "I": ((1, 0, 0, 1), (1, 0, 0, 1)),
    "II": ((0, 0, 1, 1), (1, 0, 0, 0)),
    "III": ((1, 0, 0, 0), (0, 1, 0, -1)),
    "IV": ((0, 0, 0, 1), (-1, 0, 1, 0)),
    "V": ((1, 1, 0, 0), (0, 0, 0, 1)),
    "VI": ((-1, 0, 1, 0), (1, 1, 0, 0)),
    "VII": ((0, 1, 0, -1), (0, 0, 1, 1)),
}

C_ORDER = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)]

GOLDEN_RESOURCE = "demo_golden.txt"


def fmt_mat(m: np.ndarray) -> str:
    return "[" + ",".join("[" + ",".join(format_scalar(x) for x in row) + "]" for row in m) + "]"


def fmt_vec(v: np.ndarray) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def form_coefficients(x: np.ndarray) -> List:
    """Coefficients of a ↦ tr(x a) on a^{1,1}, a^{1,2}, a^{2,1}, a^{2,2}."""
    return [x[j - 1, i - 1] for i, j in POSITIONS]


def _signed_sum(coeffs, names) -> str:
    parts = []
    for c, name in zip(coeffs, names):
        if not c:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{format_scalar(mag)} {name}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def fmt_linear(coeffs, letter: str) -> str:
    names = [f"{letter}^{{{i},{j}}}" for i, j in POSITIONS]
    text = _signed_sum(coeffs, names)
    nonzero = sum(1 for c in coeffs if c)
    return text if nonzero == 1 and not text.startswith("-") else f"({text})"


def fmt_elementary_sum(z: np.ndarray) -> str:
    names = [f"e_{{{i},{j}}}" for i, j in POSITIONS]
    coeffs = [z[i - 1, j - 1] for i, j in POSITIONS]
    text = _signed_sum(coeffs, names)
    nonzero = sum(1 for c in coeffs if c)
    return text if nonzero == 1 and not text.startswith("-") else f"({text})"


def _ratio(got: List, ref: List) -> Optional[object]:
    """k with got == k * ref, or None."""
    k = None
    for g, r in zip(got, ref):
        if r:
            k = g / r
            break
    if k is None or not k:
        return None
    if all(g == k * r for g, r in zip(got, ref)):
        return k
    return None


def label_terms(alg: BilinearAlgorithm) -> List[Optional[Tuple[str, object]]]:
    """For each term, (label, k) with tr(X a) tr(Y b) = k · label(a, b)."""
    out = []
    for x, y, _ in alg.terms:
        got = [p * q for p in form_coefficients(x) for q in form_coefficients(y)]
        match = None
        for name, (ra, rb) in STRASSEN_PRODUCTS.items():
            ref = [QQ(p * q) for p in ra for q in rb]
            k = _ratio(got, ref)
            if k is not None:
                match = (name, k)
                break
        out.append(match)
    return out


def product_formulas(alg: BilinearAlgorithm) -> Dict[Tuple[int, int], Dict[str, object]]:
    """(ab)^{i,j} as a combination of the labels."""
    labels = label_terms(alg)
    if any(lbl is None for lbl in labels):
        raise ValueError("some terms do not match a Strassen product")
    formulas = {}
    for i, j in POSITIONS:
        combo: Dict[str, object] = {}
        for (name, k), (_, _, z) in zip(labels, alg.terms):
            c = k * z[i - 1, j - 1]
            if c:
                combo[name] = combo.get(name, 0) + c
        formulas[(i, j)] = {name: combo[name] for name in ROMAN if name in combo and combo[name]}
    return formulas


def fmt_formula(combo: Dict[str, object]) -> str:
    return _signed_sum(list(combo.values()), list(combo.keys()))


def _name_c(m: np.ndarray, cs: Dict[Tuple[int, int], np.ndarray]) -> Optional[Tuple[str, object]]:
    """Express m as s · c_{i,j}; returns (name, s)."""
    flat = list(m.flat)
    for (i, j), c in cs.items():
        s = _ratio(flat, list(c.flat))
        if s is not None:
            return f"c_{{{i},{j}}}", s
    return None


def render(p: Optional[Params] = None) -> str:
    p = canonical_strassen_params() if p is None else p
    alg = build_algorithm(p)
    d = denominator(p)
    cs = {ij: c_matrix(*ij, p) for ij in C_ORDER}
    lines = ["Canonical parameters"]
    for i in range(3):
        lines.append(f"  v_{i + 1} = {fmt_vec(p.v[i])}^T   lambda_{i + 1} = {fmt_vec(p.lam[i])}")
    lines.append(f"  lambda_1(v_2) lambda_2(v_3) lambda_3(v_1) = {format_scalar(d)}")
    lines.append("")
    lines.append("c matrices, c_{i,j} = v_i lambda_j")
    for ij in C_ORDER:
        lines.append(f"  c_{{{ij[0]},{ij[1]}}} = {fmt_mat(cs[ij])}")
    lines.append("")
    lines.append("Seven-term expansion")
    one = identity(2, p.field)
    for r, (x, y, z) in enumerate(alg.terms):
        if r == 0:
            assert all(mat_equal(m, one) for m in (x, y, z))
            lines.append("  ab = tr(a) tr(b) I")
            continue
        (xn, xs), (yn, ys), (zn, zs) = _name_c(x, cs), _name_c(y, cs), _name_c(z, cs)
        s = xs * ys * zs
        sign = "+" if s == 1 else "-" if s == -1 else f"+ {format_scalar(s)}"
        lines.append(f"     {sign} tr(a {xn}) tr(b {yn}) {zn}")
    lines.append("")
    lines.append("Bilinear forms")
    labels = label_terms(alg)
    for (name, k), (x, y, z) in zip(labels, alg.terms):
        form = fmt_linear(form_coefficients(x), "a") + fmt_linear(form_coefficients(y), "b")
        scale = "" if k == 1 else "-" if k == -1 else f"{format_scalar(k)} "
        lines.append(f"  {form} = {scale}{name}   => {name} . {fmt_elementary_sum(z * k)}")
    lines.append("")
    lines.append("Product coefficients")
    for (i, j), combo in product_formulas(alg).items():
        lines.append(f"  (ab)^{{{i},{j}}} = {fmt_formula(combo)}")
    return "\n".join(lines) + "\n"


def golden_text() -> str:
    return resources.files("volstrassen").joinpath("data", GOLDEN_RESOURCE).read_text()


def diff_against_golden(text: str) -> List[str]:
    import difflib

    return list(difflib.unified_diff(golden_text().splitlines(), text.splitlines(), "golden", "computed", lineterm=""))
