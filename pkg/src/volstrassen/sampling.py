"""Seeded random scalars, matrices and generator parameters."""

from __future__ import annotations

import random

import numpy as np

from .decomp_gen import Params, kernel_form, validate_params
from .exact_arith import Field, PrimeField
from .tensor_core import vec2


def random_scalar(rng: random.Random, field: Field, lo: int = -9, hi: int = 9, max_den: int = 1):
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    return field(rng.randint(lo, hi), rng.randint(1, max_den))


def random_nonzero(rng: random.Random, field: Field, lo: int = -3, hi: int = 3):
    while True:
        x = random_scalar(rng, field, lo, hi)
        if x:
            return x


def random_matrix(rng: random.Random, field: Field, shape=(2, 2), lo: int = -9, hi: int = 9, max_den: int = 1):
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        out[idx] = random_scalar(rng, field, lo, hi, max_den)
    return out


def random_vec2(rng: random.Random, field: Field, lo: int = -3, hi: int = 3):
    return vec2(random_scalar(rng, field, lo, hi), random_scalar(rng, field, lo, hi), field)


def random_nonzero_vec2(rng: random.Random, field: Field, lo: int = -3, hi: int = 3):
    while True:
        v = random_vec2(rng, field, lo, hi)
        if any(v):
            return v


def random_hypothesis_params(rng: random.Random, field: Field, lo: int = -3, hi: int = 3) -> Params:
    """Nonzero v_i with λ_i a random nonzero multiple of the kernel form of v_i.

    No noncolinearity is enforced; the result may or may not be valid.
    """
    vs = tuple(random_nonzero_vec2(rng, field, lo, hi) for _ in range(3))
    lams = tuple(kernel_form(v) * random_nonzero(rng, field, lo, hi) for v in vs)
    return Params(vs, lams)


def random_valid_params(rng: random.Random, field: Field, lo: int = -3, hi: int = 3) -> Params:
    """Rejection sampling over small integer coordinates."""
    while True:
        p = random_hypothesis_params(rng, field, lo, hi)
        if validate_params(p).valid:
            return p


def random_degenerate_params(rng: random.Random, field: Field, lo: int = -3, hi: int = 3) -> Params:
    """Hypothesis holds but two of the v_i are colinear (so conditions 1–3 all fail)."""
    p = random_hypothesis_params(rng, field, lo, hi)
    i, j = rng.sample((1, 2, 3), 2)
    w = p.v[i - 1] * random_nonzero(rng, field, lo, hi)
    return p.replace(v={j: w}, lam={j: kernel_form(w) * random_nonzero(rng, field, lo, hi)})
