import random
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from volstrassen.errors import DivisionByZero, FieldMismatch, ParseError
from volstrassen.exact_arith import (
    GF,
    QQ,
    PrimeFieldElem,
    div,
    field_from_descriptor,
    field_of,
    format_scalar,
    inv,
    parse_scalar,
)

FIELDS = [QQ, GF(2), GF(5), GF(7), GF(101)]


def rand_elem(rng, field):
    if field is QQ:
        return QQ(rng.randint(-50, 50), rng.randint(1, 20))
    return field(rng.randint(0, field.characteristic - 1))


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_field_axioms_random_triples(field):
    rng = random.Random(7)
    zero, one = field.zero, field.one
    for _ in range(1000):
        a, b, c = (rand_elem(rng, field) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        assert a - b == a + (-b)
        if a != zero:
            assert a * inv(a) == one
            assert div(b, a) * a == b


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_parse_format_round_trip(field):
    rng = random.Random(3)
    for _ in range(300):
        x = rand_elem(rng, field)
        assert parse_scalar(format_scalar(x), field) == x


def test_rationals_match_fraction_oracle():
    rng = random.Random(11)
    for _ in range(500):
        p, q = rng.randint(-99, 99), rng.randint(1, 99)
        r, s = rng.randint(-99, 99), rng.randint(1, 99)
        got = QQ(p, q) * QQ(r, s) - QQ(p, q) / QQ(s)
        want = Fraction(p, q) * Fraction(r, s) - Fraction(p, q) / s
        assert Fraction(int(got.numerator), int(got.denominator)) == want


def test_parse_examples():
    assert parse_scalar("-3/6", QQ) == QQ(-1, 2)
    assert format_scalar(parse_scalar("-3/6", QQ)) == "-1/2"
    assert parse_scalar("5", GF(3)) == GF(3)(2)
    assert parse_scalar(" 7 ", QQ) == QQ(7)
    assert format_scalar(QQ(4, 2)) == "2"
    assert parse_scalar("3/4", GF(7)) == GF(7)(3) * inv(GF(7)(4))


@pytest.mark.parametrize("text", ["1/-2", "", "1/", "/2", "1.5", "abc", "1/2/3", "--1", "0x10"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_scalar(text, QQ)


def test_parse_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_scalar("1/0", QQ)
    with pytest.raises(DivisionByZero):
        parse_scalar("1/5", GF(5))


def test_prime_field_inverse_example():
    assert inv(GF(7)(3)) == GF(7)(5)
    assert GF(7)(3).inverse() == GF(7)(5)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        inv(QQ.zero)
    with pytest.raises(DivisionByZero):
        inv(GF(5).zero)
    with pytest.raises(ZeroDivisionError):
        div(GF(5)(3), GF(5)(0))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatch):
        GF(5)(1) * mpq(1, 2)
    with pytest.raises(FieldMismatch):
        mpq(1, 2) + GF(3)(1)


def test_ints_coerce():
    assert GF(5)(3) + 4 == GF(5)(2)
    assert 2 * GF(7)(4) == GF(7)(1)
    assert QQ(1, 2) + 1 == QQ(3, 2)


def test_prime_field_normalizes_and_caches():
    assert GF(5)(-1) == GF(5)(4)
    assert GF(5)(12).value == 2
    assert GF(5) is GF(5)
    assert hash(GF(5)(1)) == hash(GF(5)(6))


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(1)


def test_descriptors():
    assert QQ.descriptor() == "rational"
    assert GF(7).descriptor() == {"prime": 7}
    assert field_from_descriptor("rational") is QQ
    assert field_from_descriptor({"prime": 7}) is GF(7)
    assert field_of(GF(7)(3)) is GF(7)
    assert field_of(QQ(1, 3)) is QQ
    for bad in ["real", {"prime": 8}, {"p": 7}, 3, None]:
        with pytest.raises(ParseError):
            field_from_descriptor(bad)


def test_characteristic_two():
    F2 = GF(2)
    assert F2.one + F2.one == F2.zero
    assert -F2.one == F2.one


rationals = st.builds(lambda n, d: QQ(n, d), st.integers(-10**6, 10**6), st.integers(1, 10**6))
primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101, 65521])


@given(rationals, rationals, rationals)
def test_rational_ring_laws_property(a, b, c):
    assert a * (b - c) == a * b - a * c
    if b != 0:
        assert (a / b) * b == a


@given(primes, st.integers(), st.integers())
def test_prime_field_matches_integer_mod(p, x, y):
    F = GF(p)
    assert (F(x) * F(y)).value == (x * y) % p
    assert (F(x) - F(y)).value == (x - y) % p
    if x % p:
        assert (F(x) * inv(F(x))).value == 1
        assert inv(F(x)).value == pow(x, -1, p)


@given(rationals)
def test_rational_text_round_trip_property(x):
    assert parse_scalar(format_scalar(x), QQ) == x


def test_elem_is_immutable():
    x = GF(5)(2)
    with pytest.raises(AttributeError):
        x.value = 3
    assert isinstance(x, PrimeFieldElem)
