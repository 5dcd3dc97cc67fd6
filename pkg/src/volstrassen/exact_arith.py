"""Exact scalar fields: the rationals (backed by ``gmpy2.mpq``) and GF(p).

Every scalar belongs to exactly one field. Python ints are accepted as
operands everywhere since they embed canonically into any field; mixing a
rational with a GF(p) element, or GF(p) with GF(q), raises
:class:`FieldMismatch`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch, ParseError

Rational = type(mpq(0))

_SCALAR_RE = re.compile(r"(-?\d+)(?:/(\d+))?")
_PRIMALITY_CHECK_LIMIT = 1 << 16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeFieldElem:
    """An element of GF(p), stored as its representative in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElem is immutable")

    def _coerce(self, other):
        """Representative of ``other`` in GF(p); None for non-scalar operands."""
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        if isinstance(other, (Rational, float, Fraction)):
            raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")
        return None

    def _new(self, value: int) -> PrimeFieldElem:
        return PrimeFieldElem(value, self.p)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pos__(self):
        return self

    def inverse(self) -> PrimeFieldElem:
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return self._new(pow(self.value, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(o) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else (self.value - o) % self.p == 0

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF{self.p}({self.value})"

    def __str__(self):
        return str(self.value)

    def __float__(self):
        raise TypeError("GF(p) elements have no float value")


Scalar = Union[Rational, PrimeFieldElem]


class Field:
    """Field descriptor. Calling it converts ints / text / rationals into elements."""

    characteristic: int

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        return parse_scalar(text, self)

    def format(self, x) -> str:
        self.check(x)
        return format_scalar(x)

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check(self, x):
        if not self.contains(x):
            raise FieldMismatch(f"{x!r} is not an element of {self}")
        return x

    def descriptor(self):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __call__(self, value, den: int = 1):
        if isinstance(value, PrimeFieldElem):
            raise FieldMismatch("cannot convert a GF(p) element to a rational")
        if isinstance(value, float):
            raise TypeError("floats are not exact scalars")
        if isinstance(value, str):
            return parse_scalar(value, self)
        if den == 0:
            raise DivisionByZero("zero denominator")
        return mpq(value) / den if den != 1 else mpq(value)

    def contains(self, x) -> bool:
        return isinstance(x, Rational)

    def descriptor(self):
        return "rational"

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (RationalField, ())


class PrimeField(Field):
    """GF(p). Primality is checked for p < 2**16 and trusted above."""

    def __init__(self, p: int):
        if p < 2 or (p < _PRIMALITY_CHECK_LIMIT and not _is_prime(p)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, value, den: int = 1):
        if isinstance(value, PrimeFieldElem):
            if value.p != self.p:
                raise FieldMismatch(f"GF({value.p}) element given to GF({self.p})")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, Rational):
            raise FieldMismatch("cannot convert a rational to a GF(p) element")
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"cannot build a GF({self.p}) element from {type(value).__name__}")
        if den % self.p == 0:
            raise DivisionByZero(f"denominator {den} vanishes in GF({self.p})")
        return PrimeFieldElem(value * pow(den, -1, self.p), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, PrimeFieldElem) and x.p == self.p

    def descriptor(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x) -> Field:
    if isinstance(x, Rational):
        return QQ
    if isinstance(x, PrimeFieldElem):
        return GF(x.p)
    raise FieldMismatch(f"{type(x).__name__} is not an exact scalar")


def field_from_descriptor(desc) -> Field:
    """Inverse of :meth:`Field.descriptor` (``"rational"`` or ``{"prime": p}``)."""
    if desc == "rational":
        return QQ
    if isinstance(desc, dict) and set(desc) == {"prime"}:
        p = desc["prime"]
        if isinstance(p, int) and not isinstance(p, bool):
            try:
                return GF(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
    raise ParseError(f"bad field descriptor: {desc!r}")


def same_field(*xs) -> Field:
    """Return the common field of ``xs``; raise FieldMismatch otherwise."""
    fields = {field_of(x) for x in xs}
    if len(fields) != 1:
        raise FieldMismatch(f"scalars from several fields: {sorted(map(repr, fields))}")
    return fields.pop()


def inv(x):
    if not x:
        raise DivisionByZero("inverse of zero")
    if isinstance(x, PrimeFieldElem):
        return x.inverse()
    return 1 / x


def div(x, y):
    same_field(x, y)
    return x * inv(y)


def parse_scalar(text: str, field: Field):
    """Parse ``-?digits(/digits)?``. The sign may only appear on the numerator."""
    m = _SCALAR_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"not a scalar: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return field(num, den)


def format_scalar(x) -> str:
    if isinstance(x, PrimeFieldElem):
        return str(x.value)
    if isinstance(x, Rational):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    raise FieldMismatch(f"{type(x).__name__} is not an exact scalar")
