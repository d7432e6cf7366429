"""
Exact scalar fields and the (field, q) pair every algebra object carries.

Two fields are supported: the rationals (elements are `Fraction`) and prime
fields F_p (elements are ints in range(p)). Floating point is refused
everywhere; ranks jump discontinuously in q, so approximate input is
meaningless here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

Scalar = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class ConfigError(ValueError):
    """Bad field or parameter specification."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def parse_rational(text: str) -> Fraction:
    """Parse "a" or "a/b" exactly; decimals and exponents are rejected."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ConfigError(f"not an exact rational: {text!r} (use 'a' or 'a/b')")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ConfigError(f"zero denominator in {text!r}") from None


class Rationals:
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, float):
            raise ConfigError("floating point scalars are not allowed")
        if isinstance(x, str):
            return parse_rational(x)
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def pow(self, a, k: int):
        if k < 0:
            return self.inv(a) ** (-k)
        return a ** k

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if not is_prime(p):
            raise ConfigError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def __call__(self, x: Any) -> int:
        if isinstance(x, float):
            raise ConfigError("floating point scalars are not allowed")
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ConfigError(f"denominator divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, k: int):
        return pow(a, k, self.p)

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


Field = Union[Rationals, PrimeField]


def parse_field(text: str) -> Field:
    """'Q' or 'Fp:<p>'."""
    t = text.strip()
    if t.upper() in ("Q", "QQ", "RATIONALS"):
        return Rationals()
    m = re.match(r"^(?:Fp|F|GF):?(\d+)$", t, flags=re.I)
    if m:
        return PrimeField(int(m.group(1)))
    raise ConfigError(f"unknown field {text!r}; expected Q or Fp:<p>")


@dataclass(frozen=True)
class ScalarConfig:
    """A field together with the invertible Hecke parameter q."""

    field: Field
    q: Scalar
    _qpow: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        q = self.field(self.q)
        if q == self.field.zero:
            raise ConfigError("q must be invertible (nonzero)")
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, field_text: str = "Q", q_text: str = "1") -> "ScalarConfig":
        return cls(parse_field(field_text), q_text)

    def qpow(self, k: int):
        """q**k for any integer k (cached)."""
        v = self._qpow.get(k)
        if v is None:
            v = self.field.pow(self.q, k)
            self._qpow[k] = v
        return v

    @property
    def label(self) -> str:
        return f"{self.field.name}, q={self.field.fmt(self.q)}"

    def as_dict(self) -> dict:
        return {"field": self.field.name, "q": self.field.fmt(self.q)}


def rationals(q="1") -> ScalarConfig:
    return ScalarConfig(Rationals(), q)


def prime_field(p: int, q=1) -> ScalarConfig:
    return ScalarConfig(PrimeField(p), q)
