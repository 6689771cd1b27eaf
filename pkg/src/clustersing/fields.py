"""Exact base-field arithmetic: the rationals or a prime field F_p.

Coefficients are stored "raw" for speed: over the rationals a coefficient is a
Python int or a Fraction in lowest terms (ints are preferred whenever the
denominator is 1), over F_p it is an int in [0, p).  FieldElem wraps a raw
coefficient together with its FieldSpec for use at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Coeff = Union[int, Fraction]


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


@dataclass(frozen=True)
class FieldSpec:
    """The base field: characteristic 0 means Q, otherwise F_p for prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p != 0 and not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    # -- raw coefficient arithmetic -------------------------------------

    def normalize(self, value) -> Coeff:
        """Bring an int/Fraction into canonical raw form for this field."""
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                den = value.denominator % p
                if den == 0:
                    raise ZeroDivisionError("denominator divisible by p")
                return (value.numerator % p) * pow(den, -1, p) % p
            return value % p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        return value

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            return (a + b) % p
        c = a + b
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            return (a - b) % p
        c = a - b
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            return (a * b) % p
        c = a * b
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def neg(self, a: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            return (-a) % p
        return -a

    def inv(self, a: Coeff) -> Coeff:
        p = self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if p:
            return pow(a, -1, p)
        c = 1 / Fraction(a)
        return c.numerator if c.denominator == 1 else c

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def coeff_str(self, a: Coeff) -> str:
        """Render a coefficient: "num/den" over Q, the residue over F_p."""
        if isinstance(a, Fraction):
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def coeff_from_str(self, s: str) -> Coeff:
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self.normalize(Fraction(int(num), int(den)))
        return self.normalize(int(s))


QQ = FieldSpec(0)


@dataclass(frozen=True)
class FieldElem:
    """A field element tagged with its field, for API-surface arithmetic."""

    spec: FieldSpec
    value: Coeff

    def __post_init__(self):
        object.__setattr__(self, "value", self.spec.normalize(self.value))

    def _check(self, other: "FieldElem"):
        if self.spec != other.spec:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.div(self.value, other.value))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.value))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.spec.coeff_str(self.value)
