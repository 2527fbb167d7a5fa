"""Exact arithmetic over Q and the prime fields F_p.

Elements are carried around as *raw* canonical values: ``int`` in ``[0, p)``
for F_p and ``fractions.Fraction`` for Q.  ``FieldSpec`` knows how to combine
raw values; ``Scalar`` wraps a raw value together with its field for the
public, operator-overloaded API.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable

MAX_CHAR = 2**31


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: Q when ``char == 0``, else F_char."""

    char: int

    def __post_init__(self):
        if self.char != 0 and not (is_prime(self.char) and self.char <= MAX_CHAR):
            raise FieldError(f"characteristic must be 0 or a prime <= 2^31, got {self.char}")

    # -- raw value arithmetic -------------------------------------------
    def __call__(self, x: Any) -> Any:
        """Coerce an int, Fraction, Scalar or string to a canonical raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"scalar over {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x)
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        return int(x) % self.char

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if self.char == 0:
            return a**n
        return pow(a, n, self.char)

    def is_finite(self) -> bool:
        return self.char != 0

    def elements(self) -> Iterable[int]:
        if self.char == 0:
            raise FieldError("Q is not enumerable")
        return range(self.char)

    def random(self, rng: random.Random, height: int = 5):
        if self.char == 0:
            return Fraction(rng.randint(-height, height), rng.randint(1, height))
        return rng.randrange(self.char)

    def scalar(self, x) -> "Scalar":
        return Scalar(self(x), self)

    def to_json(self) -> dict:
        return {"char": self.char}

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        return cls(int(doc["char"]))

    def fmt(self, a) -> str:
        return str(a)

    def __str__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@dataclass(frozen=True)
class Scalar:
    value: Any
    field: FieldSpec

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError("mixed fields")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._coerce(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._coerce(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._coerce(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._coerce(other)), self.field)

    def __rtruediv__(self, other):
        return Scalar(self.field.div(self._coerce(other), self.value), self.field)

    def __pow__(self, n: int):
        if n < 0:
            return Scalar(self.field.pow(self.field.inv(self.value), -n), self.field)
        return Scalar(self.field.pow(self.value, n), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


# -- binomial combinatorics ----------------------------------------------


@lru_cache(maxsize=None)
def binomial(a: int, b: int) -> int:
    """((a, b)) = C(a+b, a): the shuffle coefficient of gamma^a x gamma^b."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(a + b, a)


def binomial_in(field: FieldSpec, a: int, b: int):
    """``binomial(a, b)`` reduced to a raw value of ``field``."""
    return field(binomial(a, b))


def binomial_row_all_divisible(n: int, p: int) -> bool:
    """True iff p divides C(n, k) for every 0 < k < n."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    return all(math.comb(n, k) % p == 0 for k in range(1, n))


def is_power_of(n: int, p: int) -> bool:
    """True iff n == p**s for some s >= 0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1
