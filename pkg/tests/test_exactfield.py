from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammalaws.exactfield import (
    GF,
    QQ,
    FieldError,
    FieldSpec,
    binomial,
    binomial_in,
    binomial_row_all_divisible,
    is_power_of,
    is_prime,
)

PRIMES = [2, 3, 5, 7, 101]


def test_rejects_composite_characteristic():
    with pytest.raises(FieldError):
        FieldSpec(4)
    with pytest.raises(FieldError):
        FieldSpec(-3)


def test_coercion():
    k = GF(5)
    assert k("2/3") == 4  # 3 * 4 = 12 = 2
    assert k(-1) == 4
    assert QQ("2/3") == Fraction(2, 3)


def test_inverse_of_zero_raises():
    for k in (GF(3), QQ):
        with pytest.raises((ZeroDivisionError, FieldError)):
            k.inv(k.zero)


def test_binomial_convention():
    # binomial(a, b) is the coefficient of x^a y^b in (x + y)^(a+b)
    assert binomial(2, 3) == 10
    assert binomial(0, 0) == 1
    assert binomial_in(GF(2), 1, 1) == 0


def test_powers_and_rows():
    assert is_power_of(8, 2) and is_power_of(1, 3) and not is_power_of(6, 2)
    # row n of Pascal's triangle is divisible by p away from the ends iff n is a power of p
    for p in (2, 3, 5):
        for n in range(2, 40):
            assert binomial_row_all_divisible(n, p) == is_power_of(n, p)


@given(st.integers(2, 200))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % q for q in range(2, n))


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_field_axioms_mod_p(p, a, b, c):
    k = GF(p)
    a, b, c = k(a), k(b), k(c)
    assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
    assert k.add(a, k.neg(a)) == k.zero
    if a != 0:
        assert k.mul(a, k.inv(a)) == k.one
    assert k.pow(a, p) == a  # Frobenius is the identity on F_p


@given(st.fractions(), st.fractions())
def test_rational_arithmetic_is_fraction_arithmetic(a, b):
    assert QQ.add(a, b) == a + b
    assert QQ.mul(a, b) == a * b
    if b != 0:
        assert QQ.div(a, b) == a / b


@given(st.integers(0, 30), st.integers(0, 30))
def test_binomial_matches_math_comb(a, b):
    assert binomial(a, b) == comb(a + b, a)


def test_scalar_wrapper():
    k = GF(7)
    x = k.scalar(3)
    assert (x * 5).value == 1
    assert (x / x).value == 1
    assert (x ** -1 * x).value == 1
    assert not k.scalar(0)
    with pytest.raises(FieldError):
        x + GF(5).scalar(1)


def test_json_round_trip():
    for k in (QQ, GF(2), GF(101)):
        assert FieldSpec.from_json(k.to_json()) == k
