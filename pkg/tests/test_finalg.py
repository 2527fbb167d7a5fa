import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalaws import linalg
from gammalaws.exactfield import GF, QQ
from gammalaws.finalg import (
    AlgebraError,
    AlgebraMap,
    FinAlgebra,
    Ideal,
    RelativeAlgebra,
    berkowitz,
    diagonal_map,
    is_reduced,
    nilradical,
    product_algebra,
    product_projections,
    relative_product,
)
from gammalaws.fixtures import random_algebra

sympy = pytest.importorskip("sympy")

FIELDS = [GF(2), GF(3), QQ]


def test_presentation_dimension():
    k = GF(3)
    assert FinAlgebra.from_presentation(["x", "y"], ["x^2", "y^3", "x*y"], k).dim == 4
    assert FinAlgebra.from_presentation([], [], k).dim == 1
    with pytest.raises(Exception):
        FinAlgebra.from_presentation(["x"], [], k)  # k[x] is infinite dimensional


def test_parse_reduces_modulo_relations():
    B = FinAlgebra.from_presentation(["u"], ["u^2 + u + 1"], GF(2))
    u = B.parse("u")
    assert u * u == B.parse("u + 1")
    assert u**3 == B.one()


@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_random_algebra_is_associative_commutative(seed, k):
    rng = random.Random(seed)
    B = random_algebra(rng, k, 4)
    x, y, z = (B.random_element(rng) for _ in range(3))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * B.one() == x


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([GF(2), GF(3)]))
def test_nilradical_by_enumeration(seed, k):
    rng = random.Random(seed)
    B = random_algebra(rng, k, 3)
    N = nilradical(B)
    nilpotent = [b for b in B.elements() if b.is_nilpotent()]
    assert len(nilpotent) == k.char ** N.dim
    assert all(N.contains(b.coords) for b in nilpotent)
    assert is_reduced(B) == (N.dim == 0)


def test_ideal_operations():
    k = GF(3)
    B = FinAlgebra.from_presentation(["x"], ["x^4"], k)
    x = B.parse("x")
    I = Ideal.generated(B, [x**2])
    J = Ideal.generated(B, [x**3])
    assert J <= I and not I <= J
    assert I.dim == 2 and I.codim == 2
    assert I + J == I
    assert I.radical() == Ideal.generated(B, [x])
    Q = I.quotient()
    assert Q.algebra.dim == 2
    assert Q.projection(x) * Q.projection(x) == Q.algebra.zero()
    assert Ideal.zero(B).is_zero() and Ideal.unit(B).dim == 4


def test_non_ideal_rejected():
    B = FinAlgebra.from_presentation(["x"], ["x^3"], GF(2))
    with pytest.raises(AlgebraError):
        Ideal(B, linalg.Subspace(GF(2), 3, [B.one().coords]))


def test_image_and_preimage():
    k = GF(3)
    B = FinAlgebra.from_presentation(["x", "y"], ["x^2", "y^2"], k)
    C = FinAlgebra.from_presentation(["x"], ["x^2"], k)
    u = AlgebraMap.from_images(C, B, ["x"])
    I = Ideal.generated(B, [B.parse("x")])
    assert I.preimage(u) == Ideal.generated(C, [C.parse("x")])
    assert Ideal.generated(C, [C.parse("x")]).image(u) <= I


def test_bad_map_rejected():
    k = GF(3)
    B = FinAlgebra.from_presentation(["x"], ["x^2"], k)
    with pytest.raises(AlgebraError):
        AlgebraMap.from_images(B, B, ["1"])  # x^2 = 0 but 1^2 = 1


def test_products_and_diagonal():
    k = QQ
    B = FinAlgebra.from_presentation(["x"], ["x^2"], k)
    P = product_algebra(B, B)
    p1, p2 = product_projections(B, B, P)
    diag = diagonal_map(B, P)
    b = B.parse("3 + x")
    assert p1(diag(b)) == b and p2(diag(b)) == b
    assert P.dim == 4 and not is_reduced(P)


@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_berkowitz_matches_sympy(seed, k):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    M = [[k.random(rng) for _ in range(n)] for _ in range(n)]
    # berkowitz works over any ring with + - *; wrap F_p entries as Scalars
    wrap = k.scalar if k.char else (lambda x: x)
    coeffs = berkowitz([[wrap(c) for c in row] for row in M], wrap(k.zero), wrap(k.one))
    coeffs = [c.value if k.char else c for c in coeffs]
    t = sympy.symbols("t")
    ref = sympy.Matrix([[sympy.Rational(str(c)) for c in row] for row in M]).charpoly(t).all_coeffs()
    ref = ref[::-1]
    if k.char:
        ref = [sympy.Rational(c) % k.char for c in ref]
    assert [sympy.Rational(str(c)) for c in coeffs] == ref


def test_relative_algebra_coordinates():
    k = GF(3)
    A = FinAlgebra.from_presentation(["e"], ["e^2"], k)
    B = RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^2 - e"], ["e"], ["1", "d"])
    assert B.rank == 2 and B.total.dim == 4
    b = B.total.parse("1 + e*d")
    cs = B.coords(b)
    assert cs == [A.parse("1"), A.parse("e")]
    assert B.from_coords(cs) == b
    # the relative multiplication table recovers d^2 = e
    assert B.rel_constants()[1][1] == [A.parse("e"), A.zero()]


def test_relative_base_change_and_product():
    k = GF(2)
    K = FinAlgebra.ground(k)
    B = RelativeAlgebra.over_field(FinAlgebra.from_presentation(["x"], ["x^2 + x + 1"], k))
    A2 = FinAlgebra.from_presentation(["t"], ["t^2"], k)
    Bt = B.base_change(AlgebraMap.structure(A2))
    assert Bt.rank == 2 and Bt.total.dim == 4 and Bt.base.same(A2)
    P, p1, p2 = relative_product(B, B)
    assert P.rank == 4 and P.base.same(K)
