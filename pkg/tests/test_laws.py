import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalaws.exactfield import GF, QQ
from gammalaws import linalg
from gammalaws.finalg import AlgebraMap, FinAlgebra, Ideal, is_reduced
from gammalaws.fixtures import (
    example_push_forward_i,
    field_carrier,
    random_algebra,
    random_law,
    rational_points,
)
from gammalaws.laws import (
    LawError,
    MultiplicativeLaw,
    NotMultiplicative,
    QuotientLaw,
    UnitViolation,
    UnsupportedBase,
    add_laws,
    base_change_law,
    basechange_kernel_check,
    ch_element,
    ch_inclusions_check,
    char_poly_of_law,
    evaluate,
    filtration,
    filtration_is_stable,
    frobenius_law,
    hom_law,
    image,
    is_nondegenerate,
    is_regular,
    kernel,
    kernel_bruteforce,
    kernel_char_poly,
    kernel_membership,
    law_from_values,
    norm_law,
    points_law,
    push_forward,
    rad_kernel_pushforward_check,
    unit_law,
)

laws_strategy = st.builds(
    lambda seed, p: random_law(random.Random(seed), GF(p), 4, 3),
    st.integers(0, 10**6),
    st.sampled_from([2, 3]),
)


def carrier(k, vars_, rels):
    return field_carrier(FinAlgebra.from_presentation(vars_, rels, k))


def test_validation_rejects_bad_tables():
    C = carrier(GF(3), ["x"], ["x^2"])
    A = C.base
    with pytest.raises(UnitViolation):
        law_from_values(C, 2, {(2, 0): A.scalar(2), (1, 1): A.zero(), (0, 2): A.zero()})
    with pytest.raises(NotMultiplicative):
        law_from_values(C, 2, {(2, 0): A.one(), (1, 1): A.zero(), (0, 2): A.one()})
    law = law_from_values(C, 2, {(2, 0): A.one(), (1, 1): A.zero(), (0, 2): A.zero()})
    assert isinstance(law, MultiplicativeLaw)


@pytest.mark.parametrize("k", [GF(2), GF(3), QQ])
def test_norm_is_determinant(k):
    rng = random.Random(5)
    for _ in range(5):
        B = random_algebra(rng, k, 4)
        N = norm_law(field_carrier(B))
        assert N.degree == B.dim
        b = B.random_element(rng)
        M = B.mult_matrix(b)
        assert N(b).coords[0] == linalg.det(k, M)


def test_frobenius_needs_positive_characteristic():
    with pytest.raises(UnsupportedBase):
        frobenius_law(FinAlgebra.ground(QQ))
    F = frobenius_law(FinAlgebra.ground(GF(3)), 2)
    assert F.degree == 9
    B = FinAlgebra.ground(GF(3))
    assert F(B.scalar(2)) == B.scalar(2)


def test_points_law_is_product_of_homs():
    C = carrier(GF(3), ["x"], ["x^3 - x"])
    pts = rational_points(C.total)
    assert len(pts) == 3
    law = points_law(C, [pts[0], pts[1], pts[1]])
    b = C.total.parse("x + 2")
    assert law(b) == pts[0](b) * pts[1](b) * pts[1](b)
    assert add_laws(add_laws(hom_law(C, pts[0]), hom_law(C, pts[1])), hom_law(C, pts[1])).same_table(law)


def test_unit_law():
    C = carrier(GF(2), ["x"], ["x^2"])
    u = unit_law(C)
    assert u.degree == 0 and u(C.total.parse("x")) == C.base.one()
    assert kernel(u) == Ideal.unit(C.total)


@settings(max_examples=30)
@given(laws_strategy)
def test_kernel_equals_bruteforce(law):
    assert kernel(law) == kernel_bruteforce(law)


@settings(max_examples=30)
@given(laws_strategy)
def test_filtration_is_decreasing_and_stable(law):
    chain = filtration(law)
    for a, b in zip(chain, chain[1:]):
        assert b.dim <= a.dim
    assert filtration_is_stable(law)


@settings(max_examples=30)
@given(laws_strategy, st.integers(0, 10**6))
def test_cayley_hamilton(law, seed):
    rng = random.Random(seed)
    b = law.total.random_element(rng)
    assert kernel_membership(law, ch_element(law, b))
    ch_inclusions_check(law, samples=2, rng=rng)


def test_kernel_char_poly_is_signed_power():
    C = carrier(GF(3), ["x"], ["x^3"])
    N = norm_law(C)  # odd degree: F(b - t) = (-t)^3 for nilpotent b
    x = C.total.parse("x")
    assert x in kernel(N)
    cp = char_poly_of_law(N, x)
    assert cp == kernel_char_poly(N)
    assert cp[-1] == -C.base.one()
    # normalised to det(t - b) the same polynomial is t^d
    assert [-c for c in cp] == [C.base.zero()] * 3 + [C.base.one()]


@settings(max_examples=30)
@given(laws_strategy)
def test_support_bounds(law):
    if law.base.dim != 1:
        return
    img = image(law)
    assert img.algebra.dim <= law.degree
    assert is_reduced(img.algebra)


def test_charzero_kernel_is_first_step():
    rng = random.Random(3)
    for _ in range(5):
        B = random_algebra(rng, QQ, 3)
        law = norm_law(field_carrier(B))
        chain = filtration(law)
        assert chain[-1] == chain[1]


def test_push_forward_is_precomposition():
    rng = random.Random(1)
    k = GF(3)
    C = carrier(k, ["x", "y"], ["x^2", "y^2"])
    C0 = carrier(k, ["x"], ["x^2"])
    u = AlgebraMap.from_images(C0.total, C.total, ["x"])
    N = norm_law(C)
    P = push_forward(N, u, C0)
    for _ in range(5):
        b = C0.total.random_element(rng)
        assert P(b) == N(u(b))
    assert rad_kernel_pushforward_check(N, u, C0)


def test_base_change_evaluation():
    k = GF(2)
    C = carrier(k, ["x"], ["x^2 + x + 1"])
    N = norm_law(C)
    A2 = FinAlgebra.from_presentation(["t"], ["t^2"], k)
    u = AlgebraMap.structure(A2)
    N2 = base_change_law(N, u)
    t = A2.parse("t")
    coords = [A2.one(), t]  # 1 + t x
    val = evaluate(N, coords, u)
    assert val == N2(N2.carrier.from_coords(coords))
    # N(1 + t x) = 1 + t Tr(x) + t^2 N(x) = 1 + t
    assert val == A2.parse("1 + t")


def test_regularity_and_nondegeneracy():
    k = GF(3)
    C = carrier(k, ["x"], ["x^2 - 1"])
    pts = rational_points(C.total)
    distinct = points_law(C, pts)
    doubled = points_law(C, [pts[0], pts[0]])
    assert is_nondegenerate(distinct) and not is_nondegenerate(doubled)
    assert is_regular(distinct, AlgebraMap.identity(C.total))
    assert not is_regular(distinct, AlgebraMap.structure(C.total))
    assert is_regular(doubled, AlgebraMap.structure(C.total))


def test_nondegeneracy_needs_field_base():
    ex = example_push_forward_i()
    with pytest.raises(UnsupportedBase):
        is_nondegenerate(ex.law.cover)


def test_quotient_law_rejects_relations_outside_kernel():
    C = carrier(GF(3), ["x"], ["x^2"])
    N = norm_law(C)
    with pytest.raises(LawError):
        QuotientLaw(N, [C.total.parse("x + 1")])
    Q = QuotientLaw(N, [C.total.parse("x")])
    assert Q.kernel().is_zero() and Q.algebra.dim == 1


def test_basechange_modes():
    F = frobenius_law(FinAlgebra.ground(GF(2)))
    A1 = FinAlgebra.from_presentation(["t"], ["t^2"], GF(2))
    rep = basechange_kernel_check(F, AlgebraMap.structure(A1), "separable")
    assert not rep["holds"] and rep["kernel_after"] == 1
    assert basechange_kernel_check(F, AlgebraMap.structure(A1), "radical")["holds"]
    with pytest.raises(ValueError):
        basechange_kernel_check(F, AlgebraMap.structure(A1), "bogus")
