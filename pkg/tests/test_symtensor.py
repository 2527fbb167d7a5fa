import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalaws.batteries import random_gamma_element
from gammalaws.divpow import gamma_module, shuffle
from gammalaws.exactfield import GF, QQ
from gammalaws.finalg import FinAlgebra
from gammalaws.fixtures import field_carrier, fixture_carriers_q, psi_phi_matrix, random_algebra, spanning_carriers
from gammalaws.symtensor import (
    TensorElement,
    content,
    flat_iso_check,
    invariant_subspace,
    nonflat_counterexample,
    orbit,
    orbit_size,
    phi,
    phi_psi_is_factorial,
    psi,
    psi_phi_is_factorial,
    pure_tensor,
    ts_shuffle,
    words,
)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_orbit_size_is_multinomial(nu):
    orb = orbit(nu)
    assert len(orb) == len(set(orb)) == orbit_size(nu)
    assert all(content(w, len(nu)) == tuple(nu) for w in orb)


def test_words_count():
    assert len(words(3, 2)) == 9


def test_phi_of_gamma_is_pure_power():
    C = field_carrier(FinAlgebra.from_presentation(["x"], ["x^3"], GF(3)))
    b = C.total.parse("1 + x")
    for d in (1, 2, 3):
        assert phi(gamma_module(C, d).gamma_of_element(b)) == pure_tensor(C, [b] * d)


@pytest.mark.parametrize("C", fixture_carriers_q(), ids=lambda C: " ".join(C.total.labels))
@pytest.mark.parametrize("d", [2, 3])
def test_round_trips_over_q(C, d):
    assert psi_phi_is_factorial(gamma_module(C, d))
    assert phi_psi_is_factorial(C, d)
    rep = flat_iso_check(C, d)
    assert rep["iso"] and rep["gamma_dim"] == rep["ts_dim"]


def test_psi_phi_matrix_is_d_factorial():
    C = fixture_carriers_q()[2]
    M = gamma_module(C, 3)
    P = psi_phi_matrix(M)
    for i, row in enumerate(P):
        for j, c in enumerate(row):
            assert c == (factorial(3) if i == j else 0)


@pytest.mark.parametrize("C", spanning_carriers(), ids=lambda C: " ".join(C.total.labels))
def test_psi_phi_vanishes_in_char_2(C):
    P = psi_phi_matrix(gamma_module(C, 2))
    assert all(c == 0 for row in P for c in row)
    # phi is still injective for free carriers (TS is computed independently)
    assert flat_iso_check(C, 2)["iso"]


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2))
def test_phi_turns_shuffle_into_ts_shuffle(seed, d, e):
    rng = random.Random(seed)
    C = field_carrier(random_algebra(rng, GF(3), 3))
    u = random_gamma_element(rng, gamma_module(C, d))
    v = random_gamma_element(rng, gamma_module(C, e))
    assert phi(shuffle(u, v)) == ts_shuffle(phi(u), phi(v))


def test_invariants_dimension_matches_orbits():
    C = field_carrier(FinAlgebra.from_presentation(["x", "y"], ["x^2", "x*y", "y^2"], GF(2)))
    TS, W = invariant_subspace(C, 3)
    assert TS.dim == len({tuple(sorted(w)) for w in itertools.product(range(3), repeat=3)})


def test_symmetry_detection():
    C = field_carrier(FinAlgebra.from_presentation(["x"], ["x^2"], QQ))
    one = C.base.one()
    t = TensorElement(C, 2, {(0, 1): one})
    assert not t.is_symmetric()
    assert (t + t.permute([1, 0])).is_symmetric()


def test_nonflat_counterexample():
    rep = nonflat_counterexample()
    assert rep == {"gamma_dim": 2, "ts_dim": 1, "phi_rank": 1, "phi_injective": False}
