"""Randomised invariant batteries for the divided-power and law machinery.

Every battery takes a seed and reports it, so a failure can be replayed.
"""

from __future__ import annotations

import random

from .divpow import (
    GammaElement,
    base_change_gamma,
    gamma_algebra,
    gamma_module,
    rho,
    shuffle,
    tensor_pure,
)
from .exactfield import GF, QQ, binomial_row_all_divisible, is_power_of
from .finalg import AlgebraMap, FinAlgebra, RelativeAlgebra
from .laws import add_laws, base_change_law, evaluate


def random_gamma_element(rng: random.Random, M) -> GammaElement:
    A = M.base
    return GammaElement(M, {nu: A.random_element(rng) for nu in M.basis if rng.random() < 0.6})


def _carriers(rng):
    from .fixtures import field_carrier, random_algebra

    out = []
    for k in (QQ, GF(2), GF(3)):
        out.append(field_carrier(random_algebra(rng, k, 3)))
    A = FinAlgebra.from_presentation(["e"], ["e^2"], GF(3))
    out.append(RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^2 - e*d"], ["e"], ["1", "d"]))
    return out


def shuffle_associative(rng, C, trials=5) -> bool:
    for _ in range(trials):
        a, b, c = (random_gamma_element(rng, gamma_module(C, rng.randint(0, 2))) for _ in range(3))
        if shuffle(shuffle(a, b), c) != shuffle(a, shuffle(b, c)):
            return False
        if shuffle(a, b) != shuffle(b, a):
            return False
    return True


def internal_associative(rng, C, d, trials=5) -> bool:
    G = gamma_algebra(C, d)
    for _ in range(trials):
        a, b, c = (random_gamma_element(rng, G) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * b != b * a:
            return False
        if G.unit() * a != a:
            return False
    return True


def rho_coassociative(C, a, b, c) -> bool:
    M = gamma_module(C, a + b + c)
    for nu in M.basis:
        left, right = {}, {}
        for (n12, n3), x in rho(a + b, c, M.basis_element(nu)).coeffs.items():
            for (n1, n2), y in rho(a, b, gamma_module(C, a + b).basis_element(n12)).coeffs.items():
                key = (n1, n2, n3)
                left[key] = left[key] + x * y if key in left else x * y
        for (n1, n23), x in rho(a, b + c, M.basis_element(nu)).coeffs.items():
            for (n2, n3), y in rho(b, c, gamma_module(C, b + c).basis_element(n23)).coeffs.items():
                key = (n1, n2, n3)
                right[key] = right[key] + x * y if key in right else x * y
        left = {k: v for k, v in left.items() if not v.is_zero()}
        right = {k: v for k, v in right.items() if not v.is_zero()}
        if left != right:
            return False
    return True


def rho_multiplicative(rng, C, d, e, trials=4) -> bool:
    G = gamma_algebra(C, d + e)
    for _ in range(trials):
        u, v = random_gamma_element(rng, G), random_gamma_element(rng, G)
        if rho(d, e, u * v) != rho(d, e, u) * rho(d, e, v):
            return False
    return True


def rho_of_gamma(C, d, e, b) -> bool:
    """rho(gamma^{d+e}(b)) = gamma^d(b) (x) gamma^e(b)."""
    g = gamma_module(C, d + e).gamma_of_element(b)
    return rho(d, e, g) == tensor_pure(gamma_module(C, d).gamma_of_element(b), gamma_module(C, e).gamma_of_element(b))


def base_change_naturality(rng) -> bool:
    from .fixtures import field_carrier, random_algebra, random_law

    k = GF(3)
    C = field_carrier(FinAlgebra.from_presentation(["x"], ["x^2 - x"], k))
    Ap = FinAlgebra.from_presentation(["t"], ["t^2"], k)
    App = FinAlgebra.from_presentation(["t", "s"], ["t^2", "t*s", "s^2"], k)
    u = AlgebraMap.structure(Ap)
    v = AlgebraMap.from_images(Ap, App, ["t + s"])
    G = gamma_algebra(C, 2)
    _, consts_ok = base_change_gamma(G, u)
    if not consts_ok:
        return False
    for _ in range(4):
        law = random_law(rng, k, 3, 3)
        if law.base.dim != 1:
            continue
        coords = [Ap.random_element(rng) for _ in range(law.carrier.rank)]
        lhs = v(evaluate(law, coords, u))
        rhs = evaluate(law, [v(c) for c in coords], v.compose(u))
        if lhs != rhs:
            return False
        # multiplicativity after base change
        other = [Ap.random_element(rng) for _ in range(law.carrier.rank)]
        Cp = law.carrier.base_change(u)
        b1, b2 = Cp.from_coords(coords), Cp.from_coords(other)
        if evaluate(law, b1 * b2, u) != evaluate(law, b1, u) * evaluate(law, b2, u):
            return False
        # the product law evaluates to the product
        g = add_laws(law, law)
        if evaluate(g, coords, u) != evaluate(law, coords, u) ** 2:
            return False
    return True


def binomial_lemma(n_max: int = 64) -> bool:
    for p in (2, 3, 5, 7):
        for n in range(1, n_max + 1):
            if binomial_row_all_divisible(n, p) != is_power_of(n, p):
                return False
    return True


def run_batteries(seed: int = 0) -> dict:
    rng = random.Random(seed)
    carriers = _carriers(rng)
    rep = {"seed": seed}
    rep["shuffle_assoc"] = all(shuffle_associative(rng, C) for C in carriers)
    rep["internal_assoc"] = all(internal_associative(rng, C, d) for C in carriers for d in (1, 2))
    rep["rho_coassoc"] = all(rho_coassociative(C, 1, 1, 1) and rho_coassociative(C, 2, 0, 1) for C in carriers)
    rep["rho_mult"] = all(rho_multiplicative(rng, C, 1, 1) for C in carriers)
    rep["rho_gamma"] = all(rho_of_gamma(C, 1, 2, C.total.random_element(rng)) for C in carriers)
    rep["base_change"] = base_change_naturality(rng)
    rep["binomial_lemma"] = binomial_lemma(64)
    rep["ok"] = all(v for k, v in rep.items() if k != "seed")
    return rep
