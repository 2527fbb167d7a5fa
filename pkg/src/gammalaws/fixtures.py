"""Worked examples, random law generators and the embedded check suite.

The ``CATALOG`` is shared by ``gammalaws fixtures run`` and the test suite.
Each entry returns a ``FixtureResult`` with the computed values next to the
expected ones; nothing here is compared with tolerances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from . import linalg
from .divpow import (
    GammaElement,
    ProductDecomposition,
    gamma_algebra,
    gamma_module,
    gamma_of_quotient_via_presentation,
    gamma_spanning_check,
    base_change_gamma,
    presentation_matches_direct,
    rho,
    shuffle,
    tensor_pure,
)
from .exactfield import GF, QQ, FieldSpec, binomial_row_all_divisible, is_power_of
from .finalg import (
    AlgebraError,
    AlgebraMap,
    AlgElement,
    FinAlgebra,
    Ideal,
    RelativeAlgebra,
    diagonal_map,
    is_reduced,
    product_algebra,
    product_projections,
    relative_product,
)
from .laws import (
    MultiplicativeLaw,
    QuotientLaw,
    add_laws,
    base_change_law,
    basechange_kernel_check,
    ch_element,
    ch_inclusions_check,
    char_poly_of_law,
    filtration,
    filtration_is_stable,
    frobenius_law,
    hom_law,
    image,
    is_regular,
    kernel,
    kernel_bruteforce,
    kernel_char_poly,
    kernel_membership,
    law_from_generator_values,
    norm_kernel_over_poly_base,
    norm_law,
    points_law,
    push_forward,
    specialize_norm_table,
)
from .polyring import PolyRing
from .symtensor import flat_iso_check, nonflat_counterexample, phi, psi


# ---------------------------------------------------------------------------
# the two push-forward examples over A = F_3[e]/e^2
# ---------------------------------------------------------------------------


@dataclass
class PushForwardExampleI:
    A: FinAlgebra
    GB: RelativeAlgebra  # A[d]/d^2, free cover of B = A[d]/(d^2, e d)
    P: RelativeAlgebra  # GB x GB
    law: QuotientLaw  # pi_1 . pi_2 on B x B
    expected_kernel: Ideal
    pushed: QuotientLaw  # along the diagonal B -> B x B
    expected_pushed_kernel: Ideal
    diagonal: AlgebraMap  # B -> B x B


def example_push_forward_i(p: int = 3) -> PushForwardExampleI:
    k = GF(p)
    A = FinAlgebra.from_presentation(["e"], ["e^2"], k)
    GB = RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^2"], ["e"], ["1", "d"])
    P, p1, p2 = relative_product(GB, GB)
    pi1 = AlgebraMap.from_images(GB.total, A, ["e", "e"])
    pi2 = AlgebraMap.from_images(GB.total, A, ["e", "-e"])
    F = points_law(P, [pi1.compose(p1), pi2.compose(p2)])
    G = GB.total
    d, e, ed, z = G.parse("d"), G.parse("e"), G.parse("e*d"), G.zero()

    def pair(x, y):
        return P.total.element(list(x.coords) + list(y.coords))

    law = QuotientLaw(F, [pair(ed, z), pair(z, ed)])
    expected = Ideal.generated(law.algebra, [law.projection(pair(d - e, z)), law.projection(pair(z, d + e))])
    diag = diagonal_map(G, P.total)
    pushed = law.push_forward(diag, GB, [ed])
    expected_pushed = Ideal.generated(pushed.algebra, [pushed.projection(d)])
    return PushForwardExampleI(
        A, GB, P, law, expected, pushed, expected_pushed, law.descend(diag, GB, [ed])
    )


@dataclass
class PushForwardExampleII:
    A: FinAlgebra
    G: RelativeAlgebra  # A[d,t]/(d^2,t^2), free cover of C = G/(dt - e)
    law: QuotientLaw
    generator_values: list
    GB: RelativeAlgebra  # A[d]/d^2, free cover of B0 = k[e,d]/(e,d)^2
    pushed: QuotientLaw
    expected_pushed_kernel: Ideal
    map_to_C: AlgebraMap  # B0 -> C


def example_push_forward_ii(p: int = 3) -> PushForwardExampleII:
    k = GF(p)
    A = FinAlgebra.from_presentation(["e"], ["e^2"], k)
    G = RelativeAlgebra.from_presentation(
        A, ["e", "d", "t"], ["e^2", "d^2", "t^2"], ["e"], ["1", "d", "t", "d*t"]
    )
    T = G.total
    one, d, t = T.one(), T.parse("d"), T.parse("t")

    def g(x, n):
        return gamma_module(G, n).gamma_of_element(x)

    assignments = [
        (g(d, 2), A.zero()),
        (g(t, 2), A.zero()),
        (shuffle(g(d, 1), g(one, 1)), A.zero()),
        (shuffle(g(t, 1), g(one, 1)), A.zero()),
        (shuffle(g(d, 1), g(t, 1)), A.parse("-2*e")),
    ]
    rel = [T.parse("d*t - e")]
    cover = law_from_generator_values(G, 2, assignments, rel)
    law = QuotientLaw(cover, rel)
    GB = RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^2"], ["e"], ["1", "d"])
    u = AlgebraMap.from_images(GB.total, T, ["e", "d"])
    rel0 = [GB.total.parse("e*d")]
    pushed = law.push_forward(u, GB, rel0)
    expected = Ideal.generated(pushed.algebra, [pushed.projection(GB.total.parse("d"))])
    return PushForwardExampleII(A, G, law, assignments, GB, pushed, expected, law.descend(u, GB, rel0))


# ---------------------------------------------------------------------------
# small carriers and random laws
# ---------------------------------------------------------------------------


def field_carrier(B: FinAlgebra) -> RelativeAlgebra:
    return RelativeAlgebra.over_field(B)


def rational_points(B: FinAlgebra) -> list[AlgebraMap]:
    """All k-algebra maps B -> k (finite fields), found by enumeration."""
    k = B.field
    K = FinAlgebra.ground(k)
    out = []
    for v in itertools.product(k.elements(), repeat=B.dim):
        try:
            out.append(AlgebraMap(B, K, [list(v)]))
        except AlgebraError:
            continue
    return out


def random_monic(rng: random.Random, k: FieldSpec, n: int) -> str:
    coeffs = [k.random(rng) for _ in range(n)]
    terms = [f"x^{n}"] + [f"({c})*x^{i}" for i, c in enumerate(coeffs) if c != 0]
    return " + ".join(terms)


def random_algebra(rng: random.Random, k: FieldSpec, max_dim: int = 4) -> FinAlgebra:
    """A random commutative k-algebra of dimension between 1 and ``max_dim``."""
    kind = rng.choice(["mono", "mono", "mono", "prod", "local2"])
    if kind == "prod" and max_dim >= 2:
        n1 = rng.randint(1, max_dim - 1)
        n2 = rng.randint(1, max_dim - n1)
        return product_algebra(random_algebra(rng, k, n1), random_algebra(rng, k, n2))
    if kind == "local2" and max_dim >= 3:
        rels = rng.choice([["x^2", "x*y", "y^2"], ["x^2", "y^2"]] if max_dim >= 4 else [["x^2", "x*y", "y^2"]])
        return FinAlgebra.from_presentation(["x", "y"], rels, k)
    n = rng.randint(1, max_dim)
    return FinAlgebra.from_presentation(["x"], [random_monic(rng, k, n)], k)


def subalgebra_law(rng: random.Random, B: FinAlgebra) -> MultiplicativeLaw:
    """Push the norm of B forward along k[x]/(chi_b) -> B, x -> b."""
    from .finalg import berkowitz

    k = B.field
    b = B.random_element(rng)
    cp = berkowitz(B.mult_matrix(b), k.zero, k.one)
    poly = " + ".join(f"({c})*x^{i}" for i, c in enumerate(cp) if c != 0)
    B0 = FinAlgebra.from_presentation(["x"], [poly], k)
    u = AlgebraMap.from_images(B0, B, [b])
    return push_forward(norm_law(field_carrier(B)), u, field_carrier(B0))


def random_law(rng: random.Random, k: FieldSpec, max_dim: int = 4, max_degree: int = 3) -> MultiplicativeLaw:
    """A random multiplicative law over ``k`` with dim B <= max_dim and degree <= max_degree."""
    for _ in range(200):
        kind = rng.choice(["norm", "points", "sub", "add", "frob"])
        try:
            if kind == "norm":
                B = random_algebra(rng, k, min(max_dim, max_degree))
                return norm_law(field_carrier(B))
            if kind == "points":
                B = random_algebra(rng, k, max_dim)
                pts = rational_points(B)
                if not pts:
                    continue
                d = rng.randint(1, max_degree)
                return points_law(field_carrier(B), [rng.choice(pts) for _ in range(d)])
            if kind == "sub":
                B = random_algebra(rng, k, min(max_dim, max_degree))
                return subalgebra_law(rng, B)
            if kind == "add":
                B = random_algebra(rng, k, max_dim)
                C = field_carrier(B)
                pts = rational_points(B)
                if not pts or max_degree < 2:
                    continue
                d = rng.randint(1, max_degree - 1)
                first = points_law(C, [rng.choice(pts) for _ in range(d)])
                second = hom_law(C, rng.choice(pts))
                return add_laws(first, second)
            if kind == "frob":
                p = k.char
                s = 1 if p <= max_degree else 0
                A = random_algebra(rng, k, max_dim)
                if s == 0 and rng.random() < 0.5:
                    continue
                return base_change_law(frobenius_law(FinAlgebra.ground(k), s), AlgebraMap.structure(A))
        except AlgebraError:
            continue
    raise RuntimeError("could not generate a random law")


def random_element_pair(rng, law) -> AlgElement:
    return law.total.random_element(rng)


# ---------------------------------------------------------------------------
# fixture results and the catalog
# ---------------------------------------------------------------------------


@dataclass
class FixtureResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}"


@dataclass
class FixtureSpec:
    name: str
    description: str
    run: Callable[[int], FixtureResult]


def _ideal_doc(I: Ideal) -> list[str]:
    return [str(b) for b in I.basis()]


def fx_push_forward_i(seed: int = 0) -> FixtureResult:
    ex = example_push_forward_i()
    K = ex.law.kernel()
    K0 = ex.pushed.kernel()
    img = ex.law.image()
    regular = _regular_quotient(ex.law, ex.diagonal)
    ok = K == ex.expected_kernel and K0 == ex.expected_pushed_kernel and img.algebra.dim == 4 and not regular
    return FixtureResult(
        "push-forward-i",
        ok,
        {
            "kernel": _ideal_doc(K),
            "pushed_kernel": _ideal_doc(K0),
            "image_dim": img.algebra.dim,
            "diagonal_regular": regular,
        },
    )


def _regular_quotient(law: QuotientLaw, u: AlgebraMap) -> bool:
    img = law.image()
    return img.projection.compose(u).is_surjective()


def fx_push_forward_ii(seed: int = 0) -> FixtureResult:
    ex = example_push_forward_ii()
    vals = {nu: str(v) for nu, v in ex.law.cover.values.items()}
    K = ex.law.kernel()
    K0 = ex.pushed.kernel()
    regular = _regular_quotient(ex.law, ex.map_to_C)
    ok = K.is_zero() and K0 == ex.expected_pushed_kernel and not regular and ex.law.algebra.dim == 4
    return FixtureResult(
        "push-forward-ii",
        ok,
        {"table": {str(list(k)): v for k, v in vals.items()}, "kernel_dim": K.dim, "pushed_kernel": _ideal_doc(K0), "regular": regular},
    )


def frobenius_example():
    k = GF(2)
    K = FinAlgebra.ground(k)
    F = frobenius_law(K)
    A1 = FinAlgebra.from_presentation(["t"], ["t^2"], k)
    A2 = FinAlgebra.from_presentation(["t"], ["t^2 + t + 1"], k)
    return F, A1, A2


def fx_kernel_base_change_frobenius(seed: int = 0) -> FixtureResult:
    F, A1, A2 = frobenius_example()
    F1 = base_change_law(F, AlgebraMap.structure(A1))
    F2 = base_change_law(F, AlgebraMap.structure(A2))
    t = F1.carrier.embed(A1.parse("t"))
    K, K1, K2 = kernel(F), kernel(F1), kernel(F2)
    ok = (
        K.is_zero()
        and K1 == Ideal.generated(F1.total, [t])
        and K2.is_zero()
        and K1 == kernel_bruteforce(F1)
        and K2 == kernel_bruteforce(F2)
        and basechange_kernel_check(F, AlgebraMap.structure(A2), "separable")["holds"]
        and basechange_kernel_check(F, AlgebraMap.structure(A1), "radical")["holds"]
        and basechange_kernel_check(F, AlgebraMap.structure(A1), "flat-I1")["holds"]
    )
    return FixtureResult(
        "kernel-base-change-frobenius",
        ok,
        {"kernel": _ideal_doc(K), "kernel_nilpotent_base": _ideal_doc(K1), "kernel_separable_base": _ideal_doc(K2)},
    )


def fx_kernel_base_change_norm(seed: int = 0) -> FixtureResult:
    R = PolyRing(QQ, ("x",))
    c = R.parse("x^2")
    generic_zero = norm_kernel_over_poly_base(c)
    carrier, special = specialize_norm_table(c, 0)
    K = kernel(special)
    y = carrier.total.parse("y")
    ok = generic_zero and K == Ideal.generated(carrier.total, [y]) and special.same_table(norm_law(carrier))
    return FixtureResult("kernel-base-change-norm", ok, {"generic_kernel_zero": generic_zero, "special_kernel": _ideal_doc(K)})


def fx_nonflat(seed: int = 0) -> FixtureResult:
    rep = nonflat_counterexample()
    ok = rep["gamma_dim"] == 2 and rep["ts_dim"] == 1 and not rep["phi_injective"]
    return FixtureResult("gamma-ts-nonflat", ok, rep)


def spanning_carriers():
    k = GF(2)
    return [
        field_carrier(product_algebra(FinAlgebra.ground(k), FinAlgebra.ground(k))),
        field_carrier(FinAlgebra.from_presentation(["x"], ["x^2"], k)),
        field_carrier(FinAlgebra.from_presentation(["x"], ["x^2 + x + 1"], k)),
    ]


def fx_spanning(seed: int = 0) -> FixtureResult:
    # rank-2 carriers over F_2: spanning holds for d <= 2 = |F_2|, fails at d = 3
    res = {}
    ok = True
    for C in spanning_carriers():
        # the residue field of the base F_2 has two elements, whatever B is
        s2 = gamma_spanning_check(C, 2)
        s3 = gamma_spanning_check(C, 3)
        res[" ".join(C.total.labels)] = [s2, s3]
        ok &= s2 and not s3
    return FixtureResult("gamma-spanning", ok, res)


def fixture_laws() -> list[tuple[str, MultiplicativeLaw]]:
    """Fixture laws over a prime field (A = k)."""
    k3, k2 = GF(3), GF(2)
    out = []
    F, A1, A2 = frobenius_example()
    out.append(("frobenius-f2", F))
    B = FinAlgebra.from_presentation(["y"], ["y^2 - 1"], k3)
    out.append(("norm-split-f3", norm_law(field_carrier(B))))
    B = FinAlgebra.from_presentation(["u"], ["u^2 + u + 1"], k2)
    out.append(("norm-f4-over-f2", norm_law(field_carrier(B))))
    P = product_algebra(FinAlgebra.ground(k3), FinAlgebra.ground(k3))
    C = field_carrier(P)
    pr1, pr2 = product_projections(FinAlgebra.ground(k3), FinAlgebra.ground(k3), P)
    out.append(("points-distinct-f3", points_law(C, [pr1, pr2])))
    out.append(("points-doubled-f3", points_law(C, [pr1, pr1])))
    out.append(("norm-product-f3", norm_law(C)))
    B = FinAlgebra.from_presentation(["x"], ["x^3"], k3)
    out.append(("norm-fat-point-f3", norm_law(field_carrier(B))))
    _, special = specialize_norm_table(PolyRing(QQ, ("x",)).parse("x^2"), 0)
    out.append(("norm-dual-numbers-q", special))
    B = FinAlgebra.from_presentation(["y"], ["y^2 - 5"], QQ)
    out.append(("norm-quadratic-q", norm_law(field_carrier(B))))
    return out


def fx_ch_inclusions(seed: int = 0) -> FixtureResult:
    rng = random.Random(seed)
    checked = []
    laws = [law for _, law in fixture_laws()]
    F, A1, A2 = frobenius_example()
    laws.append(base_change_law(F, AlgebraMap.structure(A1)))
    ex1, ex2 = example_push_forward_i(), example_push_forward_ii()
    laws += [ex1.law.cover, ex1.pushed.cover, ex2.law.cover, ex2.pushed.cover]
    for law in laws:
        ch_inclusions_check(law, samples=3, rng=rng)
        checked.append(law.degree)
    pairs = 0
    while pairs < 50:
        law = random_law(rng, rng.choice([GF(2), GF(3)]), 4, 3)
        b = law.total.random_element(rng)
        if not kernel_membership(law, ch_element(law, b)):
            return FixtureResult("cayley-hamilton", False, {"witness": str(b)})
        for kb in kernel(law).basis():
            if char_poly_of_law(law, kb) != kernel_char_poly(law):
                return FixtureResult("cayley-hamilton", False, {"witness": str(kb)})
        pairs += 1
    return FixtureResult("cayley-hamilton", True, {"fixture_laws": len(checked), "random_pairs": pairs, "seed": seed})


def fx_oracle(seed: int = 0, count: int = 24) -> FixtureResult:
    rng = random.Random(seed)
    mismatches = []
    for i in range(count):
        k = GF(2) if i % 2 == 0 else GF(3)
        law = random_law(rng, k, 4, 3)
        if kernel(law) != kernel_bruteforce(law):
            mismatches.append(i)
    return FixtureResult("kernel-oracle", not mismatches, {"laws": count, "mismatches": mismatches, "seed": seed})


def fx_filtration_stability(seed: int = 0, count: int = 20) -> FixtureResult:
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        k = GF(2) if i % 2 == 0 else GF(3)
        law = random_law(rng, k, 4, 4)
        if not filtration_is_stable(law):
            bad.append(i)
    for _ in range(4):
        B = random_algebra(rng, QQ, 3)
        law = norm_law(field_carrier(B))
        chain = filtration(law)
        if chain[-1] != chain[1]:
            bad.append("Q")
    return FixtureResult("filtration-stability", not bad, {"laws": count, "failures": bad, "seed": seed})


def fixture_carriers_q() -> list[RelativeAlgebra]:
    return [
        field_carrier(FinAlgebra.from_presentation(["x"], ["x^2"], QQ)),
        field_carrier(FinAlgebra.from_presentation(["y"], ["y^2 - 5"], QQ)),
        field_carrier(FinAlgebra.from_presentation(["x", "y"], ["x^2", "x*y", "y^2"], QQ)),
        field_carrier(product_algebra(FinAlgebra.ground(QQ), FinAlgebra.ground(QQ))),
    ]


def psi_phi_matrix(M) -> list[list]:
    cols = [M.flatten(psi(phi(g))) for g in M.k_basis()]
    return linalg.transpose(cols)


def fx_psi_phi(seed: int = 0) -> FixtureResult:
    ok = True
    for C in fixture_carriers_q():
        for d in (2, 3):
            M = gamma_module(C, d)
            f = C.field
            expect = [[f(factorial(d)) if i == j else f.zero for j in range(M.kdim)] for i in range(M.kdim)]
            ok &= psi_phi_matrix(M) == expect
            ok &= flat_iso_check(C, d)["iso"]
    for C in spanning_carriers():
        M = gamma_module(C, 2)
        ok &= all(all(c == 0 for c in row) for row in psi_phi_matrix(M))
    return FixtureResult("psi-phi-factorial", ok, {})


def presentation_cases():
    """(cover G, relations, quotient B, surjection G -> B) with B free over A."""
    cases = []
    for k in (QQ, GF(2), GF(3)):
        K = FinAlgebra.ground(k)
        G = RelativeAlgebra.from_presentation(K, ["x"], ["x^3"], [], ["1", "x", "x^2"])
        B = RelativeAlgebra.from_presentation(K, ["x"], ["x^2"], [], ["1", "x"])
        pi = AlgebraMap.from_images(G.total, B.total, ["x"])
        cases.append((G, [G.total.parse("x^2")], B, pi))
        G = RelativeAlgebra.from_presentation(K, ["x", "y"], ["x^2", "y^2"], [], ["1", "x", "y", "x*y"])
        B = RelativeAlgebra.from_presentation(K, ["x", "y"], ["x^2", "y^2", "x*y"], [], ["1", "x", "y"])
        pi = AlgebraMap.from_images(G.total, B.total, ["x", "y"])
        cases.append((G, [G.total.parse("x*y")], B, pi))
    k = GF(3)
    A = FinAlgebra.from_presentation(["e"], ["e^2"], k)
    G = RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^4"], ["e"], ["1", "d", "d^2", "d^3"])
    B = RelativeAlgebra.from_presentation(A, ["e", "d"], ["e^2", "d^2 - e"], ["e"], ["1", "d"])
    pi = AlgebraMap.from_images(G.total, B.total, ["e", "d"])
    cases.append((G, [G.total.parse("d^2 - e")], B, pi))
    return cases


def fx_presentation(seed: int = 0) -> FixtureResult:
    results = []
    for G, rels, B, pi in presentation_cases():
        for d in (1, 2, 3):
            results.append(presentation_matches_direct(G, rels, pi, B, d))
    return FixtureResult("presentation-route", all(results), {"cases": len(results)})


def fx_add_points(seed: int = 0) -> FixtureResult:
    rng = random.Random(seed)
    k = GF(3)
    checked = 0
    ok = True
    carriers = [
        field_carrier(FinAlgebra.from_presentation(["x"], ["x^3 - x"], k)),
        field_carrier(FinAlgebra.from_presentation(["x"], ["x^2 - x"], k)),
        field_carrier(product_algebra(FinAlgebra.ground(k), FinAlgebra.from_presentation(["x"], ["x^2"], k))),
        field_carrier(FinAlgebra.from_presentation(["x", "y"], ["x^2", "x*y", "y^2"], k)),
    ]
    for C in carriers:
        pts = rational_points(C.total)
        for d in (1, 2, 3):
            for _ in range(3):
                homs = [rng.choice(pts) for _ in range(d)]
                acc = hom_law(C, homs[0])
                for h in homs[1:]:
                    acc = add_laws(acc, hom_law(C, h))
                ok &= acc.same_table(points_law(C, homs))
                checked += 1
    return FixtureResult("add-vs-points", ok, {"checked": checked, "seed": seed})


def fx_support_bounds(seed: int = 0) -> FixtureResult:
    out = {}
    ok = True
    for name, law in fixture_laws():
        img = image(law)
        red = is_reduced(img.algebra)
        out[name] = {"image_dim": img.algebra.dim, "reduced": red, "degree": law.degree}
        ok &= img.algebra.dim <= law.degree and red
        if img.restricted is not None:
            ok &= kernel(img.restricted).is_zero()
    return FixtureResult("support-bounds", ok, out)


def fx_batteries(seed: int = 0) -> FixtureResult:
    from .batteries import run_batteries

    rep = run_batteries(seed)
    return FixtureResult("invariant-batteries", rep["ok"], rep)


CATALOG: list[FixtureSpec] = [
    FixtureSpec("push-forward-i", "B x B over F_3[e]/e^2: kernel ((d-e),(d+e)); diagonal push-forward has kernel (d)", fx_push_forward_i),
    FixtureSpec("push-forward-ii", "law with d x t -> -2e: kernel 0; push-forward to k[e,d]/(e,d)^2 has kernel (d)", fx_push_forward_ii),
    FixtureSpec("kernel-base-change-frobenius", "Frobenius over F_2: kernel 0, (t) over F_2[t]/t^2, 0 over F_2[t]/(t^2+t+1)", fx_kernel_base_change_frobenius),
    FixtureSpec("kernel-base-change-norm", "norm of Q[x,y]/(y^2-x^2) over Q[x]: kernel 0; after x -> 0 kernel (y)", fx_kernel_base_change_norm),
    FixtureSpec("gamma-ts-nonflat", "Gamma^2 and TS^2 of F_2 over F_2[e]/e^2 have dimensions 2 and 1", fx_nonflat),
    FixtureSpec("gamma-spanning", "gamma^d(b) spans Gamma^d iff residue fields have >= d elements", fx_spanning),
    FixtureSpec("kernel-oracle", "filtration kernel equals the enumerated elementwise kernel", fx_oracle),
    FixtureSpec("cayley-hamilton", "chi_b(b) lies in ker F; kernel elements have chi = (-1)^d t^d", fx_ch_inclusions),
    FixtureSpec("filtration-stability", "I^(k) = I^(k-1) unless k is a power of p; over Q ker = I^(1)", fx_filtration_stability),
    FixtureSpec("psi-phi-factorial", "psi . phi = d! on Gamma^d", fx_psi_phi),
    FixtureSpec("presentation-route", "Gamma^d(G)/I agrees with Gamma^d(G/R) computed directly", fx_presentation),
    FixtureSpec("add-vs-points", "sums of degree-1 laws equal points laws", fx_add_points),
    FixtureSpec("support-bounds", "dim B/ker <= d and B/ker reduced over a prime field", fx_support_bounds),
    FixtureSpec("invariant-batteries", "associativity, coassociativity, base change, binomial lemma", fx_batteries),
]


def fixture_names() -> list[str]:
    return [f.name for f in CATALOG]


def run_fixture(name: str, seed: int = 0) -> FixtureResult:
    for f in CATALOG:
        if f.name == name:
            try:
                return f.run(seed)
            except Exception as exc:  # a crash is a failure, reported with its message
                return FixtureResult(name, False, {"error": f"{type(exc).__name__}: {exc}"})
    raise KeyError(name)
