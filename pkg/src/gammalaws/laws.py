"""Homogeneous multiplicative polynomial laws F: B -> A of degree d.

A law is stored as its value table ``f(gamma^nu)`` on the gamma basis of
Gamma^d_A(B); ``f`` is the A-algebra map Gamma^d_A(B) -> A it induces.

Non-free carriers (quotients ``G/J`` of a free carrier ``G``) are handled by
``QuotientLaw``: a law on ``G`` that vanishes on ``J``.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from . import linalg
from .divpow import (
    GammaAlgebra,
    GammaElement,
    GammaMap,
    gamma_algebra,
    gamma_basis,
    gamma_module,
    gamma_of_quotient_via_presentation,
    rho,
    shuffle,
)
from .exactfield import FieldSpec, binomial, is_power_of
from .finalg import (
    AlgebraError,
    AlgebraMap,
    AlgElement,
    FinAlgebra,
    Ideal,
    RelativeAlgebra,
    berkowitz,
    is_reduced,
    is_relative_map,
    nilradical,
    quotient_by_subspace,
    reduction,
)
from .linalg import Subspace
from .polyring import MultiPoly, PolyRing


class LawError(ValueError):
    pass


class NotMultiplicative(LawError):
    def __init__(self, pair, msg=None):
        self.pair = pair
        super().__init__(msg or f"f(u*v) != f(u) f(v) for basis pair {pair}")


class UnitViolation(LawError):
    pass


class UnsupportedBase(LawError):
    pass


class CayleyHamiltonViolation(AssertionError):
    def __init__(self, witness, msg):
        self.witness = witness
        super().__init__(msg)


# ---------------------------------------------------------------------------
# the law object
# ---------------------------------------------------------------------------


class MultiplicativeLaw:
    """A validated degree-``d`` multiplicative law on a free carrier."""

    def __init__(self, carrier: RelativeAlgebra, d: int, values: dict, *, check: bool = True):
        self.carrier = carrier
        self.degree = d
        self.base = carrier.base
        basis = gamma_basis(carrier.rank, d)
        missing = [nu for nu in basis if nu not in values]
        if missing:
            raise LawError(f"value table misses indices {missing[:3]}")
        self.values = {nu: values[nu] for nu in basis}
        for a in self.values.values():
            self.base._own(a)
        if check:
            self.validate()

    # -- the linear map f ------------------------------------------------
    def f(self, u: GammaElement) -> AlgElement:
        out = self.base.zero()
        for nu, a in u.coeffs.items():
            out = out + a * self.values[nu]
        return out

    def __call__(self, b: AlgElement) -> AlgElement:
        return self.f(gamma_module(self.carrier, self.degree).gamma_of_element(b))

    @property
    def total(self) -> FinAlgebra:
        return self.carrier.total

    def table(self) -> list[tuple[tuple, AlgElement]]:
        return list(self.values.items())

    def validate(self):
        gam = self._gamma_algebra()
        if self.f(gam.unit()) != self.base.one():
            raise UnitViolation(f"f(gamma^d(1)) = {self.f(gam.unit())}, expected 1")
        basis = gam.basis
        for i, mu in enumerate(basis):
            for nu in basis[i:]:
                lhs = self.f(gam.basis_product(mu, nu))
                rhs = self.values[mu] * self.values[nu]
                if lhs != rhs:
                    raise NotMultiplicative((mu, nu))

    def _gamma_algebra(self) -> GammaAlgebra:
        return gamma_algebra(self.carrier, self.degree)

    def same_table(self, other: "MultiplicativeLaw") -> bool:
        return (
            self.degree == other.degree
            and self.values.keys() == other.values.keys()
            and all(self.values[k] == other.values[k] for k in self.values)
        )

    def __repr__(self):
        return f"MultiplicativeLaw(degree={self.degree}, carrier={self.carrier!r})"


def law_from_values(carrier: RelativeAlgebra, d: int, values, *, check: bool = True) -> MultiplicativeLaw:
    """Build a law from a dict ``nu -> A`` or a list in gamma-basis order."""
    A = carrier.base
    if not isinstance(values, dict):
        values = dict(zip(gamma_basis(carrier.rank, d), values))
    conv = {}
    for nu, a in values.items():
        if not isinstance(a, AlgElement):
            a = A.parse(a) if isinstance(a, str) else A.scalar(a)
        conv[tuple(nu)] = a
    return MultiplicativeLaw(carrier, d, conv, check=check)


def unit_law(carrier: RelativeAlgebra) -> MultiplicativeLaw:
    """The degree-0 law, constantly 1."""
    return MultiplicativeLaw(carrier, 0, {(0,) * carrier.rank: carrier.base.one()})


def hom_law(carrier: RelativeAlgebra, phi: AlgebraMap) -> MultiplicativeLaw:
    """The degree-1 law of an A-algebra map ``B -> A``."""
    if not is_relative_map(phi, carrier, _base_as_relative(carrier.base)):
        raise LawError("not an A-algebra homomorphism B -> A")
    vals = {}
    for a, x in enumerate(carrier.rel_basis):
        nu = tuple(int(i == a) for i in range(carrier.rank))
        vals[nu] = phi(x)
    return MultiplicativeLaw(carrier, 1, vals)


def _base_as_relative(A: FinAlgebra) -> RelativeAlgebra:
    cache = A.__dict__.setdefault("_self_relative", [])
    if not cache:
        cache.append(RelativeAlgebra(A, A, AlgebraMap.identity(A), [A.one()], ["1"]))
    return cache[0]


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate(law: MultiplicativeLaw, b, u: AlgebraMap | None = None) -> AlgElement:
    """F_{A'}(b') for ``b'`` in B (x)_A A'.

    ``b`` is an element of B when ``u`` is None; otherwise it is a list of
    A'-coordinates on the relative basis, or an element of the base-changed
    carrier's total algebra.
    """
    if u is None:
        return law(b)
    Ap = u.target
    if isinstance(b, AlgElement):
        coords = law.carrier.base_change(u).coords(b)
    else:
        coords = list(b)
    for c in coords:
        Ap._own(c)
    d = law.degree
    powers = []
    for c in coords:
        ps = [Ap.one()]
        for _ in range(d):
            ps.append(ps[-1] * c)
        powers.append(ps)
    out = Ap.zero()
    for nu, val in law.values.items():
        term = u(val)
        for alpha, e in enumerate(nu):
            if e:
                term = term * powers[alpha][e]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


class _APoly:
    """Polynomial in ``t_1..t_r`` with coefficients in a FinAlgebra."""

    __slots__ = ("A", "terms")

    def __init__(self, A: FinAlgebra, terms: dict):
        self.A = A
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return _APoly(self.A, out)

    def __neg__(self):
        return _APoly(self.A, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return _APoly(self.A, out)


def _generic_linear_forms(carrier: RelativeAlgebra, images: Sequence[Sequence[AlgElement]]) -> list[_APoly]:
    """``sum_alpha t_alpha c_alpha`` for each coefficient vector in ``images``."""
    r = carrier.rank
    out = []
    for coeffs in images:
        terms = {}
        for alpha, c in enumerate(coeffs):
            terms[tuple(int(i == alpha) for i in range(r))] = c
        out.append(_APoly(carrier.base, terms))
    return out


def _table_from_apoly(carrier: RelativeAlgebra, d: int, p: _APoly) -> dict:
    A = carrier.base
    return {nu: p.terms.get(nu, A.zero()) for nu in gamma_basis(carrier.rank, d)}


def norm_law(carrier: RelativeAlgebra) -> MultiplicativeLaw:
    """The norm B -> A: det of multiplication by the generic element ``sum t_alpha x_alpha``."""
    A = carrier.base
    r = carrier.rank
    Ms = [carrier.rel_mult_matrix(x) for x in carrier.rel_basis]
    zero = _APoly(A, {})
    one = _APoly(A, {(0,) * r: A.one()})
    M = []
    for i in range(r):
        row = []
        for j in range(r):
            row.append(_generic_linear_forms(carrier, [[Ms[a][i][j] for a in range(r)]])[0])
        M.append(row)
    cp = berkowitz(M, zero, one)
    det = cp[0] if r % 2 == 0 else -cp[0]
    return MultiplicativeLaw(carrier, r, _table_from_apoly(carrier, r, det))


def frobenius_law(A: FinAlgebra, s: int = 1) -> MultiplicativeLaw:
    """x -> x^{p^s} on B = A, a law of degree p^s."""
    p = A.field.char
    if p == 0:
        raise UnsupportedBase("the Frobenius law needs positive characteristic")
    if s < 0:
        raise LawError("s must be non-negative")
    carrier = _base_as_relative(A)
    return MultiplicativeLaw(carrier, p**s, {(p**s,): A.one()})


def points_law(carrier: RelativeAlgebra, homs: Sequence[AlgebraMap]) -> MultiplicativeLaw:
    """b -> prod_i phi_i(b), read off from the expansion of prod_i sum_alpha t_alpha phi_i(x_alpha)."""
    A = carrier.base
    target = _base_as_relative(A)
    for phi in homs:
        if not is_relative_map(phi, carrier, target):
            raise LawError("points_law needs A-algebra maps B -> A")
    r = carrier.rank
    acc = _APoly(A, {(0,) * r: A.one()})
    for phi in homs:
        acc = acc * _generic_linear_forms(carrier, [[phi(x) for x in carrier.rel_basis]])[0]
    return MultiplicativeLaw(carrier, len(homs), _table_from_apoly(carrier, len(homs), acc))


def add_laws(f: MultiplicativeLaw, g: MultiplicativeLaw, *, check: bool = True) -> MultiplicativeLaw:
    """The product law ``(f (x) g) o rho_{d,e}``."""
    if f.carrier is not g.carrier:
        raise LawError("add_laws needs laws on the same carrier")
    d, e = f.degree, g.degree
    M = gamma_module(f.carrier, d + e)
    vals = {}
    for nu in M.basis:
        t = rho(d, e, M.basis_element(nu))
        s = f.base.zero()
        for (n1, n2), a in t.coeffs.items():
            s = s + a * f.values[n1] * g.values[n2]
        vals[nu] = s
    return MultiplicativeLaw(f.carrier, d + e, vals, check=check)


def push_forward(law: MultiplicativeLaw, u: AlgebraMap, src: RelativeAlgebra) -> MultiplicativeLaw:
    """``f o Gamma^d(u)`` for an A-algebra map ``u: B0 -> B``."""
    gm = GammaMap(u, src, law.carrier, law.degree)
    vals = {nu: law.f(gm(nu)) for nu in gm.src.basis}
    return MultiplicativeLaw(src, law.degree, vals)


def base_change_law(law: MultiplicativeLaw, u: AlgebraMap) -> MultiplicativeLaw:
    new = law.carrier.base_change(u)
    return MultiplicativeLaw(new, law.degree, {nu: u(a) for nu, a in law.values.items()})


def law_from_generator_values(
    carrier: RelativeAlgebra,
    d: int,
    assignments: Sequence[tuple[GammaElement, AlgElement]],
    relations: Sequence[AlgElement] = (),
) -> MultiplicativeLaw:
    """Complete a law from its values on algebra generators of Gamma^d(G)/I.

    ``I`` is the presentation submodule of ``relations`` (the law must vanish
    there).  The span of the generators is closed under internal products with
    values multiplied; once it covers Gamma^d(G) every table entry is solved
    for.  The resulting table is then certified by the validator.
    """
    gam = gamma_algebra(carrier, d)
    A = carrier.base
    f = carrier.field
    n = gam.kdim
    items: list[tuple[GammaElement, AlgElement]] = []
    gens = [(gam.unit(), A.one())] + [(GammaElement(gam, g.coeffs), v) for g, v in assignments]
    for g, v in gens:
        for a in A.basis():
            items.append((g.scale(a), a * v))
    if relations:
        pres = gamma_of_quotient_via_presentation(carrier, relations, d, close_to_ideal=True)
        for vec in pres.submodule.basis:
            items.append((gam.unflatten(vec), A.zero()))

    span = Subspace(f, n)
    kept: list[tuple[GammaElement, AlgElement]] = []

    def absorb(pairs):
        nonlocal span
        grew = False
        for g, v in pairs:
            vec = gam.flatten(g)
            if not span.contains(vec):
                span = span + Subspace(f, n, [vec])
                kept.append((g, v))
                grew = True
        return grew

    absorb(items)
    frontier = list(kept)
    while span.dim < n and frontier:
        new_pairs = [(g1 * g2, v1 * v2) for g1, v1 in frontier for g2, v2 in kept]
        before = len(kept)
        absorb(new_pairs)
        frontier = kept[before:]
    if span.dim < n:
        raise LawError("the given values do not determine the law")
    # solve each basis vector in terms of the kept generators
    cols = [gam.flatten(g) for g, _ in kept]
    M = linalg.transpose(cols)
    vals = {}
    for nu in gam.basis:
        x = linalg.solve(f, M, gam.flatten(gam.basis_element(nu)), len(kept))
        s = A.zero()
        for c, (_, v) in zip(x, kept):
            if c != 0:
                s = s + v.scale(c)
        vals[nu] = s
    return MultiplicativeLaw(carrier, d, vals)


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------


def char_poly_of_law(law: MultiplicativeLaw, b: AlgElement) -> list[AlgElement]:
    """Coefficients (t^0 first) of chi_{F,b}(t) = sum_k (-1)^k f(gamma^{d-k}(b) x gamma^k(1)) t^k."""
    d = law.degree
    C = law.carrier
    one = C.total.one()
    out = []
    for k in range(d + 1):
        g = shuffle(gamma_module(C, d - k).gamma_of_element(b), gamma_module(C, k).gamma_of_element(one))
        v = law.f(g)
        out.append(-v if k % 2 else v)
    return out


def kernel_char_poly(law: MultiplicativeLaw) -> list[AlgElement]:
    """chi_{F,b} for b in ker(F): F(b - t) = F(-t) = (-t)^d."""
    A = law.base
    top = A.one() if law.degree % 2 == 0 else -A.one()
    return [A.zero()] * law.degree + [top]


def ch_element(law: MultiplicativeLaw, b: AlgElement) -> AlgElement:
    C = law.carrier
    out = C.total.zero()
    power = C.total.one()
    for c in char_poly_of_law(law, b):
        out = out + C.embed(c) * power
        power = power * b
    return out


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def _check_prime_field(law: MultiplicativeLaw):
    if not isinstance(law.base.field, FieldSpec):
        raise UnsupportedBase("kernel computations need Q or F_p as coefficient field")


def _pairing(law: MultiplicativeLaw, k: int) -> dict:
    """``P[nu][mu] = C(nu+mu, nu) f(gamma^{nu+mu})`` for |nu| = k, |mu| = d-k."""
    cache = law.__dict__.setdefault("_pairings", {})
    if k not in cache:
        d = law.degree
        r = law.carrier.rank
        f = law.base.field
        P = {}
        for nu in gamma_basis(r, k):
            row = {}
            for mu in gamma_basis(r, d - k):
                c = 1
                for a, b in zip(nu, mu):
                    c *= binomial(a, b)
                c = f(c)
                if c != 0:
                    key = tuple(a + b for a, b in zip(nu, mu))
                    row[mu] = law.values[key].scale(c)
            P[nu] = row
        cache[k] = P
    return cache[k]


def _test_vector(law: MultiplicativeLaw, b: AlgElement, k: int) -> tuple:
    """``(f(gamma^k(b) x y_mu))_mu`` flattened into k-coordinates."""
    g = gamma_module(law.carrier, k).gamma_of_element(b)
    P = _pairing(law, k)
    ys = gamma_basis(law.carrier.rank, law.degree - k)
    A = law.base
    acc = {mu: A.zero() for mu in ys}
    for nu, a in g.coeffs.items():
        for mu, v in P[nu].items():
            acc[mu] = acc[mu] + a * v
    out = []
    for mu in ys:
        out.extend(acc[mu].coords)
    return tuple(out)


def filtration(law: MultiplicativeLaw, k: int | None = None) -> list[Subspace]:
    """``[I^(0), I^(1), ..., I^(k)]`` as subspaces of B (default ``k = d``).

    I^(1) is the kernel of the A-linear map ``b -> (f(b x y))_y``.  On I^(j-1)
    the map ``b -> f(gamma^j(b) x y)`` is additive, hence linear over the
    prime field, so each step is a linear kernel inside the previous step.
    Every step is computed; the equalities at ``j != p^s`` are not assumed.
    """
    _check_prime_field(law)
    d = law.degree
    k = d if k is None else k
    B = law.total
    f = B.field
    cur = Subspace.full(f, B.dim)
    chain = [cur]
    for j in range(1, k + 1):
        if j > d or cur.is_zero():
            chain.append(cur)
            continue
        basis = [B.element(v) for v in cur.basis]
        cols = [_test_vector(law, b, j) for b in basis]
        M = linalg.transpose(cols)
        combos = linalg.nullspace(f, M, len(basis)) if M and M[0] else [linalg.unit_vec(f, len(basis), i) for i in range(len(basis))]
        cur = Subspace(f, B.dim, [linalg.lincomb(f, c, cur.basis, B.dim) for c in combos])
        chain.append(cur)
    return chain


def filtration_ideals(law: MultiplicativeLaw, k: int | None = None) -> list[Ideal]:
    return [Ideal(law.total, s, check=False) for s in filtration(law, k)]


def kernel(law: MultiplicativeLaw) -> Ideal:
    cache = law.__dict__
    if "_kernel" not in cache:
        space = filtration(law)[-1]
        cache["_kernel"] = Ideal(law.total, space, check=True)
    return cache["_kernel"]


def kernel_membership(law: MultiplicativeLaw, b: AlgElement) -> bool:
    """The elementwise criterion: f(gamma^k(b) x y) = 0 for 1 <= k <= d and all y."""
    law.total._own(b)
    return all(linalg.is_zero_vec(_test_vector(law, b, k)) for k in range(1, law.degree + 1))


def _in_l1_direct(law: MultiplicativeLaw, b: AlgElement) -> bool:
    # deliberately goes through shuffle and f rather than the cached pairing
    C = law.carrier
    for k in range(1, law.degree + 1):
        gk = gamma_module(C, k).gamma_of_element(b)
        for y in gamma_module(C, law.degree - k).basis_elements():
            if not law.f(shuffle(gk, y)).is_zero():
                return False
    return True


def kernel_bruteforce(law: MultiplicativeLaw, limit: int = 10**5) -> Ideal:
    """Enumerate B and collect the elements satisfying the elementwise criterion."""
    B = law.total
    if B.field.char == 0:
        raise UnsupportedBase("brute force needs a finite coefficient field")
    size = B.cardinality()
    if size > limit:
        raise LawError(f"refusing to enumerate {size} elements (limit {limit})")
    members = [b for b in B.elements() if _in_l1_direct(law, b)]
    space = Subspace(B.field, B.dim, [b.coords for b in members])
    if B.field.char ** space.dim != len(members):
        raise LawError("elementwise kernel is not a subspace")
    return Ideal(B, space, check=True)


def ch_inclusions_check(law: MultiplicativeLaw, samples: int = 10, rng: random.Random | None = None) -> dict:
    """Per-element check of I_CH(F) <= ker(F) <= rad I_CH(F)."""
    rng = rng or random.Random(0)
    B = law.total
    A = law.base
    d = law.degree
    K = kernel(law)
    tested = B.basis() + [B.random_element(rng) for _ in range(samples)] + [B.zero()]
    for b in tested:
        if not kernel_membership(law, ch_element(law, b)):
            raise CayleyHamiltonViolation(b, f"chi_b(b) not in ker(F) for b = {b}")
    t_d = kernel_char_poly(law)
    sign = law.base.field.pow(law.base.field(-1), d)
    for b in K.basis():
        cp = char_poly_of_law(law, b)
        if cp != t_d:
            raise CayleyHamiltonViolation(b, f"kernel element {b} has chi = {cp}, not (-t)^{d}")
        if ch_element(law, b) != (b**d).scale(sign):
            raise CayleyHamiltonViolation(b, f"chi_b(b) != (-b)^d for kernel element {b}")
    return {"sampled": len(tested), "kernel_basis_checked": K.dim, "ok": True}


# ---------------------------------------------------------------------------
# image, support, regularity
# ---------------------------------------------------------------------------


class ImageResult:
    def __init__(self, algebra: FinAlgebra, projection: AlgebraMap, kernel: Ideal, restricted):
        self.algebra = algebra
        self.projection = projection
        self.kernel = kernel
        self.restricted = restricted  # MultiplicativeLaw on a free carrier, or None

    def __iter__(self):
        return iter((self.algebra, self.projection, self.restricted))


def _free_basis_of_quotient(carrier: RelativeAlgebra, q: AlgebraMap, Q: FinAlgebra):
    """Search the images of the relative basis for a free A-basis of ``Q``."""
    A = carrier.base
    if A.dim == 0 or Q.dim % A.dim:
        return None
    r = Q.dim // A.dim
    s = q.compose(carrier.structure)
    imgs = [q(x) for x in carrier.rel_basis]
    for idx in itertools.combinations(range(carrier.rank), r):
        try:
            return idx, RelativeAlgebra(A, Q, s, [imgs[i] for i in idx], [carrier.names[i] for i in idx])
        except AlgebraError:
            continue
    return None


def restrict_to_quotient(law: MultiplicativeLaw, I: Ideal, lifts_idx: Sequence[int], target: RelativeAlgebra) -> MultiplicativeLaw:
    """Law on ``B/I`` whose table is ``f`` at ``gamma^nu`` of the chosen lifts."""
    C = law.carrier
    d = law.degree
    vals = {}
    gammas = [[gamma_module(C, n).gamma_of_element(C.rel_basis[i]) for n in range(d + 1)] for i in lifts_idx]
    for nu in gamma_basis(target.rank, d):
        g = gamma_module(C, 0).basis_element((0,) * C.rank)
        for a, e in enumerate(nu):
            if e:
                g = shuffle(g, gammas[a][e])
        vals[nu] = law.f(g)
    return MultiplicativeLaw(target, d, vals)


def image(law: MultiplicativeLaw) -> ImageResult:
    """B/ker(F) with its projection and the restricted law (when B/ker is free over A)."""
    K = kernel(law)
    res = K.quotient()
    found = _free_basis_of_quotient(law.carrier, res.projection, res.algebra)
    restricted = None
    if found is not None:
        idx, target = found
        restricted = restrict_to_quotient(law, K, idx, target)
    return ImageResult(res.algebra, res.projection, K, restricted)


def support(law) -> FinAlgebra:
    """(B/ker)_red."""
    Q = image(law).algebra
    return reduction(Q).algebra


def is_regular(law, u: AlgebraMap) -> bool:
    """Whether ``B0 -> B -> B/ker(F)`` is surjective."""
    img = image(law)
    comp = img.projection.compose(u)
    return comp.is_surjective()


def is_nondegenerate(law: MultiplicativeLaw) -> bool:
    if law.base.dim != 1:
        raise UnsupportedBase("non-degeneracy is defined here for laws over the coefficient field")
    Q = image(law).algebra
    return Q.dim == law.degree and is_reduced(Q)


# ---------------------------------------------------------------------------
# base change of kernels
# ---------------------------------------------------------------------------


def extend_ideal(carrier: RelativeAlgebra, I: Ideal, u: AlgebraMap, target: RelativeAlgebra) -> Ideal:
    """The ideal ``I B'`` generated by the images of ``I`` in ``B' = B (x)_A A'``."""
    return Ideal.generated(target.total, [carrier.base_change_element(b, u, target) for b in I.basis()])


def basechange_kernel_check(law: MultiplicativeLaw, u: AlgebraMap, mode: str = "radical") -> dict:
    """Compare kernels (or I^(1)) before and after the base change ``u: A -> A'``."""
    new = base_change_law(law, u)
    C, Cp = law.carrier, new.carrier
    if mode == "radical":
        ext = extend_ideal(C, kernel(law), u, Cp).radical()
        tgt = kernel(new).radical()
    elif mode == "separable":
        ext = extend_ideal(C, kernel(law), u, Cp)
        tgt = kernel(new)
    elif mode == "flat-I1":
        ext = extend_ideal(C, Ideal(law.total, filtration(law, 1)[1], check=False), u, Cp)
        tgt = Ideal(new.total, filtration(new, 1)[1], check=False)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return {
        "mode": mode,
        "holds": ext == tgt,
        "extended_dim": ext.dim,
        "target_dim": tgt.dim,
        "kernel_before": kernel(law).dim,
        "kernel_after": kernel(new).dim,
        "law": new,
    }


# ---------------------------------------------------------------------------
# the family y^2 = c over Q[x]
# ---------------------------------------------------------------------------


def norm_table_over_poly_base(c: MultiPoly) -> dict:
    """Norm table of Q[x][y]/(y^2 - c) in the basis (1, y), entries in Q[x]."""
    ring = c.ring
    if ring.field.char != 0 or len(ring.variables) != 1:
        raise UnsupportedBase("only B = Q[x][y]/(y^2 - c) with c in Q[x] is supported")
    x = ring.variables[0]
    big = PolyRing(ring.field, [x, "t0", "t1"], ring.order)
    cc = big.zero()
    for e, v in c.terms.items():
        cc = cc + big.monomial((e[0], 0, 0), v)
    t0, t1 = big.var("t0"), big.var("t1")
    # multiplication by t0 + t1 y on (1, y): 1 -> t0 + t1 y, y -> c t1 + t0 y
    M = [[t0, cc * t1], [t1, t0]]
    cp = berkowitz(M, big.zero(), big.one())
    det = cp[0]
    table = {}
    for nu in gamma_basis(2, 2):
        coeff = ring.zero()
        for e, v in det.terms.items():
            if (e[1], e[2]) == nu:
                coeff = coeff + ring.monomial((e[0],), v)
        table[nu] = coeff
    return table


def norm_kernel_over_poly_base(c: MultiPoly) -> bool:
    """ker(N) = 0 for B = Q[x][y]/(y^2 - c)?

    Over Q the kernel is I^(1), the radical of the polarised norm form; over
    the domain Q[x] that radical is zero iff the Gram determinant is nonzero.
    """
    table = norm_table_over_poly_base(c)
    ring = c.ring
    two = ring.const(2)
    gram = [[table[(2, 0)] * two, table[(1, 1)]], [table[(1, 1)], table[(0, 2)] * two]]
    det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]
    return not det.is_zero()


def specialize_norm_table(c: MultiPoly, x0) -> tuple[RelativeAlgebra, MultiplicativeLaw]:
    """Base change of the Q[x]-norm along ``x -> x0``: carrier Q[y]/(y^2 - c(x0)) over Q."""
    ring = c.ring
    field = ring.field
    x0 = field(x0)

    def at(p):
        return p.evaluate([x0], field.one, field.mul)

    B = FinAlgebra.from_presentation(["y"], [f"y^2 - ({at(c)})"], field)
    carrier = RelativeAlgebra(FinAlgebra.ground(field), B, AlgebraMap.structure(B), [B.one(), B.gen("y")], ["1", "y"])
    table = norm_table_over_poly_base(c)
    A = carrier.base
    vals = {nu: A.scalar(at(p)) for nu, p in table.items()}
    return carrier, MultiplicativeLaw(carrier, 2, vals)


# ---------------------------------------------------------------------------
# laws on quotients of free carriers
# ---------------------------------------------------------------------------


class QuotientLaw:
    """A law on ``B = G/J`` given by a law on the free carrier ``G`` vanishing on ``J``."""

    def __init__(self, cover: MultiplicativeLaw, relations: Iterable[AlgElement]):
        self.cover = cover
        G = cover.total
        self.J = Ideal.generated(G, list(relations))
        if not self.J <= kernel(cover):
            raise LawError("the law does not vanish on the relations")
        res = self.J.quotient()
        self.algebra = res.algebra
        self.projection = res.projection
        self.degree = cover.degree
        self.base = cover.base

    @property
    def total(self) -> FinAlgebra:
        return self.algebra

    def lift(self, b: AlgElement) -> AlgElement:
        self.algebra._own(b)
        G = self.cover.total
        keep = self.J.space.complement_indices()
        v = [G.field.zero] * G.dim
        for i, c in zip(keep, b.coords):
            v[i] = c
        return G.element(v)

    def __call__(self, b: AlgElement) -> AlgElement:
        return self.cover(self.lift(b))

    def kernel(self) -> Ideal:
        return kernel(self.cover).image(self.projection)

    def image(self) -> ImageResult:
        img = image(self.cover)
        # B -> B/ker through the lift
        cols = [img.projection(self.lift(e)).coords for e in self.algebra.basis()]
        M = linalg.transpose(cols) if cols else []
        proj = AlgebraMap(self.algebra, img.algebra, M, check=False)
        return ImageResult(img.algebra, proj, self.kernel(), img.restricted)

    def push_forward(self, u: AlgebraMap, src: RelativeAlgebra, relations: Iterable[AlgElement]) -> "QuotientLaw":
        """Push along a cover map ``u: G0 -> G`` that carries ``J0`` into ``J``."""
        rels = list(relations)
        for r in rels:
            if u(r) not in self.J:
                raise LawError("the cover map does not respect the relations")
        return QuotientLaw(push_forward(self.cover, u, src), rels)

    def descend(self, u0: AlgebraMap, src: RelativeAlgebra, relations: Iterable[AlgElement]) -> AlgebraMap:
        """The map ``G0/J0 -> G/J`` induced by a cover map ``u0``."""
        rels = list(relations)
        J0 = Ideal.generated(src.total, rels)
        res0 = J0.quotient()
        keep = J0.space.complement_indices()
        cols = []
        for i in keep:
            cols.append(self.projection(u0(src.total.basis()[i])).coords)
        M = linalg.transpose(cols) if cols else []
        return AlgebraMap(res0.algebra, self.algebra, M)


def law_kernel(law) -> Ideal:
    """Kernel of a MultiplicativeLaw or a QuotientLaw."""
    return law.kernel() if isinstance(law, QuotientLaw) else kernel(law)


def law_image(law) -> ImageResult:
    return law.image() if isinstance(law, QuotientLaw) else image(law)


def rad_kernel_pushforward_check(law: MultiplicativeLaw, u: AlgebraMap, src: RelativeAlgebra) -> bool:
    """rad ker(u_* F) == u^{-1}(rad ker F)."""
    pushed = push_forward(law, u, src)
    lhs = kernel(pushed).radical()
    rhs = kernel(law).radical().preimage(u)
    return lhs == rhs


def filtration_is_stable(law: MultiplicativeLaw) -> bool:
    """I^(k) == I^(k-1) for every k not a power of p (char p) or every k >= 2 (char 0)."""
    chain = filtration(law)
    p = law.base.field.char
    for k in range(1, len(chain)):
        refining = (k == 1) if p == 0 else is_power_of(k, p)
        if not refining and chain[k] != chain[k - 1]:
            return False
    return True
