"""The divided-power algebra Gamma^d_A(B) of a free relative algebra B/A.

Elements are A-linear combinations of ``gamma^nu = X_alpha gamma^{nu_alpha}(x_alpha)``
for the chosen A-basis ``x_alpha`` of B.  Indices are exponent tuples of
length ``r`` summing to ``d``, ordered lexicographically descending.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

from . import linalg
from .exactfield import binomial
from .finalg import (
    AlgebraError,
    AlgebraMap,
    AlgElement,
    FinAlgebra,
    QuotientResult,
    RelativeAlgebra,
    is_relative_map,
    quotient_by_subspace,
    relative_product,
)
from .linalg import Subspace

GammaIndex = tuple


class GammaError(ValueError):
    pass


def max_rank() -> int:
    return int(os.environ.get("GAMMA_MAX_RANK", "5000"))


@lru_cache(maxsize=None)
def gamma_basis(r: int, d: int) -> tuple[GammaIndex, ...]:
    """All ``nu`` in N^r with ``|nu| = d``, lexicographically descending."""
    if r < 0 or d < 0:
        raise GammaError("rank and degree must be non-negative")
    if r == 0:
        return ((),) if d == 0 else ()

    def rec(rem, slots):
        if slots == 1:
            yield (rem,)
            return
        for first in range(rem, -1, -1):
            for rest in rec(rem - first, slots - 1):
                yield (first,) + rest

    return tuple(rec(d, r))


def gamma_rank(r: int, d: int) -> int:
    return binomial(r - 1, d) if r > 0 else int(d == 0)


def shuffle_coefficient(mu: GammaIndex, nu: GammaIndex) -> int:
    return prod(binomial(a, b) for a, b in zip(mu, nu))


def add_index(mu: GammaIndex, nu: GammaIndex) -> GammaIndex:
    return tuple(a + b for a, b in zip(mu, nu))


def transport_matrices(rows: Sequence[int], cols: Sequence[int]) -> Iterator[tuple]:
    """Non-negative integer matrices with the given row and column sums.

    Yielded as flat row-major tuples.  Rows are filled one at a time; a row
    entry never exceeds what is left of its column.
    """
    r, c = len(rows), len(cols)

    def fill_row(i, remaining_cols, acc):
        if i == r:
            if all(x == 0 for x in remaining_cols):
                yield tuple(acc)
            return
        # columns after this row must still be fillable by later rows
        later = sum(rows[i + 1 :])

        def place(j, left, current, rc):
            if j == c - 1:
                if left <= rc[j]:
                    new = list(rc)
                    new[j] -= left
                    if sum(new) == later:
                        yield current + [left], new
                return
            for v in range(min(left, rc[j]), -1, -1):
                new = list(rc)
                new[j] -= v
                yield from place(j + 1, left - v, current + [v], new)

        for row_vals, rc in place(0, rows[i], [], list(remaining_cols)):
            yield from fill_row(i + 1, rc, acc + row_vals)

    yield from fill_row(0, list(cols), [])


class GammaModule:
    """Gamma^d_A(B) as a free A-module with basis ``gamma_basis(r, d)``."""

    def __init__(self, carrier: RelativeAlgebra, d: int):
        if d < 0:
            raise GammaError("degree must be non-negative")
        self.carrier = carrier
        self.d = d
        self.base = carrier.base
        self.basis = gamma_basis(carrier.rank, d)
        self.index = {nu: i for i, nu in enumerate(self.basis)}
        self.rank = len(self.basis)

    def __repr__(self):
        return f"Gamma^{self.d}(rank {self.carrier.rank}; {self.rank} basis elements)"

    # -- elements ------------------------------------------------------
    def element(self, coeffs: dict) -> "GammaElement":
        return GammaElement(self, coeffs)

    def zero(self) -> "GammaElement":
        return GammaElement(self, {})

    def basis_element(self, nu: GammaIndex) -> "GammaElement":
        if nu not in self.index:
            raise GammaError(f"{nu} is not an index of degree {self.d} and rank {self.carrier.rank}")
        return GammaElement(self, {tuple(nu): self.base.one()})

    def basis_elements(self) -> list["GammaElement"]:
        return [self.basis_element(nu) for nu in self.basis]

    def gamma_of_coords(self, coords: Sequence[AlgElement]) -> "GammaElement":
        """``gamma^d(sum a_alpha x_alpha)`` from the A-coordinates ``a_alpha``."""
        powers = []
        for a in coords:
            ps = [self.base.one()]
            for _ in range(self.d):
                ps.append(ps[-1] * a)
            powers.append(ps)
        out = {}
        for nu in self.basis:
            c = self.base.one()
            for alpha, e in enumerate(nu):
                if e:
                    c = c * powers[alpha][e]
            if not c.is_zero():
                out[nu] = c
        return GammaElement(self, out)

    def gamma_of_element(self, b: AlgElement) -> "GammaElement":
        return self.gamma_of_coords(self.carrier.coords(b))

    def unit(self) -> "GammaElement":
        return self.gamma_of_element(self.carrier.total.one())

    # -- k-linear views ------------------------------------------------
    @property
    def kdim(self) -> int:
        return self.rank * self.base.dim

    def flatten(self, u: "GammaElement") -> tuple:
        f = self.base.field
        m = self.base.dim
        out = [f.zero] * self.kdim
        for nu, a in u.coeffs.items():
            i = self.index[nu]
            out[i * m : (i + 1) * m] = a.coords
        return tuple(out)

    def unflatten(self, v: Sequence) -> "GammaElement":
        m = self.base.dim
        out = {}
        for i, nu in enumerate(self.basis):
            chunk = tuple(v[i * m : (i + 1) * m])
            if any(c != 0 for c in chunk):
                out[nu] = AlgElement(self.base, chunk)
        return GammaElement(self, out)

    def k_basis(self) -> list["GammaElement"]:
        """``a_i gamma^nu`` for the k-basis ``a_i`` of A, in flatten order."""
        Ab = self.base.basis()
        return [GammaElement(self, {nu: a}) for nu in self.basis for a in Ab]


class GammaElement:
    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: GammaModule, coeffs: dict):
        self.parent = parent
        self.coeffs = {tuple(nu): a for nu, a in coeffs.items() if not a.is_zero()}

    @property
    def degree(self) -> int:
        return self.parent.d

    def _check(self, other: "GammaElement"):
        if other.parent.carrier is not self.parent.carrier or other.parent.d != self.parent.d:
            raise GammaError("elements of different divided-power modules")

    def __add__(self, other: "GammaElement") -> "GammaElement":
        self._check(other)
        out = dict(self.coeffs)
        for nu, a in other.coeffs.items():
            out[nu] = out[nu] + a if nu in out else a
        return GammaElement(self.parent, out)

    def __sub__(self, other: "GammaElement") -> "GammaElement":
        return self + (-other)

    def __neg__(self) -> "GammaElement":
        return GammaElement(self.parent, {nu: -a for nu, a in self.coeffs.items()})

    def scale(self, c) -> "GammaElement":
        """Multiply by an element of A or a raw field value."""
        if isinstance(c, AlgElement):
            return GammaElement(self.parent, {nu: c * a for nu, a in self.coeffs.items()})
        return GammaElement(self.parent, {nu: a.scale(c) for nu, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GammaElement):
            return gamma_algebra(self.parent.carrier, self.parent.d).mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __xor__(self, other: "GammaElement") -> "GammaElement":
        return shuffle(self, other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return (
            self.parent.carrier is other.parent.carrier
            and self.parent.d == other.parent.d
            and self.coeffs.keys() == other.coeffs.keys()
            and all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)
        )

    def __hash__(self):
        return hash(tuple(sorted((nu, a.coords) for nu, a in self.coeffs.items())))

    def terms(self) -> list[tuple[GammaIndex, AlgElement]]:
        return [(nu, self.coeffs[nu]) for nu in self.parent.basis if nu in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({a})*g{list(nu)}" for nu, a in self.terms())

    __repr__ = __str__


# -- module cache -----------------------------------------------------------


def gamma_module(carrier: RelativeAlgebra, d: int) -> GammaModule:
    cache = carrier.__dict__.setdefault("_gamma_modules", {})
    if d not in cache:
        cache[d] = GammaModule(carrier, d)
    return cache[d]


def gamma_algebra(carrier: RelativeAlgebra, d: int) -> "GammaAlgebra":
    cache = carrier.__dict__.setdefault("_gamma_algebras", {})
    if d not in cache:
        cache[d] = GammaAlgebra(carrier, d)
    return cache[d]


def gamma_of_element(b: AlgElement, k: int, carrier: RelativeAlgebra) -> GammaElement:
    return gamma_module(carrier, k).gamma_of_element(b)


def shuffle(u: GammaElement, v: GammaElement) -> GammaElement:
    """The product Gamma^d x Gamma^e -> Gamma^{d+e}."""
    carrier = u.parent.carrier
    if v.parent.carrier is not carrier:
        raise GammaError("shuffle of elements over different carriers")
    target = gamma_module(carrier, u.degree + v.degree)
    out: dict = {}
    for mu, a in u.coeffs.items():
        for nu, b in v.coeffs.items():
            c = carrier.field(shuffle_coefficient(mu, nu))
            if c == 0:
                continue
            key = add_index(mu, nu)
            term = (a * b).scale(c)
            out[key] = out[key] + term if key in out else term
    return GammaElement(target, out)


def shuffle_all(elems: Iterable[GammaElement], carrier: RelativeAlgebra) -> GammaElement:
    acc = gamma_module(carrier, 0).basis_element((0,) * carrier.rank)
    for e in elems:
        acc = shuffle(acc, e)
    return acc


class GammaAlgebra(GammaModule):
    """Gamma^d_A(B) with its internal multiplication (eagerly tabulated)."""

    def __init__(self, carrier: RelativeAlgebra, d: int):
        super().__init__(carrier, d)
        if self.rank > max_rank():
            raise GammaError(
                f"Gamma^{d} of rank {self.rank} exceeds the limit {max_rank()} (GAMMA_MAX_RANK)"
            )
        self._table = self._build_table()

    def _build_table(self):
        carrier = self.carrier
        r = carrier.rank
        consts = carrier.rel_constants()
        # gamma^n(x_a x_b) for the products appearing in the multiplication formula
        gp = {}
        for a in range(r):
            for b in range(a, r):
                coords = consts[a][b]
                gp[(a, b)] = [gamma_module(carrier, n).gamma_of_coords(coords) for n in range(self.d + 1)]
                gp[(b, a)] = gp[(a, b)]
        table = {}
        for i, mu in enumerate(self.basis):
            for nu in self.basis[i:]:
                total = self.zero()
                for xi in transport_matrices(mu, nu):
                    factors = [gp[(a, b)][xi[a * r + b]] for a in range(r) for b in range(r) if xi[a * r + b]]
                    term = shuffle_all(factors, carrier)
                    total = total + GammaElement(self, term.coeffs)
                table[(mu, nu)] = total
                table[(nu, mu)] = total
        return table

    def basis_product(self, mu: GammaIndex, nu: GammaIndex) -> GammaElement:
        return self._table[(tuple(mu), tuple(nu))]

    def mul(self, u: GammaElement, v: GammaElement) -> GammaElement:
        u._check(v)
        out = self.zero()
        for mu, a in u.coeffs.items():
            for nu, b in v.coeffs.items():
                out = out + self._table[(mu, nu)].scale(a * b)
        return out

    def one(self) -> GammaElement:
        return self.unit()

    def as_k_algebra(self) -> FinAlgebra:
        """Gamma^d_A(B) as a k-algebra on the flattened basis ``a_i gamma^nu``."""
        kb = self.k_basis()
        consts = [[self.flatten(x * y) for y in kb] for x in kb]
        labels = [f"{a}*g{list(nu)}" for nu in self.basis for a in self.base.labels]
        return FinAlgebra(self.base.field, consts, self.flatten(self.unit()), labels, check=False)

    def structure_map(self, kalg: FinAlgebra) -> AlgebraMap:
        """``A -> Gamma^d_A(B)``, ``a -> a gamma^d(1)``."""
        cols = [self.flatten(self.unit().scale(a)) for a in self.base.basis()]
        return AlgebraMap(self.base, kalg, linalg.transpose(cols) if cols else [], check=False)


# -- tensor products Gamma^d (x)_A Gamma^e -----------------------------------


class GammaTensor:
    """Element of Gamma^d (x)_A Gamma^e: dict ``(nu', nu'') -> A``."""

    __slots__ = ("left", "right", "coeffs")

    def __init__(self, left: GammaModule, right: GammaModule, coeffs: dict):
        self.left = left
        self.right = right
        self.coeffs = {k: a for k, a in coeffs.items() if not a.is_zero()}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            out[k] = out[k] + a if k in out else a
        return GammaTensor(self.left, self.right, out)

    def __mul__(self, other: "GammaTensor") -> "GammaTensor":
        L = gamma_algebra(self.left.carrier, self.left.d)
        R = gamma_algebra(self.right.carrier, self.right.d)
        out: dict = {}
        for (m1, n1), a in self.coeffs.items():
            for (m2, n2), b in other.coeffs.items():
                ab = a * b
                pl = L.basis_product(m1, m2)
                pr = R.basis_product(n1, n2)
                for mu, c in pl.coeffs.items():
                    for nu, e in pr.coeffs.items():
                        key = (mu, nu)
                        t = ab * c * e
                        out[key] = out[key] + t if key in out else t
        return GammaTensor(self.left, self.right, out)

    def __eq__(self, other):
        return (
            isinstance(other, GammaTensor)
            and self.coeffs.keys() == other.coeffs.keys()
            and all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({a})*g{list(m)}(x)g{list(n)}" for (m, n), a in sorted(self.coeffs.items(), reverse=True))

    __repr__ = __str__


def tensor_pure(u: GammaElement, v: GammaElement) -> GammaTensor:
    out = {}
    for mu, a in u.coeffs.items():
        for nu, b in v.coeffs.items():
            out[(mu, nu)] = a * b
    return GammaTensor(u.parent, v.parent, out)


def rho(d: int, e: int, u: GammaElement) -> GammaTensor:
    """Comultiplication Gamma^{d+e} -> Gamma^d (x) Gamma^e."""
    if u.degree != d + e:
        raise GammaError(f"rho_{d},{e} needs an element of degree {d + e}")
    carrier = u.parent.carrier
    left, right = gamma_module(carrier, d), gamma_module(carrier, e)
    out: dict = {}
    for nu, a in u.coeffs.items():
        for n1 in left.basis:
            if all(x <= y for x, y in zip(n1, nu)):
                n2 = tuple(y - x for x, y in zip(n1, nu))
                key = (n1, n2)
                out[key] = out[key] + a if key in out else a
    return GammaTensor(left, right, out)


def tensor_map(t: GammaTensor, f, g) -> GammaTensor:
    """Apply A-linear maps on basis elements to each tensor factor."""
    out: dict = {}
    for (m, n), a in t.coeffs.items():
        fm, gn = f(m), g(n)
        for mu, b in fm.coeffs.items():
            for nu, c in gn.coeffs.items():
                key = (mu, nu)
                term = a * b * c
                out[key] = out[key] + term if key in out else term
    return GammaTensor(getattr(f, "target_module", t.left), getattr(g, "target_module", t.right), out)


# -- functoriality -----------------------------------------------------------


class GammaMap:
    """The A-linear map Gamma^d(u): Gamma^d(B) -> Gamma^d(C)."""

    def __init__(self, u: AlgebraMap, src: RelativeAlgebra, dst: RelativeAlgebra, d: int, *, check=True):
        if check and not is_relative_map(u, src, dst):
            raise GammaError("map is not a homomorphism of A-algebras between the carriers")
        self.u = u
        self.src = gamma_module(src, d)
        self.dst = gamma_module(dst, d)
        self.target_module = self.dst
        self.d = d
        images = [[gamma_module(dst, n).gamma_of_element(u(x)) for n in range(d + 1)] for x in src.rel_basis]
        self.images = {}
        for nu in self.src.basis:
            self.images[nu] = shuffle_all([images[a][e] for a, e in enumerate(nu) if e], dst)
            self.images[nu] = GammaElement(self.dst, self.images[nu].coeffs)

    def __call__(self, x):
        if isinstance(x, tuple):
            return self.images[x]
        out = self.dst.zero()
        for nu, a in x.coeffs.items():
            out = out + self.images[nu].scale(a)
        return out

    def k_matrix(self) -> list[list]:
        cols = [self.dst.flatten(self(x)) for x in self.src.k_basis()]
        return linalg.transpose(cols) if cols else []

    def rank(self) -> int:
        cols = [self.dst.flatten(self(x)) for x in self.src.k_basis()]
        return linalg.rank(self.src.base.field, cols)

    def is_surjective(self) -> bool:
        return self.rank() == self.dst.kdim


def gamma_functorial(u: AlgebraMap, src: RelativeAlgebra, dst: RelativeAlgebra, d: int) -> GammaMap:
    return GammaMap(u, src, dst, d)


# -- products of rings ---------------------------------------------------------


class ProductDecomposition:
    """Gamma^d(B x C) = prod_{a+b=d} Gamma^a(B) (x) Gamma^b(C), explicitly."""

    def __init__(self, B: RelativeAlgebra, C: RelativeAlgebra, d: int):
        self.B, self.C, self.d = B, C, d
        self.P, self.p1, self.p2 = relative_product(B, C)
        self.gamma = gamma_algebra(self.P, d)
        rb = B.rank
        self.components = [(a, d - a) for a in range(d, -1, -1)]
        self.split = {}
        for nu in self.gamma.basis:
            nb, nc = nu[:rb], nu[rb:]
            self.split[nu] = (sum(nb), nb, nc)
        self.component_ranks = {
            (a, b): gamma_rank(B.rank, a) * gamma_rank(C.rank, b) for a, b in self.components
        }

    def matrix(self) -> list[list[int]]:
        """Permutation matrix from the gamma basis to the concatenated component bases."""
        order = []
        for a, b in self.components:
            for nb in gamma_basis(self.B.rank, a):
                for nc in gamma_basis(self.C.rank, b):
                    order.append(nb + nc)
        pos = {nu: i for i, nu in enumerate(order)}
        n = len(order)
        M = [[0] * n for _ in range(n)]
        for j, nu in enumerate(self.gamma.basis):
            M[pos[nu]][j] = 1
        return M

    def decompose(self, u: GammaElement) -> dict:
        """Image of ``u`` as ``{a: GammaTensor in Gamma^a(B) (x) Gamma^{d-a}(C)}``."""
        out: dict = {}
        for nu, coeff in u.coeffs.items():
            a, nb, nc = self.split[nu]
            out.setdefault(a, {})[(nb, nc)] = coeff
        return {
            a: GammaTensor(gamma_module(self.B, a), gamma_module(self.C, self.d - a), cs)
            for a, cs in out.items()
        }

    def verify(self) -> bool:
        """Ring isomorphism check on all basis pairs, plus ranks."""
        if sum(self.component_ranks.values()) != self.gamma.rank:
            return False
        M = self.matrix()
        if linalg.rank(self.P.field, [[self.P.field(x) for x in row] for row in M]) != len(M):
            return False
        basis = self.gamma.basis
        for i, mu in enumerate(basis):
            for nu in basis[i:]:
                prod_img = self.decompose(self.gamma.basis_product(mu, nu))
                a1, b1, c1 = self.split[mu]
                a2, b2, c2 = self.split[nu]
                if a1 != a2:
                    if any(not t.is_zero() for t in prod_img.values()):
                        return False
                    continue
                Ga = gamma_algebra(self.B, a1)
                Gb = gamma_algebra(self.C, self.d - a1)
                left = GammaTensor(Ga, Gb, {(b1, c1): self.P.base.one()})
                right = GammaTensor(Ga, Gb, {(b2, c2): self.P.base.one()})
                expect = left * right
                got = prod_img.get(a1, GammaTensor(Ga, Gb, {}))
                if any(not t.is_zero() for k, t in prod_img.items() if k != a1):
                    return False
                if not _tensor_eq(got, expect):
                    return False
        return True

    def gamma_of_pair(self, x: AlgElement, y: AlgElement) -> dict:
        """``gamma^d((x, y))`` decomposed; should equal ``(gamma^a(x) (x) gamma^b(y))_a``."""
        pair = self.P.total.element(list(x.coords) + list(y.coords))
        return self.decompose(self.gamma.gamma_of_element(pair))


def _tensor_eq(s: GammaTensor, t: GammaTensor) -> bool:
    return s.coeffs.keys() == t.coeffs.keys() and all(s.coeffs[k] == t.coeffs[k] for k in s.coeffs)


def product_decomposition(B: RelativeAlgebra, C: RelativeAlgebra, d: int) -> ProductDecomposition:
    return ProductDecomposition(B, C, d)


# -- presentations -------------------------------------------------------------


class PresentationResult:
    def __init__(self, gamma: GammaAlgebra, relations: Subspace, quotient: QuotientResult | None, module_relations: Subspace):
        self.gamma = gamma
        self.relation_span = relations  # A-submodule R of G, as k-subspace
        self.submodule = module_relations  # I inside Gamma^d(G), flattened
        self.quotient = quotient

    @property
    def kdim(self) -> int:
        return self.gamma.kdim - self.submodule.dim

    def project(self, u: GammaElement) -> tuple:
        """Class of ``u`` in Gamma^d(G)/I, in quotient coordinates."""
        v = self.submodule.reduce(self.gamma.flatten(u))
        return tuple(v[i] for i in self.submodule.complement_indices())


def a_submodule(carrier: RelativeAlgebra, gens: Iterable[AlgElement]) -> Subspace:
    """k-span of ``a * g`` for ``a`` in the k-basis of A."""
    B = carrier.total
    vecs = []
    for g in gens:
        for a in carrier.base.basis():
            vecs.append((carrier.embed(a) * g).coords)
    return Subspace(B.field, B.dim, vecs)


def gamma_of_quotient_via_presentation(
    G: RelativeAlgebra, relations: Sequence[AlgElement], d: int, *, close_to_ideal: bool = False
) -> PresentationResult:
    """Gamma^d_A(G/R) = Gamma^d_A(G)/I, I spanned by ``gamma^k(x) X y``.

    ``relations`` span the A-submodule R (closed under the k-basis of A before
    taking gamma^k).  With ``close_to_ideal`` they are first replaced by the
    ideal they generate.  The quotient ring is formed when R is an ideal.
    """
    B = G.total
    rels = list(relations)
    if close_to_ideal:
        ideal = B.ideal(rels)
        rels = B.subspace_elements(ideal)
    span_k = Subspace(B.field, B.dim, [x.coords for x in rels])
    R = a_submodule(G, rels)
    if R != span_k and not close_to_ideal:
        raise GammaError("relations do not span an A-submodule of G")
    gam = gamma_algebra(G, d)
    A = G.base
    Ab = A.basis()
    xs = B.subspace_elements(R)
    vecs = []
    for k in range(1, d + 1):
        Mk = gamma_module(G, k)
        Y = gamma_module(G, d - k).basis_elements()
        for x in xs:
            gx = Mk.gamma_of_element(x)
            for y in Y:
                t = shuffle(gx, y)
                for a in Ab:
                    vecs.append(gam.flatten(GammaElement(gam, t.scale(a).coeffs)))
    I = Subspace(B.field, gam.kdim, vecs)
    quotient = None
    if B.is_ideal(R):
        kalg = gam.as_k_algebra()
        quotient = quotient_by_subspace(kalg, I)
    return PresentationResult(gam, R, quotient, I)


def presentation_matches_direct(
    G: RelativeAlgebra, relations: Sequence[AlgElement], pi: AlgebraMap, B: RelativeAlgebra, d: int
) -> bool:
    """Oracle: ker Gamma^d(pi) == I and Gamma^d(pi) is onto, so the quotient is Gamma^d(B).

    ``pi: G -> B`` must be a surjection of A-algebras with kernel the ideal of ``relations``.
    """
    res = gamma_of_quotient_via_presentation(G, relations, d, close_to_ideal=True)
    gm = GammaMap(pi, G, B, d)
    M = gm.k_matrix()
    kernel = Subspace(G.field, res.gamma.kdim, linalg.nullspace(G.field, M, res.gamma.kdim)) if M else Subspace.full(G.field, res.gamma.kdim)
    if kernel != res.submodule or not gm.is_surjective():
        return False
    # the induced map on the quotient must be multiplicative
    if res.quotient is not None:
        Q = res.quotient.algebra
        keep = res.submodule.complement_indices()
        dst = gamma_algebra(B, d)
        kb = res.gamma.k_basis()
        imgs = [gm(kb[i]) for i in keep]
        for i in range(len(imgs)):
            for j in range(i, len(imgs)):
                lhs_q = Q.basis()[i] * Q.basis()[j]
                lift = res.gamma.zero()
                for c, idx in zip(lhs_q.coords, keep):
                    if c != 0:
                        lift = lift + kb[idx].scale(c)
                if dst.flatten(gm(lift)) != dst.flatten(imgs[i] * imgs[j]):
                    return False
    return True


# -- base change ----------------------------------------------------------------


def base_change_gamma(gam: GammaAlgebra, u: AlgebraMap) -> tuple[GammaAlgebra, bool]:
    """Gamma^d over A' of the base-changed carrier, and whether its structure
    constants are the images of the old ones under ``u``."""
    new_carrier = gam.carrier.base_change(u)
    new = gamma_algebra(new_carrier, gam.d)
    ok = True
    for mu in gam.basis:
        for nu in gam.basis:
            old = gam.basis_product(mu, nu)
            mapped = {k: u(a) for k, a in old.coeffs.items()}
            got = new.basis_product(mu, nu)
            if GammaElement(new, mapped) != got:
                ok = False
    return new, ok


def map_gamma_element(x: GammaElement, u: AlgebraMap, target: GammaModule) -> GammaElement:
    return GammaElement(target, {nu: u(a) for nu, a in x.coeffs.items()})


# -- spanning by gamma^d(b) ---------------------------------------------------------


def gamma_spanning_check(carrier: RelativeAlgebra, d: int, *, limit: int = 10**6, rng=None, samples: int = 200) -> bool:
    """Whether ``{gamma^d(b)}`` spans Gamma^d_A(B) as an A-module.

    Exhaustive over finite fields; over Q random elements are drawn until the
    span is everything (the residue field is infinite).
    """
    import random as _random

    B = carrier.total
    M = gamma_module(carrier, d)
    Ab = carrier.base.basis()
    target = M.kdim
    span = Subspace(B.field, target)

    def add(b):
        nonlocal span
        g = M.gamma_of_element(b)
        span = span + Subspace(B.field, target, [M.flatten(g.scale(a)) for a in Ab])

    if B.field.char:
        if B.cardinality() > limit:
            raise GammaError(f"refusing to enumerate {B.cardinality()} elements")
        for b in B.elements():
            add(b)
            if span.dim == target:
                return True
        return span.dim == target
    rng = rng or _random.Random(0)
    for _ in range(samples):
        add(B.random_element(rng))
        if span.dim == target:
            return True
    return False
