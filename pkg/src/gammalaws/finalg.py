"""Finite-dimensional commutative algebras over Q or F_p.

A ``FinAlgebra`` is a basis plus structure constants.  A ``RelativeAlgebra``
is such an algebra ``B`` together with a finite-dimensional base algebra ``A``,
a structure map ``A -> B`` and an A-basis ``x_1..x_r`` of ``B``; it is the
carrier of everything in ``divpow`` and ``laws``.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from . import linalg
from .exactfield import FieldSpec
from .linalg import Subspace
from .polyring import (
    GroebnerBasis,
    MultiPoly,
    PolyRing,
    buchberger,
    normal_form,
    quotient_basis,
)


class AlgebraError(ValueError):
    pass


class FinAlgebra:
    """Commutative associative unital algebra with basis ``e_0..e_{n-1}``.

    ``consts[i][j]`` is the coordinate vector of ``e_i e_j``.
    """

    def __init__(
        self,
        field: FieldSpec,
        consts: Sequence[Sequence[Sequence]],
        unit: Sequence,
        labels: Sequence[str] | None = None,
        *,
        check: bool = True,
        presentation: tuple | None = None,
    ):
        self.field = field
        self.dim = n = len(unit)
        self.consts = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in consts)
        self.unit = tuple(field(c) for c in unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        if len(self.consts) != n or any(len(row) != n for row in self.consts):
            raise AlgebraError("structure constant table has the wrong shape")
        if len(self.labels) != n:
            raise AlgebraError("wrong number of labels")
        # (ring, gb, standard monomials) when built from a presentation
        self.presentation = presentation
        self._table = [
            [[(k, c) for k, c in enumerate(v) if c != 0] for v in row] for row in self.consts
        ]
        self._key = (field, self.consts, self.unit)
        if check:
            self.check()

    # -- construction --------------------------------------------------
    @classmethod
    def ground(cls, field: FieldSpec) -> "FinAlgebra":
        """The coefficient field itself as a 1-dimensional algebra."""
        return cls(field, [[[field.one]]], [field.one], ["1"], check=False)

    @classmethod
    def zero_algebra(cls, field: FieldSpec) -> "FinAlgebra":
        return cls(field, [], [], [], check=False)

    @classmethod
    def from_presentation(
        cls,
        variables: Sequence[str],
        relations: Iterable,
        field: FieldSpec,
        order: str = "grevlex",
    ) -> "FinAlgebra":
        """``k[variables]/(relations)``; relations are MultiPolys or strings."""
        ring = PolyRing(field, tuple(variables), order)
        rels = [ring.parse(r) if isinstance(r, str) else r for r in relations]
        gb = buchberger(rels, ring)
        std = quotient_basis(gb)
        index = {m: i for i, m in enumerate(std)}
        n = len(std)
        consts = []
        for a in std:
            row = []
            for b in std:
                nf = normal_form(ring.monomial(tuple(x + y for x, y in zip(a, b))), gb)
                v = [field.zero] * n
                for m, c in nf.terms.items():
                    v[index[m]] = c
                row.append(v)
            consts.append(row)
        unit = [field.zero] * n
        if n:
            unit[index[ring.one_monomial()]] = field.one
        labels = [ring.mono_str(m) for m in std]
        return cls(field, consts, unit, labels, presentation=(ring, gb, std))

    # -- invariants ----------------------------------------------------
    def check(self):
        n, f = self.dim, self.field
        for i in range(n):
            for j in range(i + 1, n):
                if self.consts[i][j] != self.consts[j][i]:
                    raise AlgebraError(f"not commutative at ({self.labels[i]}, {self.labels[j]})")
        for i in range(n):
            ei = linalg.unit_vec(f, n, i)
            if self._mul(self.unit, ei) != ei:
                raise AlgebraError(f"unit law fails at {self.labels[i]}")
        for i, j, k in itertools.product(range(n), repeat=3):
            left = self._mul(self.consts[i][j], linalg.unit_vec(f, n, k))
            right = self._mul(linalg.unit_vec(f, n, i), self.consts[j][k])
            if left != right:
                raise AlgebraError(
                    f"not associative at ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                )

    # -- arithmetic on raw coordinate tuples ---------------------------
    def _mul(self, u: Sequence, v: Sequence) -> tuple:
        f = self.field
        n = self.dim
        out = [0] * n if f.char else [f.zero] * n
        table = self._table
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = table[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        if f.char:
            p = f.char
            return tuple(x % p for x in out)
        return tuple(out)

    # -- elements ------------------------------------------------------
    def element(self, coords: Sequence) -> "AlgElement":
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgElement(self, tuple(self.field(c) for c in coords))

    def zero(self) -> "AlgElement":
        return AlgElement(self, linalg.zero_vec(self.field, self.dim))

    def one(self) -> "AlgElement":
        return AlgElement(self, self.unit)

    def scalar(self, c) -> "AlgElement":
        return self.one().scale(self.field(c))

    def basis(self) -> list["AlgElement"]:
        return [AlgElement(self, linalg.unit_vec(self.field, self.dim, i)) for i in range(self.dim)]

    def gen(self, name: str) -> "AlgElement":
        return self.parse(name)

    def from_poly(self, p: MultiPoly) -> "AlgElement":
        if self.presentation is None:
            raise AlgebraError("algebra has no presentation to evaluate polynomials in")
        ring, gb, std = self.presentation
        nf = normal_form(p, gb)
        index = {m: i for i, m in enumerate(std)}
        v = [self.field.zero] * self.dim
        for m, c in nf.terms.items():
            v[index[m]] = c
        return AlgElement(self, tuple(v))

    def parse(self, text: str) -> "AlgElement":
        if self.presentation is None:
            raise AlgebraError("algebra has no presentation to parse expressions in")
        return self.from_poly(self.presentation[0].parse(text))

    def elements(self):
        """All elements (finite coefficient field only)."""
        for cs in itertools.product(self.field.elements(), repeat=self.dim):
            yield AlgElement(self, tuple(cs))

    def random_element(self, rng) -> "AlgElement":
        return AlgElement(self, tuple(self.field.random(rng) for _ in range(self.dim)))

    def cardinality(self):
        return self.field.char**self.dim if self.field.char else float("inf")

    # -- linear algebra views ------------------------------------------
    def mult_matrix(self, b: "AlgElement") -> list[list]:
        """Matrix of ``x -> b x``: column j holds the coordinates of ``b e_j``."""
        cols = [self._mul(b.coords, linalg.unit_vec(self.field, self.dim, j)) for j in range(self.dim)]
        return linalg.transpose(cols) if cols else []

    def trace(self, b: "AlgElement"):
        f = self.field
        M = self.mult_matrix(b)
        s = f.zero
        for i in range(self.dim):
            s = f.add(s, M[i][i])
        return s

    def ideal(self, gens: Iterable["AlgElement"]) -> Subspace:
        """The ideal generated by ``gens`` as a subspace of coordinates."""
        vecs = []
        basis = [linalg.unit_vec(self.field, self.dim, j) for j in range(self.dim)]
        for g in gens:
            self._own(g)
            for e in basis:
                vecs.append(self._mul(g.coords, e))
        return Subspace(self.field, self.dim, vecs)

    def is_ideal(self, space: Subspace) -> bool:
        for v in space.basis:
            for j in range(self.dim):
                if not space.contains(self._mul(v, linalg.unit_vec(self.field, self.dim, j))):
                    return False
        return True

    def subspace_elements(self, space: Subspace) -> list["AlgElement"]:
        return [AlgElement(self, tuple(v)) for v in space.basis]

    def _own(self, x: "AlgElement"):
        if not self.same(x.parent):
            raise AlgebraError("element belongs to a different algebra")

    def same(self, other: "FinAlgebra") -> bool:
        return self is other or self._key == other._key

    def __eq__(self, other):
        return isinstance(other, FinAlgebra) and self.same(other)

    def __hash__(self):
        return hash((self.field, self.dim))

    def __repr__(self):
        return f"FinAlgebra(dim={self.dim}, field={self.field}, basis={list(self.labels)})"

    # -- canonical description -----------------------------------------
    def to_json(self) -> dict:
        n = self.dim
        return {
            "field": self.field.to_json(),
            "basis": list(self.labels),
            "unit": [str(c) for c in self.unit],
            "constants": [str(self.consts[i][j][k]) for i in range(n) for j in range(n) for k in range(n)],
        }

    @classmethod
    def from_json_constants(cls, doc: dict) -> "FinAlgebra":
        field = FieldSpec.from_json(doc["field"])
        labels = doc["basis"]
        n = len(labels)
        flat = [field(c) for c in doc["constants"]]
        consts = [[[flat[(i * n + j) * n + k] for k in range(n)] for j in range(n)] for i in range(n)]
        return cls(field, consts, [field(c) for c in doc["unit"]], labels)


class AlgElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: FinAlgebra, coords: tuple):
        self.parent = parent
        self.coords = coords

    @property
    def field(self) -> FieldSpec:
        return self.parent.field

    def _coerce(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            if not self.parent.same(other.parent):
                raise AlgebraError("elements of different algebras")
            return other
        return self.parent.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return AlgElement(self.parent, linalg.vadd(self.field, self.coords, other.coords))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return AlgElement(self.parent, linalg.vsub(self.field, self.coords, other.coords))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        f = self.field
        return AlgElement(self.parent, tuple(f.neg(c) for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            other = self._coerce(other)
            return AlgElement(self.parent, self.parent._mul(self.coords, other.coords))
        return self.scale(self.field(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.parent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "AlgElement":
        return AlgElement(self.parent, linalg.vscale(self.field, c, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.coords == other.coords and self.parent.same(other.parent)
        if isinstance(other, int):
            return self == self.parent.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def is_nilpotent(self) -> bool:
        x = self
        for _ in range(self.parent.dim + 1):
            if x.is_zero():
                return True
            x = x * self
        return x.is_zero()

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for c, lab in zip(self.coords, self.parent.labels):
            if c == 0:
                continue
            if lab == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(lab)
            else:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgElement({self})"


def scale_fn(c, x):
    return x.scale(c)


class AlgebraMap:
    """A k-linear map given by ``matrix`` (target.dim x source.dim)."""

    def __init__(self, source: FinAlgebra, target: FinAlgebra, matrix, *, check: bool = True):
        self.source = source
        self.target = target
        f = source.field
        self.matrix = [[f(c) for c in row] for row in matrix]
        if len(self.matrix) != target.dim or any(len(r) != source.dim for r in self.matrix):
            raise AlgebraError("map matrix has the wrong shape")
        if check:
            self.check()

    @classmethod
    def from_images(cls, source: FinAlgebra, target: FinAlgebra, images: Sequence, *, check=True):
        """Map out of a presented algebra, given the images of its variables."""
        if source.presentation is None:
            raise AlgebraError("source needs a presentation")
        ring, gb, std = source.presentation
        imgs = [target.parse(x) if isinstance(x, str) else x for x in images]
        cols = []
        for m in std:
            val = ring.monomial(m).evaluate(imgs, target.one(), scale_fn)
            cols.append(val.coords)
        if check:
            for g in gb.generators:
                if not g.evaluate(imgs, target.one(), scale_fn).is_zero():
                    raise AlgebraError(f"relation {g} does not map to zero")
        return cls(source, target, linalg.transpose(cols) if cols else [[] for _ in range(target.dim)], check=check)

    @classmethod
    def from_basis_images(cls, source: FinAlgebra, target: FinAlgebra, images: Sequence["AlgElement"], *, check=True):
        cols = [x.coords for x in images]
        M = linalg.transpose(cols) if cols else [[] for _ in range(target.dim)]
        return cls(source, target, M, check=check)

    @classmethod
    def identity(cls, A: FinAlgebra) -> "AlgebraMap":
        return cls(A, A, linalg.identity(A.field, A.dim), check=False)

    @classmethod
    def structure(cls, A: FinAlgebra) -> "AlgebraMap":
        """The structure map from the ground field ``k -> A``."""
        return cls(FinAlgebra.ground(A.field), A, [[c] for c in A.unit], check=False)

    def __call__(self, x: AlgElement) -> AlgElement:
        self.source._own(x)
        return AlgElement(self.target, linalg.matvec(self.source.field, self.matrix, x.coords))

    def check(self):
        S, T = self.source, self.target
        if self(S.one()) != T.one():
            raise AlgebraError("map does not preserve the unit")
        basis = S.basis()
        for i, ei in enumerate(basis):
            for ej in basis[i:]:
                if self(ei * ej) != self(ei) * self(ej):
                    raise AlgebraError("map is not multiplicative")

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """``self o other``."""
        if not other.target.same(self.source):
            raise AlgebraError("maps are not composable")
        M = linalg.matmul(self.source.field, self.matrix, other.matrix) if other.matrix and self.matrix else [
            [self.source.field.zero] * other.source.dim for _ in range(self.target.dim)
        ]
        return AlgebraMap(other.source, self.target, M, check=False)

    def kernel(self) -> Subspace:
        return Subspace(self.source.field, self.source.dim, linalg.nullspace(self.source.field, self.matrix, self.source.dim))

    def image(self) -> Subspace:
        cols = linalg.transpose(self.matrix) if self.matrix else []
        return Subspace(self.target.field, self.target.dim, cols)

    def rank(self) -> int:
        return self.image().dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMap)
            and self.source.same(other.source)
            and self.target.same(other.target)
            and self.matrix == other.matrix
        )


# -- derived constructions ------------------------------------------------


def product_algebra(B: FinAlgebra, C: FinAlgebra) -> FinAlgebra:
    f = B.field
    if C.field != f:
        raise AlgebraError("factors over different fields")
    n, m = B.dim, C.dim
    z = f.zero
    consts = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(list(B.consts[i][j]) + [z] * m)
            elif i >= n and j >= n:
                row.append([z] * n + list(C.consts[i - n][j - n]))
            else:
                row.append([z] * (n + m))
        consts.append(row)
    labels = [f"({l},0)" for l in B.labels] + [f"(0,{l})" for l in C.labels]
    return FinAlgebra(f, consts, list(B.unit) + list(C.unit), labels, check=False)


def product_projections(B: FinAlgebra, C: FinAlgebra, P: FinAlgebra) -> tuple[AlgebraMap, AlgebraMap]:
    f = B.field
    n, m = B.dim, C.dim
    p1 = [[f.one if j == i else f.zero for j in range(n + m)] for i in range(n)]
    p2 = [[f.one if j == n + i else f.zero for j in range(n + m)] for i in range(m)]
    return AlgebraMap(P, B, p1, check=False), AlgebraMap(P, C, p2, check=False)


def diagonal_map(B: FinAlgebra, P: FinAlgebra) -> AlgebraMap:
    """``B -> B x B``, ``b -> (b, b)`` where ``P = product_algebra(B, B)``."""
    f = B.field
    n = B.dim
    M = [[f.one if j == (i % n) else f.zero for j in range(n)] for i in range(2 * n)]
    return AlgebraMap(B, P, M)


class QuotientResult:
    def __init__(self, algebra: FinAlgebra, projection: AlgebraMap, ideal: Subspace, unit_ideal: bool):
        self.algebra = algebra
        self.projection = projection
        self.ideal = ideal
        self.unit_ideal = unit_ideal

    def __iter__(self):
        return iter((self.algebra, self.projection))


def quotient_by_subspace(B: FinAlgebra, I: Subspace) -> QuotientResult:
    """``B/I`` for an ideal ``I``; basis = the non-pivot coordinates of ``I``."""
    f = B.field
    if not B.is_ideal(I):
        raise AlgebraError("subspace is not an ideal")
    keep = I.complement_indices()
    q = len(keep)

    def proj(v):
        r = I.reduce(v)
        return tuple(r[i] for i in keep)

    consts = [[proj(B.consts[a][b]) for b in keep] for a in keep]
    unit = proj(B.unit)
    labels = [B.labels[i] for i in keep]
    Q = FinAlgebra(f, consts, unit, labels, check=False)
    cols = [proj(linalg.unit_vec(f, B.dim, j)) for j in range(B.dim)]
    M = linalg.transpose(cols) if q else []
    return QuotientResult(Q, AlgebraMap(B, Q, M, check=False), I, unit_ideal=(q == 0))


def quotient_by_ideal(B: FinAlgebra, gens: Iterable[AlgElement]) -> QuotientResult:
    return quotient_by_subspace(B, B.ideal(gens))


def nilradical(B: FinAlgebra) -> Subspace:
    """The ideal of nilpotent elements."""
    f = B.field
    n = B.dim
    if n == 0:
        return Subspace(f, 0)
    if f.char:
        # Frobenius power is additive and fixes F_p, hence linear
        q = 1
        while q < n:
            q *= f.char
        rows = [(e ** q).coords for e in B.basis()]
        return Subspace(f, n, linalg.nullspace(f, linalg.transpose(rows), n))
    basis = B.basis()
    gram = [[B.trace(a * b) for b in basis] for a in basis]
    return Subspace(f, n, linalg.nullspace(f, gram, n))


def is_reduced(B: FinAlgebra) -> bool:
    return nilradical(B).dim == 0


def reduction(B: FinAlgebra) -> QuotientResult:
    return quotient_by_subspace(B, nilradical(B))


def radical_of_ideal(B: FinAlgebra, I: Subspace) -> Subspace:
    """Preimage of the nilradical of ``B/I``."""
    res = quotient_by_subspace(B, I)
    N = nilradical(res.algebra)
    keep = I.complement_indices()
    f = B.field
    vecs = list(I.basis)
    for v in N.basis:
        w = [f.zero] * B.dim
        for i, c in zip(keep, v):
            w[i] = c
        vecs.append(tuple(w))
    return Subspace(f, B.dim, vecs)


class Ideal:
    """An ideal of a ``FinAlgebra``, stored as a canonical (RREF) subspace."""

    def __init__(self, algebra: FinAlgebra, space: Subspace, *, check: bool = True):
        if space.n != algebra.dim:
            raise AlgebraError("subspace lives in the wrong ambient dimension")
        if check and not algebra.is_ideal(space):
            raise AlgebraError("subspace is not closed under multiplication by B")
        self.algebra = algebra
        self.space = space

    @classmethod
    def generated(cls, algebra: FinAlgebra, gens: Iterable[AlgElement]) -> "Ideal":
        return cls(algebra, algebra.ideal(gens), check=False)

    @classmethod
    def zero(cls, algebra: FinAlgebra) -> "Ideal":
        return cls(algebra, Subspace(algebra.field, algebra.dim), check=False)

    @classmethod
    def unit(cls, algebra: FinAlgebra) -> "Ideal":
        return cls(algebra, Subspace.full(algebra.field, algebra.dim), check=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return self.algebra.dim - self.space.dim

    def basis(self) -> list[AlgElement]:
        return self.algebra.subspace_elements(self.space)

    def __contains__(self, b: AlgElement) -> bool:
        self.algebra._own(b)
        return self.space.contains(b.coords)

    def __le__(self, other: "Ideal") -> bool:
        return self.space <= other.space

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.algebra.same(other.algebra) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.algebra, self.space + other.space, check=False)

    def is_zero(self) -> bool:
        return self.space.is_zero()

    def quotient(self) -> QuotientResult:
        return quotient_by_subspace(self.algebra, self.space)

    def radical(self) -> "Ideal":
        return Ideal(self.algebra, radical_of_ideal(self.algebra, self.space), check=False)

    def image(self, u: "AlgebraMap") -> "Ideal":
        """The ideal generated by ``u(I)`` in the target of ``u``."""
        return Ideal.generated(u.target, [u(b) for b in self.basis()])

    def preimage(self, u: "AlgebraMap") -> "Ideal":
        f = self.algebra.field
        src = u.source
        # v with u(v) in I: kernel of (projection to complement) o u
        keep = self.space.complement_indices()
        cols = [self.space.reduce(u(e).coords) for e in src.basis()]
        rows = [[c[i] for c in cols] for i in keep]
        vecs = linalg.nullspace(f, rows, src.dim) if rows else [e.coords for e in src.basis()]
        return Ideal(src, Subspace(f, src.dim, vecs), check=False)

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in v] for v in self.space.basis]

    def __repr__(self):
        return f"Ideal(dim={self.dim}, basis={[str(b) for b in self.basis()]})"


# -- characteristic polynomials ------------------------------------------


def berkowitz(M: Sequence[Sequence], zero, one) -> list:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(t I - M)``, division free.

    Entries may come from any commutative ring supporting ``+ - *``.
    """
    n = len(M)
    p = [one]  # highest degree first
    for k in range(n):
        a = M[k][k]
        R = [M[k][j] for j in range(k)]
        q = [one, zero - a]
        v = [M[i][k] for i in range(k)]
        for _ in range(k):
            s = zero
            for x, y in zip(R, v):
                s = s + x * y
            q.append(zero - s)
            nv = []
            for i in range(k):
                s = zero
                for j in range(k):
                    s = s + M[i][j] * v[j]
                nv.append(s)
            v = nv
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(k + 1):
                if 0 <= i - j < len(q):
                    s = s + q[i - j] * p[j]
            new.append(s)
        p = new
    return list(reversed(p))


def determinant(M: Sequence[Sequence], zero, one):
    n = len(M)
    c0 = berkowitz(M, zero, one)[0]
    return c0 if n % 2 == 0 else zero - c0


class RelativeAlgebra:
    """``B`` free over ``A`` with chosen A-basis ``x_1..x_r``."""

    def __init__(
        self,
        base: FinAlgebra,
        total: FinAlgebra,
        structure: AlgebraMap,
        rel_basis: Sequence[AlgElement],
        names: Sequence[str] | None = None,
    ):
        self.base = base
        self.total = total
        self.structure = structure
        if not structure.source.same(base) or not structure.target.same(total):
            raise AlgebraError("structure map does not go from base to total")
        self.rel_basis = [total.parse(x) if isinstance(x, str) else x for x in rel_basis]
        self.rank = len(self.rel_basis)
        self.names = tuple(names) if names is not None else tuple(str(x) for x in self.rel_basis)
        f = base.field
        m = base.dim
        if self.rank * m != total.dim:
            raise AlgebraError(
                f"rank {self.rank} times dim A = {m} does not match dim B = {total.dim}; not a free basis"
            )
        cols = []
        A_basis = base.basis()
        for x in self.rel_basis:
            for a in A_basis:
                cols.append((structure(a) * x).coords)
        M = linalg.transpose(cols) if cols else []
        try:
            self._coord_matrix = linalg.inverse(f, M) if M else []
        except ZeroDivisionError:
            raise AlgebraError("relative basis does not give a free A-basis of B") from None
        self._consts = None

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    def coords(self, b: AlgElement) -> list[AlgElement]:
        """The unique ``a_alpha`` in A with ``b = sum a_alpha x_alpha``."""
        self.total._own(b)
        m = self.base.dim
        flat = linalg.matvec(self.field, self._coord_matrix, b.coords)
        return [AlgElement(self.base, tuple(flat[i * m : (i + 1) * m])) for i in range(self.rank)]

    def from_coords(self, coeffs: Sequence[AlgElement]) -> AlgElement:
        out = self.total.zero()
        for a, x in zip(coeffs, self.rel_basis):
            out = out + self.structure(a) * x
        return out

    def embed(self, a: AlgElement) -> AlgElement:
        return self.structure(a)

    def rel_constants(self) -> list[list[list[AlgElement]]]:
        """``x_alpha x_beta = sum_gamma c[alpha][beta][gamma] x_gamma`` with c in A."""
        if self._consts is None:
            self._consts = [[self.coords(x * y) for y in self.rel_basis] for x in self.rel_basis]
        return self._consts

    def rel_mult_matrix(self, b: AlgElement) -> list[list[AlgElement]]:
        """A-matrix of multiplication by ``b`` on the relative basis."""
        cols = [self.coords(b * x) for x in self.rel_basis]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    # -- constructors --------------------------------------------------
    @classmethod
    def over_field(cls, B: FinAlgebra) -> "RelativeAlgebra":
        k = FinAlgebra.ground(B.field)
        return cls(k, B, AlgebraMap.structure(B), B.basis(), B.labels)

    @classmethod
    def from_constants(
        cls,
        base: FinAlgebra,
        consts: Sequence[Sequence[Sequence[AlgElement]]],
        unit: Sequence[AlgElement],
        names: Sequence[str] | None = None,
    ) -> "RelativeAlgebra":
        """Build ``B = A^r`` with ``x_a x_b = sum_c consts[a][b][c] x_c``.

        The k-basis of B is ``e_i x_alpha`` in alpha-major order.
        """
        f = base.field
        r = len(unit)
        m = base.dim
        names = list(names) if names is not None else [f"x{i}" for i in range(r)]
        Ab = base.basis()
        n = r * m
        total_consts = []
        for a in range(r):
            for i in range(m):
                row = []
                for b in range(r):
                    for j in range(m):
                        eij = Ab[i] * Ab[j]
                        v = [f.zero] * n
                        for c in range(r):
                            coeff = eij * consts[a][b][c]
                            for t, val in enumerate(coeff.coords):
                                v[c * m + t] = f.add(v[c * m + t], val)
                        row.append(v)
                total_consts.append(row)
        total_unit = []
        for a in range(r):
            total_unit.extend(unit[a].coords)
        labels = []
        for nm in names:
            for lab in base.labels:
                if lab == "1":
                    labels.append(nm)
                elif nm == "1":
                    labels.append(lab)
                else:
                    labels.append(f"{lab}*{nm}")
        B = FinAlgebra(f, total_consts, total_unit, labels)
        smat = []
        for idx in range(n):
            c, t = divmod(idx, m)
            smat.append([(unit[c] * Ab[i]).coords[t] for i in range(m)])
        s = AlgebraMap(base, B, smat)
        rel = []
        for c in range(r):
            v = [f.zero] * n
            v[c * m : (c + 1) * m] = base.unit
            rel.append(B.element(v))
        return cls(base, B, s, rel, names)

    @classmethod
    def from_presentation(
        cls,
        base: FinAlgebra,
        variables: Sequence[str],
        relations: Iterable,
        base_images: Sequence[str],
        rel_basis: Sequence[str],
        order: str = "grevlex",
    ) -> "RelativeAlgebra":
        """Total algebra presented over k; ``base_images`` are the images of A's variables."""
        B = FinAlgebra.from_presentation(variables, relations, base.field, order)
        if base.presentation is None and base.dim == 1 and not base_images:
            s = AlgebraMap(base, B, [[c] for c in B.unit], check=False)
        else:
            s = AlgebraMap.from_images(base, B, list(base_images))
        return cls(base, B, s, list(rel_basis), list(rel_basis))

    def base_change(self, u: AlgebraMap) -> "RelativeAlgebra":
        """``B (x)_A A'`` over ``A'`` with the same relative basis names."""
        if not u.source.same(self.base):
            raise AlgebraError("base change map must start at the base algebra")
        consts = [[[u(c) for c in row] for row in plane] for plane in self.rel_constants()]
        unit = [u(c) for c in self.coords(self.total.one())]
        return RelativeAlgebra.from_constants(u.target, consts, unit, self.names)

    def base_change_element(self, b: AlgElement, u: AlgebraMap, target: "RelativeAlgebra") -> AlgElement:
        return target.from_coords([u(a) for a in self.coords(b)])

    def same(self, other: "RelativeAlgebra") -> bool:
        return (
            self is other
            or (
                self.base.same(other.base)
                and self.total.same(other.total)
                and self.structure == other.structure
                and [x.coords for x in self.rel_basis] == [x.coords for x in other.rel_basis]
            )
        )

    def __repr__(self):
        return f"RelativeAlgebra(rank={self.rank}, dim A={self.base.dim}, dim B={self.total.dim}, basis={list(self.names)})"


def relative_product(B: RelativeAlgebra, C: RelativeAlgebra) -> tuple[RelativeAlgebra, AlgebraMap, AlgebraMap]:
    """``B x C`` over the common base with basis ``(x,0)`` then ``(0,y)``; also the projections."""
    if not B.base.same(C.base):
        raise AlgebraError("product of algebras over different bases")
    P = product_algebra(B.total, C.total)
    sm = [list(row) for row in B.structure.matrix] + [list(row) for row in C.structure.matrix]
    s = AlgebraMap(B.base, P, sm)
    f = B.field
    n = B.total.dim
    rel = [P.element(list(x.coords) + [f.zero] * C.total.dim) for x in B.rel_basis]
    rel += [P.element([f.zero] * n + list(y.coords)) for y in C.rel_basis]
    names = [f"({x},0)" for x in B.names] + [f"(0,{y})" for y in C.names]
    p1, p2 = product_projections(B.total, C.total, P)
    return RelativeAlgebra(B.base, P, s, rel, names), p1, p2


def norm_and_charpoly(rel: RelativeAlgebra, b: AlgElement) -> tuple[AlgElement, list[AlgElement]]:
    """Norm and characteristic polynomial (coefficients in A, constant first)."""
    M = rel.rel_mult_matrix(b)
    A = rel.base
    cp = berkowitz(M, A.zero(), A.one())
    N = cp[0] if rel.rank % 2 == 0 else -cp[0]
    return N, cp


def is_relative_map(u: AlgebraMap, src: RelativeAlgebra, dst: RelativeAlgebra) -> bool:
    """True if ``u`` is a map of A-algebras ``src.total -> dst.total``."""
    if not (src.base.same(dst.base) and u.source.same(src.total) and u.target.same(dst.total)):
        return False
    return u.compose(src.structure) == dst.structure


def presentation_relations(B: FinAlgebra) -> list[MultiPoly]:
    if B.presentation is None:
        raise AlgebraError("no presentation")
    return list(B.presentation[1].generators)
