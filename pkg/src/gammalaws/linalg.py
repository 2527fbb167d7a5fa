"""Dense exact linear algebra over a ``FieldSpec``.

Vectors are tuples of raw field values, matrices are lists of rows.  Nothing
here is clever; dimensions in this package stay in the low hundreds.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exactfield import FieldSpec

Vec = tuple
Matrix = list


def zero_vec(field: FieldSpec, n: int) -> Vec:
    return (field.zero,) * n


def unit_vec(field: FieldSpec, n: int, i: int) -> Vec:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vadd(field: FieldSpec, u: Sequence, v: Sequence) -> Vec:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vsub(field: FieldSpec, u: Sequence, v: Sequence) -> Vec:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vscale(field: FieldSpec, c, v: Sequence) -> Vec:
    return tuple(field.mul(c, a) for a in v)


def is_zero_vec(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def lincomb(field: FieldSpec, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vec:
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a != 0:
                out[i] = field.add(out[i], field.mul(c, a))
    return tuple(out)


def matvec(field: FieldSpec, M: Matrix, v: Sequence) -> Vec:
    out = []
    for row in M:
        s = field.zero
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                s = field.add(s, field.mul(a, b))
        out.append(s)
    return tuple(out)


def matmul(field: FieldSpec, M: Matrix, N: Matrix) -> Matrix:
    cols = list(zip(*N)) if N else []
    return [[_dot(field, row, col) for col in cols] for row in M]


def _dot(field, u, v):
    s = field.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            s = field.add(s, field.mul(a, b))
    return s


def transpose(M: Matrix) -> Matrix:
    return [list(c) for c in zip(*M)]


def identity(field: FieldSpec, n: int) -> Matrix:
    return [list(unit_vec(field, n, i)) for i in range(n)]


def rref(field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field.mul(inv, a) for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(field: FieldSpec, rows: Iterable[Sequence]) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: FieldSpec, M: Matrix, ncols: int) -> list[Vec]:
    """Basis of ``{x : M x = 0}`` for an ``m x ncols`` matrix ``M``."""
    R, pivots = rref(field, M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for row, pc in zip(R, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(tuple(x))
    return basis


def solve(field: FieldSpec, M: Matrix, b: Sequence, ncols: int):
    """One solution of ``M x = b`` or ``None``."""
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(field, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def inverse(field: FieldSpec, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(row) + list(unit_vec(field, n, i)) for i, row in enumerate(M)]
    R, pivots = rref(field, aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [list(row[n:]) for row in R]


def det(field: FieldSpec, M: Matrix):
    n = len(M)
    A = [list(r) for r in M]
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = field.neg(d)
        d = field.mul(d, A[c][c])
        inv = field.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = field.mul(A[i][c], inv)
                A[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(A[i], A[c])]
    return d


class Subspace:
    """A subspace of ``field^n`` kept in canonical RREF (pivot-ascending rows).

    Equality is equality of subspaces.
    """

    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        vs = [tuple(v) for v in vectors]
        for v in vs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        self.basis, self.pivots = rref(field, vs, n) if vs else ([], [])

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, [unit_vec(field, n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vec:
        """Remainder of ``v`` after clearing the pivot columns."""
        f = self.field
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c != 0:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def coordinates(self, v: Sequence) -> Vec:
        """Coordinates of ``v`` in ``self.basis``; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[pc] for pc in self.pivots)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(self.basis)))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.n, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        # x in self with x in other: solve sum a_i u_i - sum b_j w_j = 0
        f = self.field
        k = self.dim
        cols = list(self.basis) + [vscale(f, f.neg(f.one), w) for w in other.basis]
        if not cols:
            return Subspace(f, self.n)
        M = transpose([list(c) for c in cols])
        sols = nullspace(f, M, len(cols))
        return Subspace(f, self.n, [lincomb(f, s[:k], self.basis, self.n) for s in sols])

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        return [i for i in range(self.n) if i not in self.pivots]

    def is_zero(self) -> bool:
        return not self.basis

    def elements(self):
        """Enumerate every vector (finite fields only)."""
        import itertools

        f = self.field
        for cs in itertools.product(f.elements(), repeat=self.dim):
            yield lincomb(f, cs, self.basis, self.n)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={[list(map(str, b)) for b in self.basis]})"
