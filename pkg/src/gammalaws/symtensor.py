"""Symmetric tensors TS^d_A(B) and the comparison maps with Gamma^d_A(B).

``phi`` sends ``gamma^nu`` to the sum of the distinct words in the
``S_d``-orbit of ``nu``; ``psi`` sends a word to the shuffle product of its
letters.  ``psi . phi`` is multiplication by ``d!`` on Gamma^d.
"""

from __future__ import annotations

import itertools
from math import factorial, prod
from typing import Sequence

from . import linalg
from .divpow import GammaElement, GammaModule, gamma_module
from .finalg import AlgElement, FinAlgebra, RelativeAlgebra
from .linalg import Subspace

Word = tuple


def words(r: int, d: int) -> list[Word]:
    return list(itertools.product(range(r), repeat=d))


def content(w: Word, r: int) -> tuple:
    """The multi-index counting the letters of ``w``."""
    nu = [0] * r
    for a in w:
        nu[a] += 1
    return tuple(nu)


def orbit(nu: Sequence[int]) -> list[Word]:
    """Distinct words with ``nu[alpha]`` copies of ``alpha`` (sorted)."""
    letters = [a for a, e in enumerate(nu) for _ in range(e)]
    return sorted(set(itertools.permutations(letters)))


def orbit_size(nu: Sequence[int]) -> int:
    return factorial(sum(nu)) // prod(factorial(e) for e in nu)


class TensorElement:
    """Element of T^d_A(B) = B^{(x)d}: dict ``word -> A``."""

    __slots__ = ("carrier", "d", "coeffs")

    def __init__(self, carrier: RelativeAlgebra, d: int, coeffs: dict):
        self.carrier = carrier
        self.d = d
        self.coeffs = {tuple(w): a for w, a in coeffs.items() if not a.is_zero()}

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.coeffs)
        for w, a in other.coeffs.items():
            out[w] = out[w] + a if w in out else a
        return TensorElement(self.carrier, self.d, out)

    def __sub__(self, other):
        return self + other.scale(self.carrier.field(-1))

    def scale(self, c) -> "TensorElement":
        if isinstance(c, AlgElement):
            return TensorElement(self.carrier, self.d, {w: c * a for w, a in self.coeffs.items()})
        return TensorElement(self.carrier, self.d, {w: a.scale(c) for w, a in self.coeffs.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Componentwise product of pure tensors, extended A-bilinearly."""
        if other.d != self.d:
            raise ValueError("tensor degrees differ")
        consts = self.carrier.rel_constants()
        r = self.carrier.rank
        out: dict = {}
        for w, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                # letter i becomes x_{w_i} x_{v_i} = sum_c consts[w_i][v_i][c] x_c
                factors = [consts[x][y] for x, y in zip(w, v)]
                for word in itertools.product(range(r), repeat=self.d):
                    c = a * b
                    for i, letter in enumerate(word):
                        c = c * factors[i][letter]
                        if c.is_zero():
                            break
                    if not c.is_zero():
                        out[word] = out[word] + c if word in out else c
        return TensorElement(self.carrier, self.d, out)

    def permute(self, sigma: Sequence[int]) -> "TensorElement":
        """Move the letter in position ``i`` to position ``sigma[i]``."""
        out = {}
        for w, a in self.coeffs.items():
            nw = [0] * self.d
            for i, s in enumerate(sigma):
                nw[s] = w[i]
            out[tuple(nw)] = a
        return TensorElement(self.carrier, self.d, out)

    def is_symmetric(self) -> bool:
        if self.d < 2:
            return True
        for i in range(self.d - 1):
            sigma = list(range(self.d))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            if self.permute(sigma) != self:
                return False
        return True

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.d == other.d
            and self.coeffs.keys() == other.coeffs.keys()
            and all(self.coeffs[w] == other.coeffs[w] for w in self.coeffs)
        )

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.carrier.names
        return " + ".join(
            f"({a})*" + "(x)".join(names[x] for x in w) for w, a in sorted(self.coeffs.items())
        )

    __repr__ = __str__


def pure_tensor(carrier: RelativeAlgebra, letters: Sequence[AlgElement]) -> TensorElement:
    """``b_1 (x) ... (x) b_d`` expanded in the word basis."""
    coords = [carrier.coords(b) for b in letters]
    out: dict = {}
    for word in itertools.product(range(carrier.rank), repeat=len(letters)):
        c = carrier.base.one()
        for i, a in enumerate(word):
            c = c * coords[i][a]
        if not c.is_zero():
            out[word] = c
    return TensorElement(carrier, len(letters), out)


def phi(u: GammaElement) -> TensorElement:
    out = {}
    for nu, a in u.coeffs.items():
        for w in orbit(nu):
            out[w] = a
    return TensorElement(u.parent.carrier, u.degree, out)


def psi(t: TensorElement) -> GammaElement:
    """Each word ``x_{w_1} (x) ... (x) x_{w_d}`` goes to ``prod nu_alpha! gamma^nu``."""
    M = gamma_module(t.carrier, t.d)
    f = t.carrier.field
    out: dict = {}
    for w, a in t.coeffs.items():
        nu = content(w, t.carrier.rank)
        term = a.scale(f(prod(factorial(e) for e in nu)))
        out[nu] = out[nu] + term if nu in out else term
    return GammaElement(M, out)


def ts_shuffle(u: TensorElement, v: TensorElement) -> TensorElement:
    """Sum over (d, e)-shuffles of ``u (x) v``."""
    d, e = u.d, v.d
    out: dict = {}
    positions = list(itertools.combinations(range(d + e), d))
    for w1, a in u.coeffs.items():
        for w2, b in v.coeffs.items():
            ab = a * b
            for S in positions:
                word = [0] * (d + e)
                it1, it2 = iter(w1), iter(w2)
                Sset = set(S)
                for i in range(d + e):
                    word[i] = next(it1) if i in Sset else next(it2)
                key = tuple(word)
                out[key] = out[key] + ab if key in out else ab
    return TensorElement(u.carrier, d + e, out)


def orbit_coordinates(t: TensorElement) -> dict:
    """Coordinates of a symmetric tensor in the orbit-sum basis."""
    if not t.is_symmetric():
        raise ValueError("tensor is not symmetric")
    out = {}
    for w, a in t.coeffs.items():
        if list(w) == sorted(w):
            out[content(w, t.carrier.rank)] = a
    return out


def psi_phi_is_factorial(M: GammaModule) -> bool:
    """``psi(phi(g)) == d! g`` on every basis element."""
    df = M.carrier.field(factorial(M.d))
    return all(psi(phi(g)) == g.scale(df) for g in M.basis_elements())


def phi_psi_is_factorial(carrier: RelativeAlgebra, d: int) -> bool:
    """``phi(psi(t)) == d! t`` on the orbit-sum basis of TS^d."""
    M = gamma_module(carrier, d)
    df = carrier.field(factorial(d))
    one = carrier.base.one()
    for nu in M.basis:
        t = TensorElement(carrier, d, {w: one for w in orbit(nu)})
        if phi(psi(t)) != t.scale(df):
            return False
    return True


# -- k-linear computations ------------------------------------------------------------


def invariant_subspace(carrier: RelativeAlgebra, d: int) -> tuple[Subspace, list[Word]]:
    """TS^d inside T^d computed as the joint kernel of ``sigma - 1`` for adjacent transpositions.

    Coordinates are flattened as ``(word, i)`` for the k-basis ``a_i`` of A.
    """
    f = carrier.field
    m = carrier.base.dim
    W = words(carrier.rank, d)
    pos = {w: i for i, w in enumerate(W)}
    n = len(W) * m
    rows = []
    for i in range(d - 1):
        for j, w in enumerate(W):
            sw = list(w)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            k = pos[tuple(sw)]
            if k == j:
                continue
            for t in range(m):
                row = [f.zero] * n
                row[j * m + t] = f.one
                row[k * m + t] = f.neg(f.one)
                rows.append(row)
    basis = linalg.nullspace(f, rows, n) if rows else [linalg.unit_vec(f, n, i) for i in range(n)]
    return Subspace(f, n, basis), W


def flatten_tensor(t: TensorElement, W: list[Word]) -> tuple:
    f = t.carrier.field
    m = t.carrier.base.dim
    pos = {w: i for i, w in enumerate(W)}
    out = [f.zero] * (len(W) * m)
    for w, a in t.coeffs.items():
        out[pos[w] * m : (pos[w] + 1) * m] = a.coords
    return tuple(out)


def flat_iso_check(carrier: RelativeAlgebra, d: int) -> dict:
    """For B free over A: is phi an isomorphism onto the independently computed TS^d?

    Returns a report with the dimensions and the rank of phi.
    """
    M = gamma_module(carrier, d)
    TS, W = invariant_subspace(carrier, d)
    images = [flatten_tensor(phi(g), W) for g in M.k_basis()]
    inside = all(TS.contains(v) for v in images)
    rk = linalg.rank(carrier.field, images) if images else 0
    return {
        "gamma_dim": M.kdim,
        "ts_dim": TS.dim,
        "phi_rank": rk,
        "image_symmetric": inside,
        "iso": inside and rk == M.kdim == TS.dim,
    }


class ModuleOver:
    """A finite-dimensional A-module: a k-space with action matrices for A's basis."""

    def __init__(self, base: FinAlgebra, dim: int, action: list[list[list]]):
        self.base = base
        self.dim = dim
        self.action = action  # action[i] = matrix of the i-th basis element of A

    @classmethod
    def quotient_of(cls, rel: RelativeAlgebra, space: Subspace) -> tuple["ModuleOver", list[int]]:
        """``B/R`` as an A-module for an A-submodule ``R`` of ``B`` (given as k-subspace)."""
        B = rel.total
        keep = space.complement_indices()
        f = B.field
        acts = []
        for a in rel.base.basis():
            sa = rel.embed(a)
            mat = [[f.zero] * len(keep) for _ in keep]
            for j, idx in enumerate(keep):
                img = space.reduce((sa * B.basis()[idx]).coords)
                for i, kidx in enumerate(keep):
                    mat[i][j] = img[kidx]
            acts.append(mat)
        return cls(rel.base, len(keep), acts), keep


def tensor_square_over_base(Mod: ModuleOver) -> tuple[Subspace, int]:
    """Relations of ``M (x)_A M`` inside ``M (x)_k M`` (index ``s*n + t``)."""
    f = Mod.base.field
    n = Mod.dim
    N = n * n
    rels = []
    for act in Mod.action:
        for s in range(n):
            for t in range(n):
                v = [f.zero] * N
                # (a m_s) (x) m_t - m_s (x) (a m_t)
                for i in range(n):
                    c = act[i][s]
                    if c != 0:
                        v[i * n + t] = f.add(v[i * n + t], c)
                    c = act[i][t]
                    if c != 0:
                        v[s * n + i] = f.sub(v[s * n + i], c)
                rels.append(v)
    return Subspace(f, N, rels), N


def symmetric_square_invariants(Mod: ModuleOver) -> tuple[Subspace, Subspace, int]:
    """TS^2_A(M) = (M (x)_A M)^{S_2}; returns ``(relations, invariant lifts, ambient dim)``.

    Invariant lifts span (in ``M (x)_k M``) the preimage of the invariants of
    the quotient, so ``dim TS^2 = lifts.dim - relations.dim``.
    """
    f = Mod.base.field
    n = Mod.dim
    rel, N = tensor_square_over_base(Mod)
    # v with swap(v) - v in rel
    rows_src = []
    for idx in range(N):
        s, t = divmod(idx, n)
        v = [f.zero] * N
        v[t * n + s] = f.add(v[t * n + s], f.one)
        v[idx] = f.sub(v[idx], f.one)
        rows_src.append(rel.reduce(v))
    keep = rel.complement_indices()
    M = [[rows_src[j][k] for j in range(N)] for k in keep]
    lifts = linalg.nullspace(f, M, N) if M else [linalg.unit_vec(f, N, i) for i in range(N)]
    return rel, Subspace(f, N, lifts) + rel, N


def nonflat_counterexample() -> dict:
    """A = F_2[e]/e^2, B = A/(e): Gamma^2_A(B) and TS^2_A(B) differ.

    Gamma^2 comes from the presentation route over G = A; TS^2 from the tensor
    square over A followed by S_2-invariants; phi is computed on lifts.
    """
    from .divpow import gamma_of_quotient_via_presentation
    from .exactfield import GF

    k = GF(2)
    A = FinAlgebra.from_presentation(["e"], ["e^2"], k)
    G = RelativeAlgebra.from_constants(A, [[[A.one()]]], [A.one()], ["1"])
    eps = G.embed(A.parse("e"))
    pres = gamma_of_quotient_via_presentation(G, [eps], 2)
    gamma_dim = pres.kdim

    R = G.total.ideal([eps])
    Mod, keep = ModuleOver.quotient_of(G, R)
    rel, inv_lifts, N = symmetric_square_invariants(Mod)
    ts_dim = inv_lifts.dim - rel.dim

    # phi: Gamma^2(G) -> G (x)_A G -> B (x)_A B, then read off modulo the relations
    gam = pres.gamma
    n = Mod.dim
    images = []
    for x in gam.k_basis():
        t = phi(GammaElement(gam, x.coeffs))
        v = [k.zero] * N
        for w, a in t.coeffs.items():
            # letters live in G = A (rank 1); the coefficient a in A acts on the first factor
            pure = [G.embed(a) * G.rel_basis[w[0]], G.rel_basis[w[1]]]
            classes = [R.reduce(p.coords) for p in pure]
            c1 = [classes[0][i] for i in keep]
            c2 = [classes[1][i] for i in keep]
            for s in range(n):
                for t2 in range(n):
                    v[s * n + t2] = k.add(v[s * n + t2], k.mul(c1[s], c2[t2]))
        images.append(rel.reduce(v))
    # phi kills I, so its rank on Gamma^2(B) equals its rank on Gamma^2(G)
    phi_rank = linalg.rank(k, images)
    return {
        "gamma_dim": gamma_dim,
        "ts_dim": ts_dim,
        "phi_rank": phi_rank,
        "phi_injective": phi_rank == gamma_dim,
    }
