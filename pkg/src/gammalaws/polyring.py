"""Multivariate polynomials over Q / F_p, Buchberger's algorithm and normal forms.

This is the constructor pipeline for finite-dimensional algebras: a
presentation ``k[x_1..x_n]/(relations)`` is turned into a reduced Groebner
basis, whose standard monomials give a vector-space basis of the quotient.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactfield import FieldSpec

Monomial = tuple  # exponent vector, one entry per ring variable


class InfiniteDimensional(ValueError):
    """The quotient by the ideal is not finite-dimensional."""


class PolyParseError(ValueError):
    pass


def _key_lex(m):
    return m


def _key_grlex(m):
    return (sum(m), m)


def _key_grevlex(m):
    return (sum(m), tuple(-e for e in reversed(m)))


ORDERS: dict[str, Callable] = {"lex": _key_lex, "grlex": _key_grlex, "grevlex": _key_grevlex}


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    variables: tuple
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not str(v).isidentifier():
                raise ValueError(f"variable name {v!r} is not an identifier")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self) -> Callable:
        return ORDERS[self.order]

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        return MultiPoly(self, {self.one_monomial(): self.field(c)})

    def var(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        m = [0] * self.nvars
        m[i] = 1
        return MultiPoly(self, {tuple(m): self.field.one})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, m: Monomial, c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(m): self.field(c)})

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(self, text)

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for v, e in zip(self.variables, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


class MultiPoly:
    """Sparse polynomial: dict monomial -> nonzero raw coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = f.add(out.get(m, f.zero), c)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = f.add(out.get(m, f.zero), f.mul(c1, c2))
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        f = self.field
        c = f(c)
        return MultiPoly(self.ring, {m: f.mul(c, a) for m, a in self.terms.items()})

    def mul_term(self, m: Monomial, c) -> "MultiPoly":
        f = self.field
        return MultiPoly(self.ring, {mono_mul(m, mm): f.mul(c, a) for mm, a in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=descending)

    def lm(self) -> Monomial:
        return max(self.terms, key=self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.lc()))

    def constant_term(self):
        return self.terms.get(self.ring.one_monomial(), self.field.zero)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def evaluate(self, values: Sequence, one, scale: Callable):
        """Substitute ``values[i]`` for the i-th variable.

        ``values`` live in any commutative ring with ``+`` and ``*``; ``one`` is
        its unit and ``scale(c, x)`` multiplies by a raw field value.
        """
        total = None
        for m, c in self.sorted_terms():
            t = one
            for v, e in zip(values, m):
                for _ in range(e):
                    t = t * v
            t = scale(c, t)
            total = t if total is None else total + t
        return scale(self.field.zero, one) if total is None else total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = self.field.char == 0 and c < 0
            a = -c if neg else c
            ms = self.ring.mono_str(m)
            if ms == "1":
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({self}, {self.ring.field})"


# -- parsing ------------------------------------------------------------


def parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    """Parse an ASCII expression with ``+ - * ^`` and integer literals.

    ``/`` is accepted only with a constant denominator.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise PolyParseError(f"cannot parse {text!r}: {e.msg}") from None
    return _eval_node(ring, tree.body, text)


def _eval_node(ring: PolyRing, node, text):
    if isinstance(node, ast.BinOp):
        left = _eval_node(ring, node.left, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise PolyParseError(f"exponent must be an integer literal in {text!r}")
            return left ** node.right.value
        right = _eval_node(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise PolyParseError(f"division by a non-constant in {text!r}")
            return left.scale(ring.field.inv(right.constant_term()))
        raise PolyParseError(f"unsupported operator in {text!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(ring, node.operand, text)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise PolyParseError(f"unsupported unary operator in {text!r}")
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        if node.id not in ring.variables:
            raise PolyParseError(f"unknown variable {node.id!r} in {text!r}")
        return ring.var(node.id)
    raise PolyParseError(f"unsupported syntax in {text!r}")


# -- Groebner bases ------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    generators: tuple

    def leading_monomials(self) -> list[Monomial]:
        return [g.lm() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)


def reduce_full(p: MultiPoly, divisors: Sequence[MultiPoly]) -> MultiPoly:
    """Remainder of ``p`` with no term divisible by a leading monomial of ``divisors``."""
    f = p.field
    key = p.ring.key
    lead = [(g.lm(), g.lc(), g) for g in divisors if not g.is_zero()]
    work = dict(p.terms)
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, g in lead:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = f.div(c, lc)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    mm = mono_mul(gm, q)
                    val = f.sub(work.get(mm, f.zero), f.mul(factor, gc))
                    if val == 0:
                        work.pop(mm, None)
                    else:
                        work[mm] = val
                break
        else:
            rem[m] = c
    return MultiPoly(p.ring, rem)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    lf, lg = f.lm(), g.lm()
    L = mono_lcm(lf, lg)
    fld = f.field
    return f.mul_term(mono_div(L, lf), fld.inv(f.lc())) - g.mul_term(mono_div(L, lg), fld.inv(g.lc()))


def _gm_update(polys, G: list, B: list, h: int):
    """Gebauer-Moeller installation of the new basis element ``polys[h]``."""
    lm = [None if p is None else p.lm() for p in polys]
    lh = lm[h]
    C = [g for g in G]
    D = []
    while C:
        g1 = C.pop()
        L1 = mono_lcm(lh, lm[g1])
        if mono_coprime(lh, lm[g1]) or not any(
            mono_divides(mono_lcm(lh, lm[g2]), L1) for g2 in C + D
        ):
            D.append(g1)
    E = [g for g in D if not mono_coprime(lh, lm[g])]
    Bnew = []
    for g1, g2 in B:
        L = mono_lcm(lm[g1], lm[g2])
        if (
            mono_divides(lh, L)
            and mono_lcm(lm[g1], lh) != L
            and mono_lcm(lh, lm[g2]) != L
        ):
            continue
        Bnew.append((g1, g2))
    Bnew.extend((g, h) for g in E)
    Gnew = [g for g in G if not mono_divides(lh, lm[g])]
    Gnew.append(h)
    return Gnew, Bnew


def buchberger(generators: Iterable[MultiPoly], ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    polys: list = []
    G: list = []
    B: list = []
    for g in gens:
        r = reduce_full(g, [polys[i] for i in G])
        if r.is_zero():
            continue
        polys.append(r.monic())
        G, B = _gm_update(polys, G, B, len(polys) - 1)
    key = ring.key
    while B:
        B.sort(key=lambda pr: key(mono_lcm(polys[pr[0]].lm(), polys[pr[1]].lm())))
        i, j = B.pop(0)
        s = s_polynomial(polys[i], polys[j])
        r = reduce_full(s, [polys[k] for k in G])
        if r.is_zero():
            continue
        polys.append(r.monic())
        G, B = _gm_update(polys, G, B, len(polys) - 1)
    return GroebnerBasis(ring, tuple(_interreduce([polys[k] for k in G])))


def _interreduce(G: list[MultiPoly]) -> list[MultiPoly]:
    # drop elements whose lead is divisible by another lead, then fully reduce
    G = sorted(G, key=lambda g: g.ring.key(g.lm()))
    minimal = []
    for g in G:
        if not any(mono_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        out.append(reduce_full(g, others).monic())
    return sorted(out, key=lambda g: g.ring.key(g.lm()))


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return reduce_full(p, gb.generators)


def quotient_basis(gb: GroebnerBasis) -> list[Monomial]:
    """Standard monomials of the quotient, ascending in the monomial order."""
    ring = gb.ring
    if gb.is_unit_ideal():
        return []
    lms = gb.leading_monomials()
    bounds = []
    for i in range(ring.nvars):
        pure = [m[i] for m in lms if m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise InfiniteDimensional(f"no pure power of {ring.variables[i]} among leading monomials")
        bounds.append(min(pure))
    std = [
        m
        for m in itertools.product(*[range(b) for b in bounds])
        if not any(mono_divides(lm, m) for lm in lms)
    ]
    return sorted(std, key=ring.key)


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    return [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]


def as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)
