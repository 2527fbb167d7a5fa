"""JSON documents for algebras, laws, maps and base changes.

Carrier document::

    {"field": {"char": 3},
     "vars": ["e", "d"], "relations": ["e^2", "d^2"],
     "relbase": {"algebra": {"vars": ["e"], "relations": ["e^2"]},
                 "images": ["e"], "basis": ["1", "d"]},
     "quotient": ["e*d"]}

``relbase`` is optional (default: the coefficient field, basis = standard
monomials).  ``quotient`` optionally presents a non-free carrier ``G/J``:
laws are then given on the free carrier ``G`` and must vanish on ``J``.

Law document::

    {"carrier": {...}, "degree": 2,
     "values": [{"nu": [2, 0], "coeff": ["1", "0"]}, ...]}

or ``"kind"`` in ``norm`` | ``frobenius`` (``"s"``) | ``points`` (``"homs"``:
images of the variables in A, one list per point) | ``generators``
(``"generators"``: ``[{"gamma": [...], "value": ...}]``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .divpow import GammaElement, GammaModule, gamma_module
from .exactfield import FieldSpec, QQ
from .finalg import AlgebraMap, AlgElement, FinAlgebra, Ideal, RelativeAlgebra
from .laws import (
    MultiplicativeLaw,
    QuotientLaw,
    frobenius_law,
    law_from_generator_values,
    law_from_values,
    norm_law,
    points_law,
)


class DocError(ValueError):
    """Malformed input document."""


def load(source: str) -> Any:
    """Parse a JSON string or read a JSON file."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        path = Path(source)
        if not path.exists():
            raise DocError(f"no such file: {source}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocError(f"invalid JSON: {exc}") from None


def dumps(doc: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2)


def _field(doc: dict, default: FieldSpec | None) -> FieldSpec:
    if "field" in doc:
        return FieldSpec.from_json(doc["field"])
    if default is None:
        raise DocError("missing field")
    return default


# ---------------------------------------------------------------------------
# carriers
# ---------------------------------------------------------------------------


@dataclass
class Carrier:
    """A free carrier ``G`` and optional relations presenting ``G/J``."""

    rel: RelativeAlgebra
    relations: list
    doc: dict

    @property
    def presented(self) -> bool:
        return bool(self.relations)


def algebra_from_doc(doc: dict, default_field: FieldSpec | None = None) -> FinAlgebra:
    k = _field(doc, default_field)
    try:
        return FinAlgebra.from_presentation(list(doc.get("vars", [])), list(doc.get("relations", [])), k)
    except KeyError as exc:
        raise DocError(f"missing key {exc}") from None


def carrier_from_doc(doc: dict, default_field: FieldSpec | None = None) -> Carrier:
    if not isinstance(doc, dict) or "vars" not in doc:
        raise DocError("carrier document needs 'vars'")
    k = _field(doc, default_field)
    rb = doc.get("relbase")
    if rb and "algebra" in rb:
        A = algebra_from_doc(rb["algebra"], k)
        rel = RelativeAlgebra.from_presentation(
            A, doc["vars"], doc.get("relations", []), rb.get("images", []), rb["basis"]
        )
    else:
        B = FinAlgebra.from_presentation(doc["vars"], doc.get("relations", []), k)
        basis = (rb or {}).get("basis") or list(B.labels)
        K = FinAlgebra.ground(k)
        rel = RelativeAlgebra(K, B, AlgebraMap.structure(B), [B.parse(x) for x in basis], basis)
    rels = [rel.total.parse(r) for r in doc.get("quotient", [])]
    return Carrier(rel, rels, doc)


def element_to_doc(x: AlgElement) -> list[str]:
    return [str(c) for c in x.coords]


def element_from_doc(A: FinAlgebra, v) -> AlgElement:
    if isinstance(v, str):
        if A.presentation is None:
            try:
                return A.scalar(A.field(v.strip()))
            except (ValueError, ZeroDivisionError):
                raise DocError(f"cannot read {v!r} as a scalar") from None
        return A.parse(v)
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return A.scalar(int(v))
    if isinstance(v, list):
        if len(v) != A.dim:
            raise DocError(f"coordinate vector of length {len(v)} for an algebra of dimension {A.dim}")
        return A.element([A.field(str(c)) for c in v])
    raise DocError(f"cannot read an algebra element from {v!r}")


# ---------------------------------------------------------------------------
# gamma elements
# ---------------------------------------------------------------------------


def gamma_to_doc(u: GammaElement) -> list[dict]:
    return [{"nu": list(nu), "coeff": element_to_doc(a)} for nu, a in u.terms()]


def gamma_from_doc(carrier: RelativeAlgebra, terms: list, degree: int | None = None) -> GammaElement:
    if not isinstance(terms, list):
        raise DocError("a gamma element is a list of {nu, coeff} terms")
    if not terms and degree is None:
        raise DocError("cannot infer the degree of an empty gamma element")
    coeffs = {}
    d = degree
    for t in terms:
        nu = tuple(int(x) for x in t["nu"])
        if len(nu) != carrier.rank:
            raise DocError(f"index {list(nu)} has the wrong length for rank {carrier.rank}")
        if d is None:
            d = sum(nu)
        if sum(nu) != d or min(nu, default=0) < 0:
            raise DocError(f"index {list(nu)} is not of degree {d}")
        a = element_from_doc(carrier.base, t.get("coeff", 1))
        coeffs[nu] = coeffs[nu] + a if nu in coeffs else a
    M: GammaModule = gamma_module(carrier, d)
    return GammaElement(M, coeffs)


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------


def law_from_doc(doc: dict, default_field: FieldSpec | None = None):
    """Returns a MultiplicativeLaw, or a QuotientLaw for presented carriers."""
    if "carrier" not in doc:
        raise DocError("law document needs a 'carrier'")
    car = carrier_from_doc(doc["carrier"], default_field)
    C = car.rel
    A = C.base
    kind = doc.get("kind", "values")
    if kind == "values":
        d = int(doc["degree"])
        vals = {nu: A.zero() for nu in gamma_module(C, d).basis}
        for t in doc.get("values", []):
            nu = tuple(int(x) for x in t["nu"])
            if nu not in vals:
                raise DocError(f"{list(nu)} is not a gamma index of degree {d}")
            vals[nu] = element_from_doc(A, t["coeff"])
        law = law_from_values(C, d, vals)
    elif kind == "norm":
        law = norm_law(C)
    elif kind == "frobenius":
        if C.rank != 1:
            raise DocError("the Frobenius law lives on B = A (rank 1)")
        law = frobenius_law(A, int(doc.get("s", 1)))
    elif kind == "points":
        homs = [
            AlgebraMap.from_images(C.total, A, [element_from_doc(A, x) for x in imgs]) for imgs in doc["homs"]
        ]
        law = points_law(C, homs)
    elif kind == "generators":
        d = int(doc["degree"])
        assignments = [
            (gamma_from_doc(C, g["gamma"], d), element_from_doc(A, g["value"])) for g in doc["generators"]
        ]
        law = law_from_generator_values(C, d, assignments, car.relations)
    else:
        raise DocError(f"unknown law kind {kind!r}")
    if car.presented:
        return QuotientLaw(law, car.relations), car
    return law, car


def law_to_doc(law: MultiplicativeLaw, carrier_doc: dict) -> dict:
    return {
        "carrier": carrier_doc,
        "degree": law.degree,
        "values": [{"nu": list(nu), "coeff": element_to_doc(a)} for nu, a in law.values.items()],
    }


def ideal_to_doc(I: Ideal) -> dict:
    return {
        "dim": I.dim,
        "codim": I.codim,
        "basis": I.to_json(),
        "elements": [str(b) for b in I.basis()],
    }


# ---------------------------------------------------------------------------
# maps and base changes
# ---------------------------------------------------------------------------


def map_from_doc(doc: dict, target: RelativeAlgebra, default_field: FieldSpec | None = None):
    """``{"source": <carrier doc>, "images": [...]}`` -> (Carrier, AlgebraMap to the target cover)."""
    if "source" not in doc or "images" not in doc:
        raise DocError("map document needs 'source' and 'images'")
    src = carrier_from_doc(doc["source"], default_field or target.field)
    u = AlgebraMap.from_images(src.rel.total, target.total, [element_from_doc(target.total, x) for x in doc["images"]])
    return src, u


def base_change_from_doc(doc: dict, base: FinAlgebra) -> AlgebraMap:
    """``{"algebra": {...}, "images": [...images of A's variables...]}``."""
    if "algebra" not in doc:
        raise DocError("base change document needs 'algebra'")
    Ap = algebra_from_doc(doc["algebra"], base.field)
    images = doc.get("images", [])
    if base.presentation is None:
        if images:
            raise DocError("the base is the coefficient field; no images expected")
        return AlgebraMap.structure(Ap)
    return AlgebraMap.from_images(base, Ap, [element_from_doc(Ap, x) for x in images])
