import json
from pathlib import Path

import pytest

from gammalaws import docs
from gammalaws.exactfield import GF
from gammalaws.laws import MultiplicativeLaw, QuotientLaw, kernel

DATA = Path(__file__).resolve().parents[1] / "data"


def test_load_rejects_garbage(tmp_path):
    with pytest.raises(docs.DocError):
        docs.load("{not json")
    with pytest.raises(docs.DocError):
        docs.load(str(tmp_path / "missing.json"))


def test_dumps_is_canonical():
    assert docs.dumps({"b": 1, "a": [1, 2]}, compact=True) == '{"a":[1,2],"b":1}'


def test_carrier_defaults():
    car = docs.carrier_from_doc({"field": {"char": 5}, "vars": ["x"], "relations": ["x^3"]})
    assert car.rel.rank == 3 and car.rel.base.dim == 1 and not car.presented


def test_missing_field():
    with pytest.raises(docs.DocError):
        docs.carrier_from_doc({"vars": ["x"], "relations": ["x^2"]})
    car = docs.carrier_from_doc({"vars": ["x"], "relations": ["x^2"]}, GF(2))
    assert car.rel.field == GF(2)


@pytest.mark.parametrize("name", ["example_i.json", "example_ii.json", "frobenius.json", "norm_f4.json", "double_point.json"])
def test_sample_documents_load(name):
    law, car = docs.law_from_doc(docs.load(str(DATA / name)))
    assert isinstance(law, (MultiplicativeLaw, QuotientLaw))
    assert car.presented == isinstance(law, QuotientLaw)


def test_law_round_trip():
    law, car = docs.law_from_doc(docs.load(str(DATA / "norm_f4.json")))
    doc = json.loads(docs.dumps(docs.law_to_doc(law, car.doc)))
    again, _ = docs.law_from_doc(doc)
    assert again.same_table(law)
    assert kernel(again) == kernel(law)


def test_gamma_round_trip():
    car = docs.carrier_from_doc(docs.load(str(DATA / "gamma_carrier.json")))
    u = docs.gamma_from_doc(car.rel, [{"nu": [1, 1], "coeff": "3/2"}, {"nu": [0, 2]}])
    assert docs.gamma_from_doc(car.rel, docs.gamma_to_doc(u)) == u


@pytest.mark.parametrize(
    "terms",
    [[{"nu": [1, 1, 0]}], [{"nu": [2, 0]}, {"nu": [1, 0]}], [{"nu": [-1, 3]}], "nope"],
)
def test_bad_gamma_terms(terms):
    car = docs.carrier_from_doc(docs.load(str(DATA / "gamma_carrier.json")))
    with pytest.raises(docs.DocError):
        docs.gamma_from_doc(car.rel, terms)


def test_generator_document_reproduces_table():
    law, _ = docs.law_from_doc(docs.load(str(DATA / "example_ii.json")))
    vals = {nu: str(v) for nu, v in law.cover.values.items() if not v.is_zero()}
    # gamma^2(1) -> 1, 1 x (d t) -> 2e, d x t -> -2e = e
    assert vals == {(2, 0, 0, 0): "1", (1, 0, 0, 1): "2*e", (0, 1, 1, 0): "e"}


def test_unknown_kind():
    doc = {"carrier": {"field": {"char": 2}, "vars": [], "relations": []}, "kind": "mystery"}
    with pytest.raises(docs.DocError):
        docs.law_from_doc(doc)
