import json
import subprocess
import sys
from pathlib import Path

import pytest

from gammalaws.cli import EXIT_FIXTURE, EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, main

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == EXIT_OK, err
    return json.loads(out)


def test_gamma_basis(capsys):
    doc = run_json(capsys, "gamma", "basis", "--rank", 2, "--degree", 2)
    assert doc["indices"] == [[2, 0], [1, 1], [0, 2]]


def test_gamma_mul(capsys):
    u = json.dumps([{"nu": [1, 1], "coeff": "1"}])
    doc = run_json(capsys, "gamma", "mul", DATA / "gamma_carrier.json", "--u", u, "--v", u)
    assert doc["product"] == [{"nu": [0, 2], "coeff": ["2"]}]


def test_gamma_shuffle_and_rho(capsys):
    u = json.dumps([{"nu": [1, 0]}])
    doc = run_json(capsys, "gamma", "shuffle", DATA / "gamma_carrier.json", "--u", u, "--v", u)
    assert doc == {"degree": 2, "product": [{"nu": [2, 0], "coeff": ["2"]}]}
    doc = run_json(capsys, "gamma", "rho", DATA / "gamma_carrier.json", "--d", 1, "--e", 1, "--u", json.dumps([{"nu": [2, 0]}]))
    assert doc["terms"] == [{"left": [1, 0], "right": [1, 0], "coeff": ["1"]}]


def test_gamma_quotient(capsys):
    car = {"field": {"char": 3}, "vars": ["x"], "relations": ["x^3"], "quotient": ["x^2"]}
    doc = run_json(capsys, "gamma", "quotient", json.dumps(car), "--degree", 2)
    assert doc["quotient_dim"] == 3 and doc["cover_dim"] == 6


def test_law_kernel_example_i(capsys):
    doc = run_json(capsys, "law", "kernel", DATA / "example_i.json")
    assert doc["kernel"]["dim"] == 2 and doc["kernel"]["codim"] == 4


def test_law_push_examples(capsys):
    doc = run_json(capsys, "law", "push", DATA / "example_i.json", "--along", DATA / "example_i_diagonal.json")
    assert doc["kernel"]["elements"] == ["d"]
    doc = run_json(capsys, "law", "push", DATA / "example_ii.json", "--along", DATA / "example_ii_map.json")
    assert doc["kernel"]["elements"] == ["d"]
    doc = run_json(capsys, "law", "kernel", DATA / "example_ii.json")
    assert doc["kernel"]["dim"] == 0


def test_law_misc(capsys):
    assert run_json(capsys, "law", "nondeg", DATA / "norm_f4.json") == {"nondegenerate": True}
    assert run_json(capsys, "law", "nondeg", DATA / "double_point.json") == {"nondegenerate": False}
    assert run_json(capsys, "law", "eval", DATA / "norm_f4.json", "--at", "x")["value"] == ["1"]
    assert run_json(capsys, "law", "chi", DATA / "norm_f4.json", "--at", "x")["coefficients"] == [["1"], ["1"], ["1"]]
    assert run_json(capsys, "law", "regular", DATA / "example_ii.json", "--along", DATA / "example_ii_map.json") == {"regular": False}
    doc = run_json(capsys, "law", "image", DATA / "example_i.json")
    assert doc["image_dim"] == 4
    doc = run_json(capsys, "law", "validate", DATA / "double_point.json")
    assert doc["valid"] and doc["degree"] == 2
    doc = run_json(capsys, "law", "add", DATA / "double_point.json", DATA / "double_point.json")
    assert doc["degree"] == 4


def test_law_basechange(capsys):
    doc = run_json(capsys, "law", "basechange", DATA / "frobenius.json", "--to", DATA / "frobenius_to_field.json")
    assert doc["holds"] and doc["kernel_before"] == 1 and doc["kernel_after"] == 0


def test_exit_codes(capsys):
    assert run(capsys, "law", "kernel", "missing.json")[0] == EXIT_PARSE
    bad = {"carrier": {"field": {"char": 3}, "vars": ["x"], "relations": ["x^2"]}, "degree": 2,
           "values": [{"nu": [2, 0], "coeff": "1"}, {"nu": [0, 2], "coeff": "1"}]}
    code, _, err = run(capsys, "law", "kernel", json.dumps(bad))
    assert code == EXIT_INVALID and "NotMultiplicative" in err
    assert run(capsys, "law", "nondeg", DATA / "example_i.json")[0] == EXIT_UNSUPPORTED
    assert run(capsys, "law", "kernel")[0] == EXIT_PARSE
    frob_q = {"carrier": {"field": {"char": 0}, "vars": [], "relations": []}, "kind": "frobenius"}
    assert run(capsys, "law", "kernel", json.dumps(frob_q))[0] == EXIT_UNSUPPORTED


def test_fixtures_commands(capsys):
    code, out, _ = run(capsys, "fixtures", "list", "--text")
    assert code == EXIT_OK and "push-forward-i" in out
    code, out, _ = run(capsys, "fixtures", "run", "--only", "psi-phi-factorial", "--text")
    assert code == EXIT_OK and out.startswith("PASS psi-phi-factorial")
    doc = run_json(capsys, "fixtures", "run", "--only", "kernel-base-change-frobenius")
    assert doc["passed"] == 1 and doc["results"][0]["description"]
    assert run(capsys, "fixtures", "run", "--only", "nope")[0] == EXIT_PARSE


def test_fixture_failure_exit_code(capsys, monkeypatch):
    from gammalaws import fixtures

    failing = fixtures.FixtureSpec("always-fails", "x", lambda seed: fixtures.FixtureResult("always-fails", False, {}))
    monkeypatch.setattr(fixtures, "CATALOG", fixtures.CATALOG + [failing])
    assert run(capsys, "fixtures", "run", "--only", "always-fails")[0] == EXIT_FIXTURE


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "gammalaws.cli", "gamma", "basis", "--rank", "3", "--degree", "1", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["count"] == 3


def test_trivial_hom_kernel(capsys):
    # a degree-1 law is a ring map; its kernel is the ordinary kernel
    doc = run_json(capsys, "law", "kernel", DATA / "trivial_hom.json")
    assert doc["kernel"]["elements"] == ["x"] and doc["filtration_dims"] == [2, 1]


def test_output_is_deterministic_and_reparses(capsys):
    first = run(capsys, "law", "add", DATA / "double_point.json", DATA / "double_point.json")[1]
    second = run(capsys, "law", "add", DATA / "double_point.json", DATA / "double_point.json")[1]
    assert first == second
    from gammalaws import docs

    law, _ = docs.law_from_doc(json.loads(first))
    assert law.degree == 4
    doc = run_json(capsys, "law", "validate", first)
    assert doc["values"] == json.loads(first)["values"]


def test_text_summary(capsys):
    code, out, _ = run(capsys, "law", "kernel", DATA / "example_i.json", "--text")
    assert code == EXIT_OK and out.startswith("kernel: (")
