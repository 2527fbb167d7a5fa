"""Command-line front end.

Output is canonical JSON (sorted keys; ``--json`` for the one-line form,
``--text`` for a short summary).

    gammalaws gamma basis --rank 2 --degree 2
    gammalaws law kernel law.json
    gammalaws fixtures run --all

Exit codes: 0 success, 1 fixture failure, 2 malformed input, 3 validation
error, 4 unsupported base.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import docs
from .divpow import GammaError, gamma_algebra, gamma_basis, gamma_of_quotient_via_presentation, rho, shuffle
from .exactfield import FieldError, FieldSpec
from .finalg import AlgebraError, is_reduced
from .laws import (
    LawError,
    MultiplicativeLaw,
    QuotientLaw,
    UnsupportedBase,
    add_laws,
    basechange_kernel_check,
    char_poly_of_law,
    evaluate,
    filtration,
    is_nondegenerate,
    kernel,
    kernel_bruteforce,
    law_image,
    law_kernel,
    push_forward,
)
from .polyring import InfiniteDimensional, PolyParseError

EXIT_OK, EXIT_FIXTURE, EXIT_PARSE, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4
BRUTEFORCE_LIMIT = 3**8


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _field(args) -> FieldSpec | None:
    return FieldSpec(args.field) if args.field is not None else None


def _emit(args, doc: dict, text: str | None = None):
    """Pretty JSON by default, one-line canonical JSON with --json, a summary with --text."""
    if args.text and text is not None and not args.json:
        print(text)
    else:
        print(docs.dumps(doc, compact=args.json))


def _load_law(args, source: str):
    law, car = docs.law_from_doc(docs.load(source), _field(args))
    return law, car


def _cover(law) -> MultiplicativeLaw:
    return law.cover if isinstance(law, QuotientLaw) else law


# ---------------------------------------------------------------------------
# gamma
# ---------------------------------------------------------------------------


def cmd_gamma(args) -> int:
    if args.gamma_cmd == "basis":
        idx = gamma_basis(args.rank, args.degree)
        doc = {"rank": args.rank, "degree": args.degree, "count": len(idx), "indices": [list(nu) for nu in idx]}
        _emit(args, doc, "\n".join(" ".join(map(str, nu)) for nu in idx))
        return EXIT_OK
    car = docs.carrier_from_doc(docs.load(args.carrier), _field(args))
    C = car.rel
    if args.gamma_cmd == "mul":
        u = docs.gamma_from_doc(C, docs.load(args.u), args.degree)
        v = docs.gamma_from_doc(C, docs.load(args.v), u.degree)
        w = u * v
        _emit(args, {"degree": w.degree, "product": docs.gamma_to_doc(w)}, str(w))
    elif args.gamma_cmd == "shuffle":
        u = docs.gamma_from_doc(C, docs.load(args.u))
        v = docs.gamma_from_doc(C, docs.load(args.v))
        w = shuffle(u, v)
        _emit(args, {"degree": w.degree, "product": docs.gamma_to_doc(w)}, str(w))
    elif args.gamma_cmd == "rho":
        u = docs.gamma_from_doc(C, docs.load(args.u), args.d + args.e)
        t = rho(args.d, args.e, u)
        terms = [
            {"left": list(m), "right": list(n), "coeff": docs.element_to_doc(a)}
            for (m, n), a in sorted(t.coeffs.items(), reverse=True)
        ]
        _emit(args, {"d": args.d, "e": args.e, "terms": terms}, str(t))
    elif args.gamma_cmd == "quotient":
        if not car.relations:
            raise CliError(EXIT_PARSE, "carrier document has no 'quotient' relations")
        res = gamma_of_quotient_via_presentation(C, car.relations, args.degree, close_to_ideal=True)
        doc = {
            "degree": args.degree,
            "cover_dim": res.gamma.kdim,
            "relations_dim": res.submodule.dim,
            "quotient_dim": res.kdim,
            "quotient_basis": list(res.quotient.algebra.labels) if res.quotient else None,
        }
        _emit(args, doc, f"dim Gamma^{args.degree}(G) = {res.gamma.kdim}, dim I = {res.submodule.dim}, quotient dim = {res.kdim}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# law
# ---------------------------------------------------------------------------


def _kernel_doc(law, bruteforce: bool) -> dict:
    cover = _cover(law)
    chain = filtration(cover)
    K = law_kernel(law)
    doc = {"degree": law.degree, "kernel": docs.ideal_to_doc(K), "filtration_dims": [s.dim for s in chain]}
    confirmed = None
    if bruteforce and cover.total.field.char and cover.total.cardinality() <= BRUTEFORCE_LIMIT:
        confirmed = kernel_bruteforce(cover, BRUTEFORCE_LIMIT) == kernel(cover)
    doc["bruteforce_confirmed"] = confirmed
    return doc


def cmd_law(args) -> int:
    law, car = _load_law(args, args.law)
    cover = _cover(law)
    sub = args.law_cmd
    if sub == "validate":
        doc = docs.law_to_doc(cover, car.doc)
        doc["valid"] = True
        _emit(args, doc, f"valid law of degree {cover.degree}")
    elif sub == "eval":
        if args.base_change:
            u = docs.base_change_from_doc(docs.load(args.base_change), cover.base)
            coords = [docs.element_from_doc(u.target, c) for c in docs.load(args.at)]
            val = evaluate(cover, coords, u)
        elif isinstance(law, QuotientLaw):
            val = law(law.projection(docs.element_from_doc(cover.total, args.at)))
        else:
            val = evaluate(law, docs.element_from_doc(law.total, args.at))
        _emit(args, {"value": docs.element_to_doc(val), "text": str(val)}, str(val))
    elif sub == "kernel":
        doc = _kernel_doc(law, not args.no_bruteforce)
        _emit(args, doc, "kernel: (" + ", ".join(doc["kernel"]["elements"]) + ")")
    elif sub == "chi":
        b = docs.element_from_doc(cover.total, args.at)
        cp = char_poly_of_law(cover, b)
        _emit(args, {"coefficients": [docs.element_to_doc(c) for c in cp]}, " + ".join(f"({c})*t^{i}" for i, c in enumerate(cp)))
    elif sub == "image":
        img = law_image(law)
        doc = {
            "image_dim": img.algebra.dim,
            "image_basis": list(img.algebra.labels),
            "reduced": is_reduced(img.algebra),
            "kernel": docs.ideal_to_doc(img.kernel),
        }
        if img.restricted is not None:
            doc["restricted_values"] = [{"nu": list(nu), "coeff": docs.element_to_doc(a)} for nu, a in img.restricted.values.items()]
            doc["restricted_kernel_zero"] = kernel(img.restricted).is_zero()
        _emit(args, doc, f"image of dimension {img.algebra.dim}, reduced: {doc['reduced']}")
    elif sub == "push":
        src, u = docs.map_from_doc(docs.load(args.along), cover.carrier)
        if isinstance(law, QuotientLaw):
            pushed = law.push_forward(u, src.rel, src.relations)
        else:
            pushed = push_forward(law, u, src.rel)
            if src.relations:
                pushed = QuotientLaw(pushed, src.relations)
        doc = _kernel_doc(pushed, not args.no_bruteforce)
        doc["values"] = docs.law_to_doc(_cover(pushed), src.doc)["values"]
        _emit(args, doc, "push-forward kernel: (" + ", ".join(doc["kernel"]["elements"]) + ")")
    elif sub == "add":
        other, _ = _load_law(args, args.other)
        if isinstance(law, QuotientLaw) or isinstance(other, QuotientLaw):
            raise CliError(EXIT_INVALID, "add needs laws on a free carrier")
        if not other.carrier.same(law.carrier):
            raise CliError(EXIT_INVALID, "laws live on different carriers")
        other = MultiplicativeLaw(law.carrier, other.degree, {nu: law.base.element(a.coords) for nu, a in other.values.items()})
        s = add_laws(law, other)
        _emit(args, docs.law_to_doc(s, car.doc), f"law of degree {s.degree}")
    elif sub == "regular":
        src, u = docs.map_from_doc(docs.load(args.along), cover.carrier)
        if isinstance(law, QuotientLaw):
            u = law.descend(u, src.rel, src.relations)
        img = law_image(law)
        ok = img.projection.compose(u).is_surjective()
        _emit(args, {"regular": ok}, str(ok).lower())
    elif sub == "nondeg":
        if isinstance(law, QuotientLaw):
            raise UnsupportedBase("non-degeneracy is computed for laws over the coefficient field")
        ok = is_nondegenerate(law)
        _emit(args, {"nondegenerate": ok}, str(ok).lower())
    elif sub == "basechange":
        if isinstance(law, QuotientLaw):
            raise CliError(EXIT_INVALID, "base change needs a law on a free carrier")
        u = docs.base_change_from_doc(docs.load(args.to), law.base)
        rep = basechange_kernel_check(law, u, args.mode)
        new = rep.pop("law")
        rep["kernel"] = docs.ideal_to_doc(kernel(new))
        rep["values"] = [{"nu": list(nu), "coeff": docs.element_to_doc(a)} for nu, a in new.values.items()]
        _emit(args, rep, f"{args.mode}: {'holds' if rep['holds'] else 'fails'}; kernel dim {rep['kernel_before']} -> {rep['kernel_after']}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def cmd_fixtures(args) -> int:
    from .fixtures import CATALOG, fixture_names, run_fixture

    if args.fixtures_cmd == "list":
        doc = [{"name": f.name, "description": f.description} for f in CATALOG]
        _emit(args, {"fixtures": doc}, "\n".join(f"{f.name:32s} {f.description}" for f in CATALOG))
        return EXIT_OK
    names = fixture_names()
    if args.only:
        if args.only not in names:
            raise CliError(EXIT_PARSE, f"unknown fixture {args.only!r}; see 'fixtures list'")
        names = [args.only]
    results = [run_fixture(n, args.seed) for n in names]
    about = {f.name: f.description for f in CATALOG}
    if not args.text:
        rows = [
            {"name": r.name, "description": about.get(r.name, ""), "passed": r.passed, "details": _plain(r.details)}
            for r in results
        ]
        print(docs.dumps({"seed": args.seed, "passed": sum(r.passed for r in results), "results": rows}, compact=args.json))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} passed (seed {args.seed})")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FIXTURE


def _plain(x):
    """Make fixture details JSON-safe."""
    return json.loads(json.dumps(x, default=str))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=None, help="characteristic for documents without a 'field' entry (0 = Q)")
    common.add_argument("--json", action="store_true", help="emit compact single-line canonical JSON")
    common.add_argument("--text", action="store_true", help="print a short human-readable summary instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")

    p = argparse.ArgumentParser(prog="gammalaws", description="Divided powers and multiplicative polynomial laws.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", help="divided-power algebras")
    gs = g.add_subparsers(dest="gamma_cmd", required=True)
    b = gs.add_parser("basis", parents=[common], help="list the gamma basis indices")
    b.add_argument("--rank", type=int, required=True)
    b.add_argument("--degree", type=int, required=True)
    m = gs.add_parser("mul", parents=[common], help="internal product in Gamma^d")
    m.add_argument("carrier")
    m.add_argument("--degree", type=int, default=None)
    m.add_argument("--u", required=True)
    m.add_argument("--v", required=True)
    s = gs.add_parser("shuffle", parents=[common], help="shuffle product Gamma^d x Gamma^e")
    s.add_argument("carrier")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    r = gs.add_parser("rho", parents=[common], help="comultiplication Gamma^{d+e} -> Gamma^d (x) Gamma^e")
    r.add_argument("carrier")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--e", type=int, required=True)
    r.add_argument("--u", required=True)
    q = gs.add_parser("quotient", parents=[common], help="Gamma^d of a presented carrier")
    q.add_argument("carrier")
    q.add_argument("--degree", type=int, required=True)

    law = sub.add_parser("law", help="multiplicative laws")
    ls = law.add_subparsers(dest="law_cmd", required=True)
    for name, hlp in [
        ("validate", "check unit and multiplicativity"),
        ("eval", "evaluate at an element"),
        ("kernel", "kernel via the filtration"),
        ("chi", "characteristic polynomial"),
        ("image", "image and support"),
        ("push", "push-forward along a map"),
        ("add", "sum of two laws"),
        ("regular", "regularity of a map"),
        ("nondeg", "non-degeneracy"),
        ("basechange", "base change and kernel comparison"),
    ]:
        sp = ls.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("law")
        sp.add_argument("--degree", type=int, default=None)
        if name in ("eval", "chi"):
            sp.add_argument("--at", required=True, help="element expression (or JSON list of coordinates after base change)")
        if name == "eval":
            sp.add_argument("--base-change", default=None)
        if name in ("kernel", "push"):
            sp.add_argument("--no-bruteforce", action="store_true")
        if name in ("push", "regular"):
            sp.add_argument("--along", required=True, help="map document")
        if name == "add":
            sp.add_argument("other")
        if name == "basechange":
            sp.add_argument("--to", required=True, help="base change document")
            sp.add_argument("--mode", choices=["radical", "separable", "flat-I1"], default="radical")

    fx = sub.add_parser("fixtures", help="the embedded check suite")
    fs = fx.add_subparsers(dest="fixtures_cmd", required=True)
    run = fs.add_parser("run", parents=[common])
    grp = run.add_mutually_exclusive_group()
    grp.add_argument("--all", action="store_true", default=True)
    grp.add_argument("--only", default=None)
    fs.add_parser("list", parents=[common])
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handlers = {"gamma": cmd_gamma, "law": cmd_law, "fixtures": cmd_fixtures}
    try:
        return handlers[args.command](args)
    except CliError as exc:
        return _fail(exc.code, str(exc))
    except UnsupportedBase as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    except (docs.DocError, PolyParseError, InfiniteDimensional, FieldError, KeyError, TypeError) as exc:
        return _fail(EXIT_PARSE, f"{type(exc).__name__}: {exc}")
    except (LawError, AlgebraError, GammaError, ValueError) as exc:
        return _fail(EXIT_INVALID, f"{type(exc).__name__}: {exc}")


def _fail(code: int, message: str) -> int:
    print(json.dumps({"error": message, "exit_code": code}), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
