"""Command line entry point ``regstar``.

Documents flow through stdin/stdout as JSON, so stages can be piped:

    regstar build partition --n 2 | regstar roundtrip

Commands that write a JSON document send their summary line to stderr;
the others print it to stdout. Exit status: 0 pass, 1 verification
failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import core, cpg, dot, groupoid, palg
from .constructions import (ConstructionError, SandwichMatrix, SimpleGraph, adjacency_semigroup,
                            fp_semigroup, rees_star_semigroup)
from .diagram import DegreeError, partition_monoid
from .report import StructuralError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input

def _read_doc(path: str | None) -> dict:
    if path in (None, "-"):
        text, where = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
        where = path
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"parse error in {where} at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise UsageError(f"parse error in {where}: top level is not an object")
    return doc


def _kind(doc: dict) -> str:
    if "eps" in doc and "groupoid" in doc:
        return "triple"
    if "morphisms" in doc:
        return "groupoid"
    if "mul" in doc:
        return "semigroup"
    if "theta" in doc:
        return "palg"
    raise UsageError("unrecognised document: expected a semigroup, projection algebra, groupoid or triple")


def _semigroup(doc: dict) -> core.StarSemigroup:
    if _kind(doc) != "semigroup":
        raise UsageError("expected a semigroup document")
    return core.StarSemigroup.from_json(doc)


def _load_palg(source: str) -> palg.ProjectionAlgebra:
    if source in palg.BUNDLED:
        return palg.BUNDLED[source]()
    stem = os.path.basename(source).removesuffix(".json")
    if not os.path.exists(source) and stem in palg.BUNDLED:
        return palg.BUNDLED[stem]()
    return palg.ProjectionAlgebra.from_json(_read_doc(source))


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, separators=(",", ":")) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(line: str) -> None:
    print(line, file=sys.stderr)


def _counts(S: core.StarSemigroup) -> str:
    sp = core.special_elements(S)
    return f"size={S.size} projections={len(sp.projections)} idempotents={len(sp.idempotents)}"


# ---------------------------------------------------------------- commands

def cmd_build(args) -> int:
    kind = args.kind
    if kind in ("partition", "brauer"):
        family = "brauer" if kind == "brauer" else args.family
        if args.n is None:
            raise UsageError("--n is required")
        S = partition_monoid(args.n, family, args.bound)
    elif kind == "adjacency":
        if args.graph:
            G = SimpleGraph.from_json(_read_doc(args.graph))
        elif args.n is not None:
            if args.family == "complete":
                G = SimpleGraph.complete(args.n)
            elif args.family in ("discrete", "full") and not args.edges:
                G = SimpleGraph.discrete(args.n)
            else:
                pairs = [tuple(int(v) for v in e.split("-")) for e in args.edges.split(",") if e]
                G = SimpleGraph.undirected(args.n, pairs)
        else:
            raise UsageError("adjacency needs --graph FILE or --n")
        S = adjacency_semigroup(G)
    elif kind == "rees":
        if not args.matrix:
            raise UsageError("rees needs --matrix FILE")
        S = rees_star_semigroup(SandwichMatrix.from_json(_read_doc(args.matrix)))
    elif kind == "fp":
        if not args.palg:
            raise UsageError("fp needs --palg FILE or a bundled name")
        S = fp_semigroup(_load_palg(args.palg))
    else:
        raise UsageError(f"unknown family {kind}")
    _emit(S.to_json(), args.output)
    _note(f"build {kind}: {_counts(S)}")
    return EXIT_OK


def _print_report(rep) -> int:
    for line in rep.lines():
        print(line)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    what = args.what
    if what == "coherence" and args.counterexample_g2prime:
        r = cpg.g2prime_check()
        for line in r.lines():
            print(line)
        ok = not r.products_differ
        print(f"verify g2prime: {'PASS' if ok else 'FAIL'} (LP1-LP4 {'hold' if all(r.lp.values()) else 'fail'}, "
              f"e.e1.b.f1.f {'=' if ok else '!='} e.e2.b.f2.f)")
        return EXIT_OK if ok else EXIT_FAIL
    doc = _read_doc(args.input)
    kind = _kind(doc)
    if what == "star":
        S = _semigroup(doc)
        rep = core.verify_star_laws(S)
        rep.notes["size"] = S.size
        code = _print_report(rep)
        print(f"size={S.size}")
        return code
    if what == "palg":
        P = (core.projection_algebra_of(_semigroup(doc)) if kind == "semigroup"
             else palg.ProjectionAlgebra.from_json(doc))
        return _print_report(palg.verify_axioms(P))
    if what == "groupoid":
        if kind == "semigroup":
            G = groupoid.groupoid_of(_semigroup(doc))
        elif kind == "triple":
            G = cpg.EvaluationTable.from_json(doc).G
        else:
            G = groupoid.OrderedGroupoid.from_json(doc)
        return _print_report(groupoid.verify_ordered_groupoid(G))
    E = cpg.extract_evaluation(_semigroup(doc)) if kind == "semigroup" else cpg.EvaluationTable.from_json(doc)
    if what == "eps":
        rep = cpg.verify_evaluation(E, samples=args.samples, seed=args.seed)
        code = _print_report(rep)
        print(f"seed={args.seed} samples={args.samples}")
        return code
    if what == "coherence":
        return _print_report(cpg.verify_coherence(E))
    raise UsageError(f"unknown suite {what}")


def cmd_extract(args) -> int:
    S = _semigroup(_read_doc(args.input))
    E = cpg.extract_evaluation(S)
    _emit(E.to_json(), args.output)
    _note(f"extract: objects={E.P.size} morphisms={E.G.size} generators={len(E.eps)}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    E = cpg.EvaluationTable.from_json(_read_doc(args.input))
    if not args.force:
        for rep in (cpg.verify_evaluation(E, samples=args.samples, seed=args.seed), cpg.verify_coherence(E)):
            if not rep.ok:
                for line in rep.lines():
                    _note(line)
                _note("reconstruct: REFUSED (triple not certified; use --force to build anyway)")
                return EXIT_FAIL
    S = cpg.reconstruct(E, force=args.force)
    rep = core.verify_star_laws(S)
    _emit(S.to_json(), args.output)
    _note(f"reconstruct: {'PASS' if rep.ok else 'FAIL'} {_counts(S)}")
    if not rep.ok:
        for line in rep.lines():
            _note(line)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_roundtrip(args) -> int:
    doc = _read_doc(args.input)
    if _kind(doc) == "triple":
        r = cpg.roundtrip_triple(cpg.EvaluationTable.from_json(doc))
    else:
        S = _semigroup(doc)
        rep = core.verify_star_laws(S)
        if not rep.ok:
            for line in rep.lines():
                print(line)
            return EXIT_FAIL
        r = cpg.roundtrip(S)
    print(r.summary())
    return EXIT_OK if r.equal else EXIT_FAIL


def cmd_mu(args) -> int:
    S = _semigroup(_read_doc(args.input))
    mu = core.mu_congruence(S)
    state = "IDENTITY" if mu.is_identity() else "NONTRIVIAL"
    if args.verbose:
        classes: dict[int, list[int]] = {}
        for a, c in enumerate(mu.class_of.tolist()):
            classes.setdefault(c, []).append(a)
        for c in sorted(classes):
            if len(classes[c]) > 1:
                print("  class: " + " ".join(S.label(a) for a in classes[c]))
    print(f"mu: {state} ({mu.class_count} classes on {S.size} elements)")
    return EXIT_OK


def cmd_closure(args) -> int:
    S = _semigroup(_read_doc(args.input))
    cl = core.projection_closure(S)
    F = set(core.special_elements(S).f_pairs)
    ok = cl.validate(S, F)
    if args.verbose:
        for x in cl.elements:
            print(f"  {S.label(x)} = " + " . ".join(S.label(p) for p in cl.factorization[x]))
    longest = max(len(w) for w in cl.factorization.values())
    print(f"closure: {len(cl.elements)} elements of {S.size}, longest factorization {longest}, "
          f"factorizations {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export_dot(args) -> int:
    doc = _read_doc(args.input)
    obj = palg.ProjectionAlgebra.from_json(doc) if _kind(doc) == "palg" else _semigroup(doc)
    try:
        text = dot.export_dot(args.diagram, obj)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _note(f"export-dot {args.diagram}: {text.count(chr(10))} lines")
    return EXIT_OK


def cmd_esn(args) -> int:
    doc = _read_doc(args.input)
    kind = _kind(doc)
    if kind == "semigroup":
        G = groupoid.groupoid_of(_semigroup(doc))
    elif kind == "triple":
        G = cpg.EvaluationTable.from_json(doc).G
    else:
        G = groupoid.OrderedGroupoid.from_json(doc)
    try:
        S = cpg.esn(G)
    except cpg.SemilatticeError as exc:
        print(f"esn: FAIL ({exc})")
        return EXIT_FAIL
    rep = core.verify_star_laws(S)
    _emit(S.to_json(), args.output)
    sp = core.special_elements(S)
    inverse = sp.idempotents == sp.projections
    _note(f"esn: {'PASS' if rep.ok and inverse else 'FAIL'} {_counts(S)} inverse={'yes' if inverse else 'no'}")
    return EXIT_OK if rep.ok and inverse else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regstar", description="Finite regular *-semigroups and their groupoid data.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, output=True, lead=None):
        if lead:
            p.add_argument(lead[0], choices=lead[1])
        p.add_argument("input", nargs="?", help="input JSON file (default: stdin)")
        if output:
            p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
        return p

    b = sub.add_parser("build", help="construct a semigroup and print it as JSON")
    b.add_argument("kind", choices=["partition", "brauer", "adjacency", "rees", "fp"])
    b.add_argument("--n", type=int)
    b.add_argument("--family", default="full",
                   help="partition: full|brauer; adjacency with --n: discrete|complete")
    b.add_argument("--bound", type=int, help="override the degree bound")
    b.add_argument("--edges", default="", help="adjacency edges like 0-1,1-2")
    b.add_argument("--graph", help="adjacency graph JSON {n, edges}")
    b.add_argument("--matrix", help="sandwich matrix JSON {group, entries}")
    b.add_argument("--palg", help="projection algebra JSON or bundled name (" + ", ".join(palg.BUNDLED) + ")")
    b.add_argument("-o", "--output")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_build)

    v = common(sub.add_parser("verify", help="run an axiom suite"), output=False,
               lead=("what", ["star", "palg", "groupoid", "eps", "coherence"]))
    v.add_argument("--samples", type=int, default=10_000, help="random words for the eps suite")
    v.add_argument("--counterexample-g2prime", action="store_true",
                   help="evaluate the degree-4 linked-pair sextuple instead of an input")
    v.set_defaults(func=cmd_verify)

    common(sub.add_parser("extract", help="semigroup -> triple")).set_defaults(func=cmd_extract)
    r = common(sub.add_parser("reconstruct", help="triple -> semigroup"))
    r.add_argument("--force", action="store_true", help="skip the coherence certificate")
    r.add_argument("--samples", type=int, default=10_000)
    r.set_defaults(func=cmd_reconstruct)
    common(sub.add_parser("roundtrip", help="check S(G(S)) = S or G(S(E)) = E"),
           output=False).set_defaults(func=cmd_roundtrip)
    m = common(sub.add_parser("mu", help="largest idempotent-separating congruence"), output=False)
    m.add_argument("-v", "--verbose", action="store_true")
    m.set_defaults(func=cmd_mu)
    c = common(sub.add_parser("closure", help="subsemigroup generated by projections"), output=False)
    c.add_argument("-v", "--verbose", action="store_true")
    c.set_defaults(func=cmd_closure)
    d = common(sub.add_parser("export-dot", help="DOT text for a diagram"),
               lead=("diagram", ["eggbox", "friendship", "hasse"]))
    d.set_defaults(func=cmd_export_dot)
    common(sub.add_parser("esn", help="inverse semigroup from an ordered groupoid on a semilattice")
           ).set_defaults(func=cmd_esn)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, StructuralError, ConstructionError, DegreeError, groupoid.DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
