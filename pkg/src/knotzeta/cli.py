"""Command-line front end: invariant computation and verification suites.

Subcommands compute single invariants (alexander, det, tree-poly, zeta,
twisted) and print one canonical JSON document; `verify` runs named suites
of consistency checks over the built-in corpus plus any supplied diagram
files and emits one report per check, ordered by check id regardless of
scheduling.  Exit codes: 0 success, 2 input error, 3 inconsistency.

Diagram arguments are file paths or names of built-in corpus entries; the
KNOTZETA_CORPUS environment variable points name lookups at a different
directory.  Rational flags are written a/b; floats appear only in
convergence reporting.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .alexander import alexander_polynomial, knot_determinant
from .arborescence import enumerate_arborescences, matrix_tree_check, \
    random_matrix_tree_check, tree_polynomial
from .arc_graph import alexander_spec, build_arc_graph, tangle_determinant
from .knot_model import DiagramError, cut, parse_diagram, wirtinger_presentation
from .laurent import LaurentPoly, canonicalize, divide_exact
from .twisted import Representation, column_independence_check, dihedral_rep, \
    fox_colorings, trivial_reduction_check, trivial_representation, \
    twisted_alexander_polynomial, twisted_block_identity_check, \
    twisted_row_identity_check, twisted_trace_check, verify_representation
from .zeta import cabling_check, composition_check, determinant_formula_check, \
    path_sum_check, trace_identity_check

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3

# corpus subsets for the heavier suites; extras supplied on the command line
# are always included
CABLE_CORPUS = ("kink_pm", "trefoil", "figure8")
DIHEDRAL_CASES = {"trefoil": 3, "figure8": 5}


class InputError(ValueError):
    """Bad input from the command line: unknown name, unparsable value."""


# -- diagram sources ----------------------------------------------------------


def corpus_root():
    override = os.environ.get("KNOTZETA_CORPUS")
    if override:
        return Path(override)
    return resources.files("knotzeta") / "corpus"


def corpus_names():
    try:
        entries = list(corpus_root().iterdir())
    except (FileNotFoundError, NotADirectoryError) as exc:
        raise InputError(f"corpus directory unavailable: {exc}")
    return sorted(p.name[:-5] for p in entries if p.name.endswith(".knot"))


def load_corpus(name):
    entry = corpus_root() / f"{name}.knot"
    try:
        text = entry.read_text()
    except (FileNotFoundError, NotADirectoryError):
        raise InputError(f"no corpus diagram named {name!r}")
    return parse_diagram(text)


def resolve_diagram(token):
    """(name, diagram) from a file path or a corpus entry name."""
    path = Path(token)
    if path.is_file():
        return path.stem, parse_diagram(path.read_text())
    name = token[:-5] if token.endswith(".knot") else token
    return name, load_corpus(name)


def parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}")


def emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


# -- compute subcommands ------------------------------------------------------


def cmd_alexander(ns):
    _, d = resolve_diagram(ns.diagram)
    canon = alexander_polynomial(d)
    out = {"poly": canon.poly.to_json(), "det": knot_determinant(d)}
    if ns.convention == "eq10":
        frac = divide_exact(canon.poly, LaurentPoly({1: 1, 0: -1}))
        out["eq10"] = {
            "numerator": frac.numerator.to_json(),
            "denominator": frac.denominator.to_json(),
            "exact": frac.is_polynomial,
        }
    emit(out)
    return EXIT_OK


def cmd_det(ns):
    _, d = resolve_diagram(ns.diagram)
    emit({"det": knot_determinant(d)})
    return EXIT_OK


def cmd_tree_poly(ns):
    _, d = resolve_diagram(ns.diagram)
    source = cut(d, [ns.cut]) if ns.cut is not None else d
    g = build_arc_graph(source)
    roots = tuple(ns.root) if ns.root else (g.vertices[0],)
    for r in roots:
        if r not in g.vertices:
            raise InputError(f"root {r!r} is not a vertex of the arc graph")
    spec = alexander_spec()
    poly = tree_polynomial(g, roots, spec)
    count = len(enumerate_arborescences(g, roots, spec))
    emit({"poly": poly.to_json(), "roots": [str(r) for r in roots], "count": count})
    return EXIT_OK


def cmd_zeta(ns):
    _, d = resolve_diagram(ns.diagram)
    arc = ns.cut if ns.cut is not None else 1
    tangle = cut(d, [arc])
    g = build_arc_graph(tangle)
    spec = alexander_spec()
    t0 = parse_rational(ns.t) if ns.t else None
    if ns.check == "trace":
        verdict = trace_identity_check(g, spec, ns.max_len or 8)
    elif ns.check == "euler":
        verdict = determinant_formula_check(g, spec, t0=t0, max_len=ns.max_len)
    elif ns.check == "path-sum":
        verdict = path_sum_check(tangle, seed=ns.seed)
    elif ns.check == "composition":
        verdict = composition_check(tangle, tangle)
    else:
        samples = (t0,) if t0 is not None else (Fraction(1, 2), Fraction(2, 3))
        verdict = cabling_check(tangle, ns.n or 2, samples)
    emit(verdict.to_json())
    return EXIT_OK if verdict.passed else EXIT_INCONSISTENT


def _representation_from_args(ns, d):
    if ns.dihedral is not None and ns.rep is not None:
        raise InputError("--dihedral and --rep are mutually exclusive")
    if ns.dihedral is not None:
        space = fox_colorings(d, ns.dihedral)
        coloring = space.nonconstant()
        if coloring is None:
            raise InputError(
                f"no nonconstant {ns.dihedral}-coloring: dimension {space.dim}")
        return dihedral_rep(d, ns.dihedral, coloring)
    if ns.rep is not None:
        text = ns.rep
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        try:
            obj = json.loads(text)
            images = {int(k): v for k, v in obj["images"].items()}
            return Representation(int(obj["field"]), images)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"bad representation JSON: {exc}")
    return trivial_representation(tuple(d.arcs))


def cmd_twisted(ns):
    _, d = resolve_diagram(ns.diagram)
    rep = _representation_from_args(ns, d)
    tw = twisted_alexander_polynomial(d, rep)
    emit(tw.to_json())
    return EXIT_OK


# -- verification suites ------------------------------------------------------


def _report(check, verdict, params=None, lhs=None, rhs=None):
    rep = {"check": check, "status": "pass" if verdict.passed else "fail",
           "params": params or {}}
    if lhs is not None:
        rep["lhs"] = lhs
    if rhs is not None:
        rep["rhs"] = rhs
    if not verdict.passed:
        rep["detail"] = verdict.detail
    return rep


def _skip(check, reason, params=None):
    return {"check": check, "status": "skipped", "reason": reason,
            "params": params or {}}


def _check_matrix_tree(name, diagram):
    g = build_arc_graph(diagram)
    verdict = matrix_tree_check(g, (diagram.arcs[0],), alexander_spec())
    return _report(f"matrix-tree:{name}", verdict,
                   {"roots": verdict.detail["roots"]},
                   lhs=verdict.detail["determinant"],
                   rhs=verdict.detail["tree_sum"])


def _check_matrix_tree_random(count, seed):
    verdict = random_matrix_tree_check(count, seed)
    return _report("matrix-tree:random", verdict,
                   {"count": count, "seed": seed},
                   lhs="det(L_roots)", rhs="arborescence weight sum")


def _check_triple(name, diagram):
    spec = alexander_spec()
    minor = alexander_polynomial(diagram)
    trees = canonicalize(tree_polynomial(build_arc_graph(diagram),
                                         (diagram.arcs[0],), spec))
    walks = canonicalize(tangle_determinant(
        build_arc_graph(cut(diagram, [diagram.arcs[0]])), spec))
    from .verdict import Verdict
    agree = minor.poly == trees.poly == walks.poly
    verdict = Verdict("triple", agree, {
        "minor": str(minor.poly), "trees": str(trees.poly), "walks": str(walks.poly)})
    return _report(f"triple:{name}", verdict, {"cut": str(diagram.arcs[0])},
                   lhs=verdict.detail["minor"],
                   rhs={"trees": verdict.detail["trees"],
                        "walks": verdict.detail["walks"]})


def _check_zeta(name, diagram, tol=1e-6):
    g = build_arc_graph(cut(diagram, [diagram.arcs[0]]))
    verdict = determinant_formula_check(g, alexander_spec(), tol=tol)
    params = {k: verdict.detail.get(k) for k in ("t0", "max_len", "tolerance")}
    return _report(f"zeta:{name}", verdict, params,
                   lhs=verdict.detail.get("partial_product"),
                   rhs=verdict.detail.get("inverse_determinant"))


def _check_path_sum(name, diagram, arc, seed):
    verdict = path_sum_check(cut(diagram, [arc]), seed=seed)
    return _report(f"path-sum:{name}:arc{arc}", verdict,
                   {"samples": len(verdict.detail["verified"]), "seed": seed},
                   lhs={"failures": verdict.detail["failures"]}, rhs="1")


def _check_composition(name1, d1, name2, d2):
    t1 = cut(d1, [d1.arcs[0]])
    t2 = cut(d2, [d2.arcs[0]])
    verdict = composition_check(t1, t2)
    return _report(f"composition:{name1}+{name2}", verdict, {},
                   lhs=verdict.detail["composite"], rhs=verdict.detail["product"])


def _check_cable(name, diagram, n, samples):
    tangle = cut(diagram, [diagram.arcs[0]])
    verdict = cabling_check(tangle, n, samples)
    return _report(f"cable:{name}:n{n}", verdict,
                   {"n": n, "samples": verdict.detail["samples"]},
                   lhs=verdict.detail["cable_poly"], rhs=verdict.detail["original_poly"])


def _check_twisted_trivial(name, diagram):
    verdict = trivial_reduction_check(diagram)
    return _report(f"twisted:trivial:{name}", verdict, {"field": 101},
                   lhs=verdict.detail["cross_lhs"], rhs=verdict.detail["cross_rhs"])


def _twisted_dihedral_reports(name, diagram, p):
    space = fox_colorings(diagram, p)
    coloring = space.nonconstant()
    base = f"twisted:dihedral:{name}"
    if coloring is None:
        return [_skip(f"{base}:rep", f"no nonconstant {p}-coloring")]
    rep = dihedral_rep(diagram, p, coloring)
    params = {"p": p, "field": rep.field, "coloring": list(coloring)}
    reports = []
    v = verify_representation(wirtinger_presentation(diagram), rep)
    reports.append(_report(f"{base}:rep", v, params,
                           lhs="relator images", rhs="identity"))
    v = twisted_block_identity_check(diagram, rep)
    reports.append(_report(f"{base}:blocks", v, params,
                           lhs="I - B", rhs="twisted Fox Jacobian"))
    v = twisted_row_identity_check(diagram, rep)
    reports.append(_report(f"{base}:rows", v, params,
                           lhs="row sums against images", rhs="0"))
    v = twisted_trace_check(diagram, rep)
    reports.append(_report(f"{base}:trace", v, {**params, "max_power": 6},
                           lhs="tr(B^m)", rhs="closed-walk block traces"))
    v = column_independence_check(diagram, rep)
    reports.append(_report(f"{base}:columns", v, params,
                           lhs="cross-multiplied numerators",
                           rhs="cross-multiplied denominators"))
    return reports


def _suite_jobs(suites, diagrams, extras, ns):
    """One callable per check; each returns a finished report dict."""
    jobs = []
    seed = ns.seed
    named = list(diagrams) + list(extras)

    if "matrix-tree" in suites:
        for name, d in named:
            jobs.append(lambda n=name, g=d: _check_matrix_tree(n, g))
        jobs.append(lambda: _check_matrix_tree_random(50, seed))
    if "triple" in suites:
        for name, d in named:
            jobs.append(lambda n=name, g=d: _check_triple(n, g))
    if "zeta" in suites:
        for name, d in named:
            jobs.append(lambda n=name, g=d: _check_zeta(n, g))
    if "path-sum" in suites:
        for name, d in named:
            for arc in d.arcs:
                jobs.append(lambda n=name, g=d, a=arc: _check_path_sum(n, g, a, seed))
    if "composition" in suites:
        for i, (name1, d1) in enumerate(named):
            for name2, d2 in named[i:]:
                jobs.append(lambda a=name1, x=d1, b=name2, y=d2:
                            _check_composition(a, x, b, y))
    if "cable" in suites:
        cable_named = [(n, d) for n, d in diagrams if n in CABLE_CORPUS] + list(extras)
        orders = (ns.n,) if ns.n else (2, 3)
        samples = (parse_rational(ns.t),) if ns.t else (Fraction(1, 2), Fraction(2, 3))
        for name, d in cable_named:
            for n_order in orders:
                jobs.append(lambda n=name, g=d, k=n_order, s=samples:
                            _check_cable(n, g, k, s))
    if "twisted" in suites:
        for name, d in named:
            jobs.append(lambda n=name, g=d: _check_twisted_trivial(n, g))
        for name, d in named:
            p = DIHEDRAL_CASES.get(name)
            if p is not None:
                jobs.append(lambda n=name, g=d, q=p: _twisted_dihedral_reports(n, g, q))
    return jobs


def cmd_verify(ns):
    all_suites = ("matrix-tree", "triple", "zeta", "path-sum", "composition",
                  "cable", "twisted")
    suites = all_suites if ns.suite == "all" else (ns.suite,)
    diagrams = [(name, load_corpus(name)) for name in corpus_names()]
    extras = [resolve_diagram(token) for token in ns.diagrams]
    jobs = _suite_jobs(suites, diagrams, extras, ns)

    def run(job):
        start = time.perf_counter()
        out = job()
        seconds = round(time.perf_counter() - start, 3)
        reports = out if isinstance(out, list) else [out]
        for r in reports:
            r["seconds"] = seconds
        return reports

    with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
        results = [r for batch in pool.map(run, jobs) for r in batch]
    results.sort(key=lambda r: r["check"])

    failures = sum(r["status"] == "fail" for r in results)
    if ns.json:
        for r in results:
            emit(r)
    else:
        for r in results:
            mark = {"pass": "ok", "fail": "FAIL", "skipped": "skip"}[r["status"]]
            line = f"[{mark}] {r['check']} ({r['seconds']:.2f}s)"
            if r["status"] == "fail":
                line += f"\n       lhs={r.get('lhs')!r} rhs={r.get('rhs')!r}"
            if r["status"] == "skipped":
                line += f"  reason: {r['reason']}"
            sys.stdout.write(line + "\n")
        sys.stdout.write(f"{len(results)} checks, {failures} failures\n")
    return EXIT_OK if failures == 0 else EXIT_INCONSISTENT


# -- argument parsing ---------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotzeta",
        description="Exact knot invariants from arc-graph walk combinatorics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def diagram_arg(p):
        p.add_argument("diagram", help="diagram file or corpus name")
        p.add_argument("--json", action="store_true", help="JSON output (default)")

    p = sub.add_parser("alexander", help="canonical Alexander polynomial")
    diagram_arg(p)
    p.add_argument("--convention", choices=("minor", "eq10"), default="minor")

    p = sub.add_parser("det", help="knot determinant")
    diagram_arg(p)

    p = sub.add_parser("tree-poly", help="arborescence-sum polynomial")
    diagram_arg(p)
    p.add_argument("--root", type=int, action="append",
                   help="root arc (repeatable; default arc 1)")
    p.add_argument("--cut", type=int, help="cut this arc first")

    p = sub.add_parser("zeta", help="cycle-expansion checks on a cut diagram")
    diagram_arg(p)
    p.add_argument("--cut", type=int, help="arc to cut (default 1)")
    p.add_argument("--check", choices=("trace", "euler", "path-sum",
                                       "composition", "cable"), default="euler")
    p.add_argument("--t", help="rational sample point a/b")
    p.add_argument("--max-len", type=int, help="walk length horizon")
    p.add_argument("--n", type=int, help="cable order")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("twisted", help="twisted Alexander polynomial")
    diagram_arg(p)
    p.add_argument("--dihedral", type=int, metavar="P",
                   help="dihedral representation from a Fox P-coloring")
    p.add_argument("--rep", help="representation JSON (or @file)")

    p = sub.add_parser("verify", help="run consistency suites")
    p.add_argument("suite", choices=("matrix-tree", "triple", "zeta", "path-sum",
                                     "composition", "cable", "twisted", "all"))
    p.add_argument("diagrams", nargs="*",
                   help="extra diagram files to include")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, help="cable order override")
    p.add_argument("--t", help="rational sample point override")
    p.add_argument("--json", action="store_true", help="one JSON report per line")

    return parser


HANDLERS = {
    "alexander": cmd_alexander,
    "det": cmd_det,
    "tree-poly": cmd_tree_poly,
    "zeta": cmd_zeta,
    "twisted": cmd_twisted,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return HANDLERS[ns.command](ns)
    except (InputError, DiagramError, OSError) as exc:
        emit({"error": str(exc)})
        return EXIT_INPUT
    except ValueError as exc:
        emit({"error": str(exc)})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
