"""Command-line front end: run scenario suites, lint files, and ad-hoc chamber and lattice queries."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra.ring import GradedRing, RingError
from .lattice import (
    GramLattice,
    LatticeError,
    a1_quartic_lattice,
    a2_quartic_lattice,
    d5a_lattice,
    det,
    inner,
    restriction_gram,
    sublattice_det,
    weak_fano_bundle_table,
)
from .scenarios.checks import jsonable
from .scenarios.format import ScenarioError, load_scenario, parse_scenario
from .scenarios.model import build_model
from .scenarios.runner import builtin_suites, run_document, run_file, run_suite, suite_text
from .toric import chamber_decomposition, classify_wall, irrelevant_ideal, walls

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUILTIN_LATTICES = {
    "a1_quartic": a1_quartic_lattice,
    "a2_quartic": a2_quartic_lattice,
    "d5a": d5a_lattice,
}


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def _emit(obj):
    print(json.dumps(jsonable(obj), indent=2, sort_keys=False))


# run ------------------------------------------------------------------------------


def cmd_run(args):
    reports = []
    suites = list(args.suite or [])
    if not args.paths and not suites:
        suites = builtin_suites()
    for name in suites:
        reports.append(run_suite(name, args.seed, args.check))
    for path in args.paths:
        reports.append(run_file(path, args.seed, args.check))
    doc = run_document(reports, args.seed)
    if args.json:
        _emit(doc)
    else:
        for r in reports:
            print(r.text())
        s = doc["summary"]
        verdict = "PASS" if s["passed"] else "FAIL"
        print(f"{verdict}: {s['pass']} pass, {s['fail']} fail, {s['indeterminate']} indeterminate "
              f"in {len(reports)} suite(s), seed {args.seed}")
    return EXIT_OK if doc["summary"]["passed"] else EXIT_FAIL


# lint -----------------------------------------------------------------------------


def cmd_lint(args):
    sources = [(p, load_scenario(p)) for p in args.paths]
    sources += [(f"{n}.scn", parse_scenario(suite_text(n), f"{n}.scn")) for n in args.suite or []]
    if not sources:
        raise InputError("lint needs a path or --suite NAME")
    found = []
    for path, sf in sources:
        model = build_model(sf, lenient=True)
        found.extend((path, d) for d in model.diagnostics)
    if args.json:
        _emit({"diagnostics": [{"path": d.path or p, "section": d.section, "kind": d.kind,
                                "message": d.message, "line": d.line, "column": d.column} for p, d in found]})
    else:
        for _, d in found:
            print(d)
        print(f"{len(found)} diagnostic(s) in {len(sources)} file(s)")
    return EXIT_FAIL if found else EXIT_OK


# suites ---------------------------------------------------------------------------


def cmd_suites(args):
    rows = []
    for name in builtin_suites():
        sf = parse_scenario(suite_text(name), f"{name}.scn")
        desc = sf.suite.get("description", "") if sf.suite else ""
        rows.append({"suite": name, "checks": len(sf.of_kind("check")), "description": desc})
    if args.json:
        _emit({"suites": rows})
    else:
        width = max(len(r["suite"]) for r in rows)
        for r in rows:
            print(f"{r['suite']:<{width}}  {r['checks']:>3} checks  {r['description']}")
    return EXIT_OK


# chambers -------------------------------------------------------------------------


def parse_weights(text):
    """Weight matrix rows separated by ``/`` (or ``;``), entries by spaces."""
    rows = [r.split() for r in text.replace(";", "/").split("/")]
    try:
        rows = [[int(x) for x in r] for r in rows if r]
    except ValueError:
        raise InputError(f"weight matrix entries must be integers: {text!r}") from None
    if not rows:
        raise InputError("empty weight matrix")
    if len({len(r) for r in rows}) != 1:
        raise InputError("weight matrix rows have different lengths")
    return rows


def _ray(r):
    return "(" + ",".join(str(x) for x in r) + ")"


def chamber_listing(ring):
    """Chambers (counterclockwise) with their irrelevant ideals and walls."""
    chambers = chamber_decomposition(ring)
    index = {ch: i + 1 for i, ch in enumerate(chambers)}
    out = []
    all_walls = walls(ring)
    for ch in chambers:
        entry = {
            "index": index[ch],
            "rays": [list(r) for r in ch.rays],
            "boundary": [list(b) for b in ch.boundary],
            "irrelevant": str(irrelevant_ideal(ring, ch)),
            "walls": [],
        }
        for w in all_walls:
            if w.from_chamber != ch:
                continue
            kind = classify_wall(ring, w)
            entry["walls"].append({
                "ray": list(w.ray),
                "to": index.get(w.to_chamber),
                "kind": kind.kind,
                "classification": str(kind),
            })
        out.append(entry)
    return out


def cmd_chambers(args):
    rows = parse_weights(args.weights)
    if len(rows) > 2:
        raise InputError(f"weight matrix has {len(rows)} rows; chambers are computed for rank at most 2")
    n = len(rows[0])
    names = args.vars.split() if args.vars else [f"x{i}" for i in range(n)]
    if len(names) != n:
        raise InputError(f"--vars gives {len(names)} names for {n} columns")
    try:
        ring = GradedRing.make(names, rows)
        listing = chamber_listing(ring)
    except (RingError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit({"variables": names, "weights": rows, "chambers": listing})
        return EXIT_OK
    print(f"weights {' / '.join(' '.join(str(x) for x in r) for r in rows)} on {' '.join(names)}")
    print(f"{len(listing)} chamber(s)")
    for c in listing:
        rays = " ".join(_ray(r) for r in c["rays"])
        bound = " ".join("<" + ",".join(b) + ">" for b in c["boundary"])
        print(f"chamber {c['index']}: rays {rays}  boundary {bound}  irrelevant {c['irrelevant']}")
        for w in c["walls"]:
            side = f"chamber {w['to']}" if w["to"] else "boundary"
            print(f"  wall {_ray(w['ray'])} -> {side}: {w['classification']}")
    return EXIT_OK


# lattice --------------------------------------------------------------------------


def _gram_lattice(args):
    if args.gram in BUILTIN_LATTICES:
        if args.names:
            raise InputError("--names cannot rename a built-in lattice")
        return BUILTIN_LATTICES[args.gram]()
    try:
        gram = [[Fraction(x) for x in row.replace(",", " ").split()] for row in args.gram.split(";")]
    except ValueError:
        raise InputError(f"Gram matrix entries must be rationals: {args.gram!r}") from None
    names = args.names.split() if args.names else [f"e{i}" for i in range(len(gram))]
    try:
        return GramLattice(tuple(names), tuple(map(tuple, gram)))
    except LatticeError as exc:
        raise InputError(str(exc)) from None


def _bundles():
    rows = []
    for case in weak_fano_bundle_table():
        g = restriction_gram(case.c1, case.c2)
        rows.append({"case": case.ident, "c1": case.c1, "c2": case.c2, "det": det(g),
                     "gram": [list(r) for r in g]})
    return rows


def cmd_lattice(args):
    if args.bundles:
        rows = _bundles()
        if args.json:
            _emit({"bundles": rows})
        else:
            for r in rows:
                print(f"case {r['case']:>2}  c1 {r['c1']:>2}  c2 {r['c2']:>3}  det {r['det']}")
        return EXIT_OK
    if not args.gram:
        raise InputError("lattice needs a Gram matrix (rows separated by ';'), a built-in name, or --bundles")
    lat = _gram_lattice(args)
    try:
        classes = [lat.parse(t) for t in (args.classes or "").split(";") if t.strip()]
        pair = [lat.parse(t) for t in args.inner] if args.inner else None
    except LatticeError as exc:
        raise InputError(str(exc)) from None
    out = {"basis": list(lat.names), "gram": [list(r) for r in lat.gram], "det": lat.det()}
    if classes:
        out["classes"] = [str(c) for c in classes]
        out["class_gram"] = [list(r) for r in lat.gram_of(classes)]
        out["class_det"] = sublattice_det(classes)
    if pair:
        out["inner"] = inner(*pair)
    if args.json:
        _emit(out)
        return EXIT_OK
    print(f"basis {' '.join(lat.names)}")
    for name, row in zip(lat.names, lat.gram):
        print(f"  {name:<6} " + " ".join(f"{str(x):>6}" for x in row))
    print(f"det {out['det']}")
    if classes:
        print(f"classes {'; '.join(out['classes'])}")
        for row in out["class_gram"]:
            print("  " + " ".join(f"{str(x):>6}" for x in row))
        print(f"det {out['class_det']}")
    if pair:
        print(f"({pair[0]}).({pair[1]}) = {out['inner']}")
    return EXIT_OK


# entry point ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="pliable", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run scenario files or bundled suites")
    run.add_argument("paths", nargs="*", help="scenario files (default: every bundled suite)")
    run.add_argument("--suite", action="append", metavar="NAME", help="bundled suite (repeatable)")
    run.add_argument("--check", action="append", metavar="ID", help="only run this check (repeatable)")
    run.add_argument("--seed", type=int, default=0, help="seed for sampled atom instances (default 0)")
    run.add_argument("--json", action="store_true", help="structured report")
    run.set_defaults(func=cmd_run)

    lint = sub.add_parser("lint", help="static diagnostics without running checks")
    lint.add_argument("paths", nargs="*")
    lint.add_argument("--suite", action="append", metavar="NAME")
    lint.add_argument("--json", action="store_true")
    lint.set_defaults(func=cmd_lint)

    suites = sub.add_parser("suites", help="list bundled suites")
    suites.add_argument("--json", action="store_true")
    suites.set_defaults(func=cmd_suites)

    ch = sub.add_parser("chambers", help="GIT chambers and walls of a rank 1 or 2 weight matrix")
    ch.add_argument("weights", help="rows separated by '/', e.g. '1 1 1 2 0 -2 / 0 0 0 0 1 1'")
    ch.add_argument("--vars", help="variable names, space separated (default x0 x1 ...)")
    ch.add_argument("--json", action="store_true")
    ch.set_defaults(func=cmd_chambers)

    lat = sub.add_parser("lattice", help="determinants and intersection numbers")
    lat.add_argument("gram", nargs="?",
                     help=f"Gram rows separated by ';' or one of {', '.join(BUILTIN_LATTICES)}")
    lat.add_argument("--names", help="basis names, space separated (default e0 e1 ...)")
    lat.add_argument("--classes", help="classes separated by ';'; prints their Gram matrix and determinant")
    lat.add_argument("--inner", nargs=2, metavar=("U", "V"), help="intersection number of two classes")
    lat.add_argument("--bundles", action="store_true", help="restricted-form determinants for all bundle cases")
    lat.add_argument("--json", action="store_true")
    lat.set_defaults(func=cmd_lattice)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
