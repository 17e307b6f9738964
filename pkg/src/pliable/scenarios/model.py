"""Resolve a parsed scenario file into rings, pairs, maps, lattices and regions."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..algebra.parse import ParseError, poly_parse, ratfunc_parse
from ..algebra.ring import GradedRing, RingError
from ..birmap.maps import CYPair, MapError, RationalMapSpec, grading_matrix, pair_diagnostics
from ..lattice import GramLattice, LatticeError, Region
from ..toric import ChartError, ToricAmbient, chamber_decomposition, chart, find_chamber
from .format import ScenarioError, ScenarioFile, split_list, split_list_positions

PROVENANCE_TAGS = ("PAPER", "TRIVIAL", "DERIVED")


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    section: str
    line: int | None = None
    column: int | None = None
    path: str | None = None

    def __str__(self):
        loc = ":".join(str(p) for p in (self.path, self.line, self.column) if p is not None)
        loc = loc + ": " if loc else ""
        return f"{loc}{self.section}: {self.kind}: {self.message}"


@dataclass
class Model:
    source: ScenarioFile
    rings: dict = field(default_factory=dict)
    ambients: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    lattices: dict = field(default_factory=dict)
    regions: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def ring_of(self, name, sec=None, key=None):
        if name in self.rings:
            return self.rings[name]
        if name in self.ambients:
            return self.ambients[name].ring
        raise _unresolved(sec, key, "ring or ambient", name)

    def space(self, name, sec=None, key=None):
        if name in self.ambients:
            return self.ambients[name]
        if name in self.rings:
            return self.rings[name]
        raise _unresolved(sec, key, "ring or ambient", name)

    def get(self, kind, name, sec=None, key=None):
        table = {"pair": self.pairs, "map": self.maps, "lattice": self.lattices, "region": self.regions}[kind]
        if name not in table:
            raise _unresolved(sec, key, kind, name)
        return table[name]


def _unresolved(sec, key, kind, name):
    if sec is None:
        return ScenarioError(f"unknown {kind} '{name}'")
    return sec.error(f"unknown {kind} '{name}'", key)


def _diag(model, sec, kind, message, key=None, offset=0):
    e = sec.entry(key) if key else None
    line = e.line if e else sec.line
    col = (e.column + offset) if e else 1
    model.diagnostics.append(Diagnostic(kind, message, f"[{sec.kind} {sec.name}]", line, col, sec.path))


def parse_expr(sec, key, text, ring, offset=0, rational=False):
    """Parse ``text`` (the value of ``key`` starting at ``offset``) into ``ring``."""
    try:
        return (ratfunc_parse if rational else poly_parse)(text, ring)
    except ParseError as exc:
        raise sec.error(f"{exc.message}", key, offset + exc.position) from None


def parse_expr_list(sec, key, ring, rational=False):
    value = sec.get(key, "")
    return [parse_expr(sec, key, t, ring, off, rational) for t, off in split_list_positions(value)]


_ATOM = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*:\s*(-?\d+(?:\s*,\s*-?\d+)*)$")


def _int_rows(sec, key):
    rows = []
    for text in split_list(sec.require(key)):
        try:
            rows.append([int(x) for x in text.replace(",", " ").split()])
        except ValueError:
            raise sec.error(f"'{key}' must contain integers", key) from None
    return rows


def _names(sec, key):
    return [x for x in re.split(r"[\s,]+", sec.require(key)) if x]


def build_ring(model, sec):
    variables = _names(sec, "vars")
    weights = _int_rows(sec, "weights")
    atoms = []
    for text, off in split_list_positions(sec.get("atoms", "")):
        m = _ATOM.match(text)
        if not m:
            raise sec.error(f"malformed atom declaration {text!r}; expected NAME(args):deg", "atoms", off)
        args = tuple(a.strip() for a in m.group(2).split(",") if a.strip())
        deg = tuple(int(x) for x in m.group(3).split(","))
        atoms.append((m.group(1), args, deg))
    try:
        ring = GradedRing.make(variables, weights, atoms, name=sec.name)
    except RingError as exc:
        raise sec.error(str(exc), "atoms" if "atom" in str(exc) else "vars") from None
    for a in ring.atoms:
        if a.order is None:
            _diag(model, sec, "atom-rule violation",
                  f"atom {a.name} of degree {a.degree} is not a power of the common weight of its arguments",
                  "atoms")
    model.rings[sec.name] = ring


def build_ambient(model, sec):
    ring = model.ring_of(sec.require("ring"), sec, "ring")
    stab = sec.get("stability")
    if stab is None:
        chambers = chamber_decomposition(ring)
        if not chambers:
            raise sec.error("ring has no chamber", "ring")
        chamber = chambers[0]
    else:
        try:
            vec = tuple(int(x) for x in stab.replace(",", " ").split())
            chamber = find_chamber(ring, vec)
        except ValueError as exc:
            raise sec.error(str(exc), "stability") from None
    model.ambients[sec.name] = ToricAmbient(ring, chamber, sec.name)


def build_pair(model, sec):
    space = model.space(sec.require("ambient"), sec, "ambient")
    ring = model.ring_of(sec.require("ambient"), sec, "ambient")
    constraints = parse_expr_list(sec, "constraints", ring)
    divisor = parse_expr(sec, "divisor", sec.require("divisor"), ring)
    pair = CYPair.make(space, constraints, divisor, sec.name, check=False)
    for problem in pair_diagnostics(pair):
        kind = "anticanonical mismatch" if problem.startswith("anticanonical mismatch") else "not homogeneous"
        _diag(model, sec, kind, problem.split(": ", 1)[-1], "divisor")
    model.pairs[sec.name] = pair


def build_map(model, sec):
    src = model.space(sec.require("source"), sec, "source")
    tgt = model.space(sec.require("target"), sec, "target")
    src_ring = model.ring_of(sec.require("source"), sec, "source")
    comps = parse_expr_list(sec, "components", src_ring, rational=True)
    exc = parse_expr_list(sec, "exceptional", src_ring)
    try:
        m = RationalMapSpec.make(src, tgt, comps, sec.name, exc)
    except MapError as exc_:
        raise sec.error(str(exc_), "components") from None
    if any(c.is_zero() for c in m.components) and all(c.is_zero() for c in m.components):
        raise sec.error("all components vanish", "components")
    if grading_matrix(m) is None:
        _diag(model, sec, "grading inconsistency",
              "component degrees are not a linear image of the target weight columns", "components")
    model.maps[sec.name] = m


def build_lattice(model, sec):
    names = _names(sec, "basis")
    try:
        gram = [[_rational(x) for x in row.replace(",", " ").split()] for row in split_list(sec.require("gram"))]
        model.lattices[sec.name] = GramLattice(tuple(names), tuple(tuple(r) for r in gram), sec.name)
    except (LatticeError, ValueError) as exc:
        raise sec.error(str(exc), "gram") from None


def _rational(text):
    from fractions import Fraction

    return Fraction(text)


def build_region(model, sec):
    names = _names(sec, "vars")
    try:
        model.regions[sec.name] = Region.parse(names, split_list(sec.require("constraints")))
    except (LatticeError, ParseError) as exc:
        raise sec.error(str(exc), "constraints") from None


def lint_check(model, sec):
    if not sec.has("op"):
        _diag(model, sec, "missing op", "check has no 'op'")
    prov = sec.get("provenance")
    if prov is None:
        _diag(model, sec, "missing provenance", "check has no 'provenance'")
    else:
        tag = prov.split(":", 1)[0].strip()
        if tag not in PROVENANCE_TAGS:
            _diag(model, sec, "bad provenance", f"tag {tag!r} is not one of {', '.join(PROVENANCE_TAGS)}", "provenance")
        elif tag == "DERIVED" and not sec.has("oracle"):
            _diag(model, sec, "missing oracle", "DERIVED expectation needs an 'oracle'", "provenance")
    charts = sec.get("charts")
    if charts and charts != "all" and not charts.isdigit() and sec.has("map"):
        m = model.maps.get(sec.get("map"))
        if m is not None:
            for spec, off in split_list_positions(charts):
                try:
                    su, tu = parse_chart_pair(spec)
                    chart(m.source_ring, su)
                    chart(m.target_ring, tu)
                except (ChartError, RingError, ValueError) as exc:
                    _diag(model, sec, "invalid chart", str(exc), "charts", off)


def parse_chart_pair(spec):
    """``"x0,x3 -> x2"`` to ``(("x0","x3"), ("x2",))``."""
    if "->" not in spec:
        raise ValueError(f"chart pair {spec!r} needs 'source units -> target units'")
    a, b = spec.split("->", 1)
    su = tuple(x for x in re.split(r"[\s,]+", a.strip()) if x)
    tu = tuple(x for x in re.split(r"[\s,]+", b.strip()) if x)
    return su, tu


_BUILDERS = {
    "ring": build_ring,
    "ambient": build_ambient,
    "pair": build_pair,
    "map": build_map,
    "lattice": build_lattice,
    "region": build_region,
}


def build_model(sf, lenient=False):
    """Resolve declarations in file order (declaration before use).

    With ``lenient`` hard errors become diagnostics and the offending
    declaration is skipped; otherwise they raise :class:`ScenarioError`.
    """
    model = Model(sf)
    for sec in sf.sections:
        if sec.kind == "suite":
            continue
        if sec.kind == "check":
            model.checks.append(sec)
            continue
        try:
            _BUILDERS[sec.kind](model, sec)
        except ScenarioError as exc:
            if not lenient:
                raise
            model.diagnostics.append(
                Diagnostic("error", exc.message, f"[{sec.kind} {sec.name}]", exc.line, exc.column, sec.path)
            )
    for sec in model.checks:
        lint_check(model, sec)
    return model
