"""Randomized invariants run as scenario checks (``op = property``)."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from ..algebra.ops import multidegree, seeded_forms
from ..algebra.parse import poly_parse, poly_print
from ..algebra.poly import Poly
from ..algebra.ring import GradedRing
from ..birmap.singular import classify_germ
from ..birmap.volume import chart_pairs, volume_preserving
from ..lattice import GramLattice, Region, det, integer_points, integer_points_bruteforce, sublattice_det
from .checks import Outcome, op
from .instances import atom_specs, inst_map, inst_pair

PROPERTIES = {}


def prop(name):
    def deco(fn):
        PROPERTIES[name] = fn
        return fn

    return deco


def _coeff(rng):
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 12), rng.choice([1, 1, 2, 3, 7]))


@lru_cache(maxsize=None)
def _p3_ring():
    return GradedRing.make(["x0", "x1", "x2", "x3"], [[1, 1, 1, 1]],
                           [("B", ("x0", "x1", "x2"), 3), ("C", ("x0", "x1", "x2"), 4)])


@prop("parser_roundtrip")
def parser_roundtrip(ctx, rng):
    """print then parse returns the same polynomial, and printing is stable."""
    ring = _p3_ring()
    p = Poly.zero(ring)
    for _ in range(rng.randint(0, 6)):
        e = tuple(rng.randint(0, 3) for _ in range(ring.nsym))
        p = p + Poly.monomial(ring, e, _coeff(rng))
    text = poly_print(p)
    q = poly_parse(text, ring)
    return q == p and poly_print(q) == text, {"poly": text}


@lru_cache(maxsize=None)
def _f1_classes():
    ring = GradedRing.make(["x0", "x1", "x2", "x3", "x"], [[1, 1, 1, 0, -1], [0, 0, 0, 1, 1]],
                           [("B", ("x0", "x1", "x2"), (3, 0)), ("C", ("x0", "x1", "x2"), (4, 0))])
    classes = {}
    for e in itertools.product(range(3), repeat=ring.n):
        for a in itertools.product(range(2), repeat=len(ring.atoms)):
            mono = Poly.monomial(ring, e + a)
            classes.setdefault(multidegree(mono), []).append(e + a)
    return ring, sorted(classes.items())


def _homogeneous(rng):
    ring, classes = _f1_classes()
    _, monos = rng.choice(classes)
    p = Poly.zero(ring)
    for e in rng.sample(monos, min(len(monos), rng.randint(1, 4))):
        p = p + Poly.monomial(ring, e, _coeff(rng))
    return p


@prop("multidegree_multiplicative")
def multidegree_multiplicative(ctx, rng):
    """``deg(pq) = deg p + deg q`` for random homogeneous p, q in a rank-two grading."""
    p, q = _homogeneous(rng), _homogeneous(rng)
    dp, dq, dpq = multidegree(p), multidegree(q), multidegree(p * q)
    ok = dp is not None and dq is not None and dpq == tuple(a + b for a, b in zip(dp, dq))
    return ok, {"p": p, "q": q}


def _links(ctx):
    out = []
    for text in ctx.items("links"):
        name, rest = text.split(":", 1)
        src, tgt = (x.strip() for x in rest.split("->"))
        out.append((ctx.model.get("map", name.strip(), ctx.sec, "links"),
                    ctx.model.get("pair", src, ctx.sec, "links"),
                    ctx.model.get("pair", tgt, ctx.sec, "links")))
    if not out:
        raise ctx.error("chart_independence needs 'links = MAP: SRC -> TGT; ...'", "links")
    return out


@prop("chart_independence")
def chart_independence(ctx, rng):
    """λ agrees on two random chart pairs of a random seeded link instance."""
    m, src, tgt = rng.choice(_links(ctx))
    forms = seeded_forms(atom_specs([m.source_ring, m.target_ring]), rng.randint(0, 10 ** 9))
    mm, s, t = inst_map(m, forms), inst_pair(src, forms), inst_pair(tgt, forms)
    pairs = chart_pairs(mm)
    a, b = rng.sample(pairs, 2)
    ra = volume_preserving(mm, s, t, *a)
    rb = volume_preserving(mm, s, t, *b)
    ok = ra.preserved and rb.preserved and ra.lam == rb.lam
    return ok, {"map": m.name, "charts": [a, b], "lambda": [ra.lam, rb.lam]}


def _random_region(rng):
    n = rng.choice([2, 2, 3])
    names = [f"b{i}" for i in range(n)]
    box = rng.randint(2, 6)
    cons = []
    for v in names:
        cons.append(f"{v} >= {-box}")
        cons.append(f"{v} <= {box}")
    for _ in range(rng.randint(1, 4)):
        coeffs = [rng.randint(-5, 5) for _ in names]
        lhs = " + ".join(f"{c}*{v}" for c, v in zip(coeffs, names))
        op_ = "=" if rng.random() < 0.1 else ">="
        cons.append(f"{lhs} + {rng.randint(-4, 12)} {op_} 0")
    return Region.parse(names, cons), box


@prop("integer_points_box")
def integer_points_box(ctx, rng):
    """Fourier-Motzkin enumeration equals a bounding-box scan."""
    region, box = _random_region(rng)
    got = integer_points(region)
    return got == integer_points_bruteforce(region, box + 1), {"constraints": region.constraint_strings()}


def _unimodular(rng, n):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(1, 8)):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.3:
            m[i], m[j] = m[j], m[i]
        if rng.random() < 0.2:
            m[i] = [-a for a in m[i]]
    return m


@prop("unimodular_det")
def unimodular_det(ctx, rng):
    """The Gram determinant is unchanged by a unimodular change of basis."""
    n = rng.randint(2, 4)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = rng.randint(-4, 4)
    lat = GramLattice(tuple(f"e{i}" for i in range(n)), tuple(map(tuple, g)))
    u = _unimodular(rng, n)
    classes = [lat.vector(row) for row in u]
    return sublattice_det(classes) == det(lat.gram), {"gram": g, "basis": u}


@lru_cache(maxsize=None)
def _uvw():
    return GradedRing.make(["u", "v", "w"], [[1, 1, 1]])


@prop("classify_normal_forms")
def classify_normal_forms(ctx, rng):
    """``u^2 + v^2 + w^(k+1)`` is A_k after a random invertible rational linear change."""
    max_k = ctx.int("max_k", 5)
    k = rng.randint(1, max_k)
    ring = _uvw()
    while True:
        t = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3)] for _ in range(3)]
        if det(t) != 0:
            break
    xs = [Poly.symbol(ring, v) for v in ring.variables]
    lin = [sum((xs[j].scale(t[i][j]) for j in range(3)), Poly.zero(ring)) for i in range(3)]
    f = lin[0] ** 2 + lin[1] ** 2 + lin[2] ** (k + 1)
    got = classify_germ(f, ring.variables, max_k + 2)
    return str(got) == f"A{k}", {"k": k, "matrix": t, "got": str(got)}


@op("property")
def op_property(ctx):
    name = ctx.get("name")
    if name not in PROPERTIES:
        raise ctx.error(f"unknown property '{name}' (known: {', '.join(sorted(PROPERTIES))})", "name")
    n = ctx.int("instances", 100)
    rng = random.Random(f"{ctx.seed}:{name}")
    failures = []
    for i in range(n):
        ok, info = PROPERTIES[name](ctx, rng)
        if not ok:
            failures.append({"instance": i, **info})
    return Outcome.of(not failures, {"instances": n, "failures": len(failures), "first_failure": failures[:1]})

