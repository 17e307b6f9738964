"""Toric chamber ops and local singularity ops."""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction

from ..algebra.ops import instantiate
from ..birmap.singular import (
    AkType,
    classify_Ak,
    nullspace,
    probe_cA,
    quadratic_matrix,
    reid_tai,
    reid_tai_bruteforce,
    tangent_cone,
)
from ..lattice import basic_feasible_solutions, det
from ..toric import (
    CyclicQuotient,
    chamber_decomposition,
    chart,
    chart_quotient,
    classify_wall,
    find_chamber,
    irrelevant_ideal,
    same_quotient_type,
    two_ray_game,
    wall_between,
)
from .checks import Outcome, combine, op

# toric ------------------------------------------------------------------------------


def _chamber(ctx, ring):
    stab = ctx.get("stability", None)
    if stab is None:
        return chamber_decomposition(ring)[0]
    try:
        return find_chamber(ring, tuple(ctx.ints("stability")))
    except ValueError as exc:
        raise ctx.error(str(exc), "stability") from None


def _rays(text):
    return [tuple(int(x) for x in m.split(",")) for m in re.findall(r"\(([^)]*)\)", text)]


def stable_subsets(ring, w, eps=Fraction(1, 1000)):
    """Oracle: minimal variable sets ``S`` with ``w`` in the relative interior of the cone of their columns.

    ``w`` lies in the relative interior iff ``w - eps * sum(columns)`` is a
    nonnegative combination of the columns, for small ``eps``; feasibility is
    decided by exact vertex enumeration.
    """
    names = list(ring.variables)
    cols = {v: ring.column(v) for v in names}
    found = []
    for size in range(1, len(names) + 1):
        for sub in itertools.combinations(names, size):
            if any(set(f) <= set(sub) for f in found):
                continue
            shifted = [Fraction(w[i]) - eps * sum(cols[v][i] for v in sub) for i in range(ring.rank)]
            if basic_feasible_solutions([cols[v] for v in sub], shifted):
                found.append(sub)
    return {frozenset(f) for f in found}


def sampled_chamber_count(ring, box=4):
    """Oracle: distinct stable-subset patterns over generic integer stability directions."""
    cols = [ring.column(v) for v in ring.variables]
    if ring.rank == 1:
        dirs = [(1,), (-1,)]
    else:
        dirs = [(a, b) for a in range(-box, box + 1) for b in range(-box, box + 1)
                if (a, b) != (0, 0) and math.gcd(a, b) == 1 and all(a * c[1] - b * c[0] for c in cols if any(c))]
    patterns = {frozenset(stable_subsets(ring, w)) for w in dirs}
    patterns.discard(frozenset())
    return len(patterns)


@op("chambers", oracles=("sampled_stability",))
def op_chambers(ctx):
    """Count and boundary rays of the chambers, counterclockwise."""
    ring = ctx.ring("ring")
    chambers = chamber_decomposition(ring)
    witness = {"chambers": [str(ch) for ch in chambers], "count": len(chambers)}
    parts = [len(chambers) == ctx.int("expect_count")]
    if ctx.oracle == "sampled_stability":
        n = sampled_chamber_count(ring)
        witness["oracle"] = {"name": "sampled_stability", "agrees": n == len(chambers), "count": n}
        parts.append(n == len(chambers))
    if ctx.get("expect_rays", None):
        rays = []
        for ch in chambers:
            for r in ch.rays:
                if r not in rays:
                    rays.append(r)
        witness["rays"] = rays
        parts.append(rays == _rays(ctx.get("expect_rays")))
    return Outcome.of(combine(parts), witness)


@op("irrelevant_ideal", oracles=("stable_subsets",))
def op_irrelevant(ctx):
    """Irrelevant ideal of a chamber (``stability`` picks it) or of a stability vector on a ray."""
    ring = ctx.ring("ring")
    if ctx.get("stability", None) and ctx.flag("on_ray", False):
        w = tuple(ctx.ints("stability"))
    else:
        w = _chamber(ctx, ring).interior_point()
    ideal = irrelevant_ideal(ring, w)
    got = str(ideal).replace(" ", "")
    want = ctx.get("expect").replace(" ", "")
    witness = {"ideal": got, "generators": [list(g) for g in ideal.generators]}
    parts = [got == want]
    if ctx.oracle == "stable_subsets":
        agree = stable_subsets(ring, w) == {frozenset(g) for g in ideal.generators}
        witness["oracle"] = {"name": "stable_subsets", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


@op("wall")
def op_wall(ctx):
    """Classification of the wall ``ray`` of the chamber containing ``stability``."""
    ring = ctx.ring("ring")
    ch = _chamber(ctx, ring)
    ray = tuple(ctx.ints("ray"))
    try:
        w = wall_between(ring, ch, ray)
    except ValueError as exc:
        raise ctx.error(str(exc), "ray") from None
    kind = str(classify_wall(ring, w))
    return Outcome.of(kind == ctx.get("expect").replace(" ", ""),
                      {"classification": kind, "to": None if w.to_chamber is None else str(w.to_chamber)})


@op("two_ray_game")
def op_two_ray_game(ctx):
    """Sequence of wall classifications met from the chamber of ``stability``."""
    ring = ctx.ring("ring")
    ch = _chamber(ctx, ring)
    steps = two_ray_game(ring, ch)
    got = [str(kind) for _, kind in steps]
    want = [x.replace(" ", "") for x in ctx.items("expect")]
    return Outcome.of(got == want, {"chamber": str(ch), "steps": [[list(w.ray), k] for (w, _), k in zip(steps, got)]})


def _parse_quotient(ctx, key):
    m = re.fullmatch(r"\s*1/(\d+)\(([^)]*)\)\s*", ctx.get(key))
    if not m:
        raise ctx.error("quotient type must look like 1/r(a,b,c)", key)
    return CyclicQuotient(int(m.group(1)), tuple(int(x) for x in m.group(2).split(",")))


@op("chart_quotient", oracles=("bruteforce",))
def op_chart_quotient(ctx):
    """Cyclic quotient singularity of a non-unimodular chart and its Reid-Tai class."""
    ring = ctx.ring("ring")
    units = tuple(ctx.names("units"))
    q = chart_quotient(ring, units)
    parts = []
    witness = {"quotient": str(q)}
    if ctx.get("expect", None):
        parts.append(same_quotient_type(q, _parse_quotient(ctx, "expect")))
    kind = reid_tai(q.r, q.weights).kind
    witness["type"] = kind
    if ctx.get("expect_type", None):
        parts.append(kind == ctx.get("expect_type"))
    if ctx.oracle == "bruteforce":
        agree = reid_tai_bruteforce(q.r, q.weights) == kind
        witness["oracle"] = {"name": "bruteforce", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


# quotient singularities ----------------------------------------------------------------


@op("reid_tai", oracles=("bruteforce",))
def op_reid_tai(ctx):
    r = ctx.int("r")
    weights = tuple(ctx.ints("weights"))
    got = reid_tai(r, weights)
    witness = {"type": got.kind, "ages": got.ages}
    parts = [got.kind == ctx.get("expect")]
    if ctx.oracle == "bruteforce":
        agree = reid_tai_bruteforce(r, weights) == got.kind
        witness["oracle"] = {"name": "bruteforce", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


@op("reid_tai_exhaustive", oracles=("bruteforce",))
def op_reid_tai_exhaustive(ctx):
    """Compare the age criterion with the brute-force oracle on every ``1/r(a,b,c)``, ``r <= max_r``."""
    max_r = ctx.int("max_r")
    checked = 0
    mismatches = []
    counts = {}
    for r in range(1, max_r + 1):
        for w in itertools.combinations_with_replacement(range(r), 3):
            a = reid_tai(r, w).kind
            counts[a] = counts.get(a, 0) + 1
            checked += 1
            if ctx.oracle == "bruteforce" and reid_tai_bruteforce(r, w) != a:
                mismatches.append([r, list(w)])
    witness = {"checked": checked, "counts": counts, "mismatches": mismatches[:10]}
    if ctx.oracle == "bruteforce":
        witness["oracle"] = {"name": "bruteforce", "agrees": not mismatches}
    return Outcome.of(not mismatches, witness)


# hypersurface germs ----------------------------------------------------------------------


def _point(ctx):
    return tuple(Fraction(x) for x in ctx.get("point").replace(",", " ").split())


def _germ_inputs(ctx):
    """The polynomial of ``pair`` (divisor, or first constraint with ``use = constraint``)."""
    pair = ctx.pair("pair")
    use = ctx.get("use", "divisor")
    if use == "divisor":
        p = pair.divisor
    elif use == "constraint":
        p = pair.constraints[0]
    else:
        raise ctx.error("'use' must be divisor or constraint", "use")
    return p, tuple(ctx.names("chart")), _point(ctx)


def _germ_samples(ctx, p):
    if not p.ring.atoms:
        return [("exact", p)]
    return [(f"sample {k}", instantiate(p, forms)) for k, forms in enumerate(ctx.samples([p.ring]))]


def minor_rank(m):
    """Oracle rank: the largest size of a nonzero minor."""
    n = len(m)
    for k in range(n, 0, -1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                if det([[m[i][j] for j in cols] for i in rows]) != 0:
                    return k
    return 0


@op("tangent_cone", oracles=("minor_rank",))
def op_tangent_cone(ctx):
    p, ch, pt = _germ_inputs(ctx)
    want_mult = ctx.int("expect_multiplicity", None)
    want_rank = ctx.int("expect_rank", None)
    parts, witness = [], {}
    for label, q in _germ_samples(ctx, p):
        tc = tangent_cone(q, ch, pt)
        entry = {"multiplicity": tc.multiplicity, "rank": tc.quadratic_rank, "lowest_form": tc.lowest_form}
        ok = (want_mult is None or tc.multiplicity == want_mult) and (want_rank is None or tc.quadratic_rank == want_rank)
        parts.append(ok)
        if ctx.oracle == "minor_rank" and tc.multiplicity == 2:
            mat = quadratic_matrix(tc.lowest_form, chart(q.ring, ch).coordinates)
            entry["oracle_rank"] = minor_rank(mat)
            parts.append(entry["oracle_rank"] == tc.quadratic_rank)
        witness[label] = entry
    if ctx.oracle == "minor_rank":
        witness["oracle"] = {"name": "minor_rank", "agrees": all(
            e.get("oracle_rank", e["rank"]) == e["rank"] for e in witness.values() if isinstance(e, dict))}
    return Outcome.of(combine(parts), witness)


def kernel_cubic_type(q, ch, pt):
    """Oracle for A1/A2: corank of the quadric and the cubic term along its kernel.

    A nondegenerate quadric gives A1; corank one with the cubic term nonzero
    on the kernel line gives A2.  Anything else is left undecided (``None``).
    """
    from ..birmap.singular import _local

    chart_obj, f = _local(q, ch, pt)
    coords = chart_obj.coordinates
    parts = f.homogeneous_parts()
    quad = parts.get(2)
    if quad is None or 1 in parts or 0 in parts:
        return None
    mat = quadratic_matrix(quad, coords)
    rank = minor_rank(mat)
    n = len(coords)
    if rank == n:
        return AkType("A", 1)
    if rank != n - 1:
        return None
    (k,) = nullspace(mat)
    cubic = parts.get(3)
    if cubic is None:
        return None
    value = cubic.evaluate({v: Fraction(x) for v, x in zip(coords, k)}, one=Fraction(1))
    return AkType("A", 2) if value != 0 else None


@op("classify_Ak", oracles=("kernel_cubic",))
def op_classify_ak(ctx):
    p, ch, pt = _germ_inputs(ctx)
    max_k = ctx.int("max_k", 6)
    want = ctx.get("expect")
    parts, witness = [], {}
    for label, q in _germ_samples(ctx, p):
        got = classify_Ak(q, ch, pt, max_k)
        entry = {"type": str(got)}
        parts.append(None if got.kind == "Undetermined" else str(got) == want)
        if ctx.oracle == "kernel_cubic":
            o = kernel_cubic_type(q, ch, pt)
            entry["oracle"] = None if o is None else str(o)
            parts.append(o is not None and str(o) == str(got))
        witness[label] = entry
    if ctx.oracle == "kernel_cubic":
        witness["oracle"] = {"name": "kernel_cubic",
                             "agrees": all(e.get("oracle") == e["type"] for e in witness.values())}
    return Outcome.of(combine(parts), witness)


@op("probe_cA")
def op_probe_ca(ctx):
    """Multiplicity 2, quadric rank 2 and a nonzero cubic on the kernel: compatible with cA2."""
    p, ch, pt = _germ_inputs(ctx)
    parts, witness = [], {}
    for label, q in _germ_samples(ctx, p):
        probe = probe_cA(q, ch, pt)
        witness[label] = {"multiplicity": probe.multiplicity, "rank": probe.quadratic_rank,
                          "restricted_cubic": probe.restricted_cubic, "compatible": probe.compatible_cA2}
        parts.append(probe.compatible_cA2 == ctx.flag("expect", True))
    return Outcome.of(combine(parts), witness)

