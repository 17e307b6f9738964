"""Ops on pairs and maps: well-formedness, strict transforms, restriction, volume forms, equality."""
from __future__ import annotations

import re
from fractions import Fraction

from ..algebra.arith import proportional
from ..algebra.ops import multidegree, substitute
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..birmap.maps import RationalMapSpec, default_chart, map_compose, map_equal, pair_diagnostics
from ..birmap.transform import (
    congruent_multiple,
    fixes_divisor_pointwise,
    nonfixed_witness,
    restricts_birationally,
    saturation_roundtrip,
    strict_transform,
)
from ..birmap.volume import chart_pairs, pointwise_ratio, random_chart_point, volume_preserving
from ..toric import chart
from .checks import Outcome, combine, expect_flag, op
from .instances import (
    eval_map,
    eval_poly,
    inst_map,
    inst_pair,
    random_point,
    same_orbit,
)
from .model import parse_chart_pair

# instances -------------------------------------------------------------------


def _instances(ctx, rings, build):
    """Run ``build(inst)`` symbolically and/or on seeded samples.

    ``inst`` maps a symbolic object to the object used in this run.  Returns
    ``[(label, result)]``.
    """
    mode = ctx.mode()
    out = []
    if mode in ("symbolic", "both"):
        out.append(("symbolic", build(lambda x: x)))
    if mode in ("seeded", "both"):
        for k, forms in enumerate(ctx.samples(rings)):
            out.append((f"sample {k}", build(_instantiator(forms))))
    return out


def _instantiator(forms):
    from ..algebra.ops import instantiate

    def inst(x):
        if isinstance(x, RationalMapSpec):
            return inst_map(x, forms)
        if isinstance(x, (Poly, RatFunc)):
            return instantiate(x, forms)
        return inst_pair(x, forms)

    inst.forms = forms
    return inst


# well-formedness ----------------------------------------------------------------


def scaling_degree(p, rng, tries=3):
    """Oracle multidegree: scale coordinates by ``2^w`` and read off the exponent of 2."""
    ring = p.ring
    degrees = []
    for row in ring.weights:
        seen = set()
        for _ in range(tries):
            for _ in range(20):
                x = random_point(ring.variables, rng)
                base = eval_poly(p, x)
                if base != 0:
                    break
            else:
                return None
            y = {v: x[v] * Fraction(2) ** w for v, w in zip(ring.variables, row)}
            ratio = eval_poly(p, y) / base
            d = _log2(ratio)
            if d is None:
                return None
            seen.add(d)
        if len(seen) != 1:
            return None
        degrees.append(seen.pop())
    return tuple(degrees)


def _log2(q):
    if q <= 0:
        return None
    for d in range(-80, 81):
        if Fraction(2) ** d == q:
            return d
    return None


@op("wellformed", oracles=("torus_scaling",))
def op_wellformed(ctx):
    pair = ctx.pair("pair")
    problems = pair_diagnostics(pair)
    degs = [multidegree(pair.divisor)] + [multidegree(g) for g in pair.constraints]
    anti = pair.ring.anticanonical_degree()
    total = None
    if all(d is not None for d in degs):
        total = tuple(map(sum, zip(*degs)))
    ok = not problems and total == anti
    witness = {"multidegrees": degs, "anticanonical": anti, "problems": problems}
    parts = [ok == expect_flag(ctx)]
    if ctx.oracle == "torus_scaling":
        rng = ctx.rng("scaling")
        agree = True
        for forms in ctx.samples([pair.ring]):
            ip = inst_pair(pair, forms)
            odegs = [scaling_degree(p, rng) for p in (ip.divisor,) + ip.constraints]
            ototal = tuple(map(sum, zip(*odegs))) if all(d is not None for d in odegs) else None
            agree = agree and ototal == total and (ototal == anti) == ok
        witness["oracle"] = {"name": "torus_scaling", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


# strict transforms ---------------------------------------------------------------

_REMOVED = re.compile(r"^(.*):\s*(\d+)$")


def _expected_removed(ctx, ring):
    out = []
    for item in ctx.items("removed"):
        m = _REMOVED.match(item)
        if not m:
            raise ctx.error(f"removed factor {item!r} must look like EXPR:MULT", "removed")
        from ..algebra.parse import poly_parse

        out.append((poly_parse(m.group(1), ring), int(m.group(2))))
    return out


def _same_factors(got, want):
    if len(got) != len(want):
        return False
    left = list(got)
    for f, k in want:
        for i, (g, j) in enumerate(left):
            if j == k and proportional(g, f) is not None:
                del left[i]
                break
        else:
            return False
    return True


@op("strict_transform", oracles=("saturation_roundtrip", "certificate_evaluation"))
def op_strict_transform(ctx):
    """Strict transform of the ``divisor`` pair's divisor along ``map`` versus the ``expect`` pair.

    ``holds = false`` inverts the verdict for negative checks.

    With ``modulo = VAR`` the comparison is made modulo the expected pair's
    constraint, searching powers of the map's exceptional polynomials.
    """
    m = ctx.map("map")
    tgt = ctx.pair("divisor")
    src = ctx.pair("expect")
    var = ctx.get("modulo", None)
    want_removed = _expected_removed(ctx, m.source_ring) if ctx.get("removed", None) else None
    rings = [m.source_ring, m.target_ring]

    def build(inst):
        mm, t, s = inst(m), inst(tgt), inst(src)
        res = {}
        if var is None:
            strict, removed = strict_transform(t.divisor, mm, mm.exceptional)
            c = proportional(strict, s.divisor)
            ok = c is not None
            if want_removed is not None:
                wr = [(inst(f), k) for f, k in want_removed]
                ok = ok and _same_factors(removed, wr)
            res.update(strict=strict, removed=[[f, k] for f, k in removed], constant=c)
            if ctx.oracle == "saturation_roundtrip":
                res["roundtrip"] = saturation_roundtrip(t.divisor, mm, mm.exceptional)
        else:
            strict, removed = strict_transform(t.divisor, mm, ())
            found = congruent_multiple(strict, s.divisor, s.constraints[0], var, list(mm.exceptional))
            ok = found is not None
            if ok:
                c, mults, cof = found
                res.update(constant=c, multiplicities=list(mults), cofactor=cof,
                           exceptional=list(mm.exceptional))
                if ctx.oracle == "certificate_evaluation":
                    res["certificate"] = _certificate_holds(ctx, strict, s.divisor, s.constraints[0],
                                                            mm.exceptional, mults, c, cof)
            res["strict"] = strict
        return ok, res

    runs = _instances(ctx, rings, build)
    parts = [ok for _, (ok, _) in runs]
    witness = {label: res for label, (_, res) in runs}
    if ctx.oracle == "saturation_roundtrip":
        agree = all(res.get("roundtrip", False) for _, (_, res) in runs)
        witness["oracle"] = {"name": "saturation_roundtrip", "agrees": agree}
        parts.append(agree)
    if ctx.oracle == "certificate_evaluation":
        agree = all(res.get("certificate", False) for _, (_, res) in runs)
        witness["oracle"] = {"name": "certificate_evaluation", "agrees": agree}
        parts.append(agree)
    result = combine(parts)
    want = ctx.flag("holds", True)
    return Outcome.of(result if want else (None if result is None else not result), witness)


def _certificate_holds(ctx, p, target, constraint, exceptional, mults, c, cofactor, points=4):
    """Evaluate ``p - c*target*prod(e^m) - cofactor*constraint`` at random points (after instantiation)."""
    from ..algebra.ops import instantiate
    from .instances import forms_for

    forms = forms_for([p.ring], ctx.seed, 977)
    polys = [instantiate(x, forms) for x in (p, target, constraint, cofactor)]
    exc = [instantiate(e, forms) for e in exceptional]
    rng = ctx.rng("certificate")
    ring = polys[0].ring
    for _ in range(points):
        x = random_point(ring.variables, rng)
        vp, vt, vg, vk = (eval_poly(q, x) for q in polys)
        ve = Fraction(1)
        for e, k in zip(exc, mults):
            ve *= eval_poly(e, x) ** k
        if vp - c * vt * ve - vk * vg != 0:
            return False
    return True


# restriction of divisors (constraint-bearing pairs) ---------------------------------


@op("restricts_birationally", oracles=("certificate_evaluation",))
def op_restricts(ctx):
    m = ctx.map("map")
    src, tgt = ctx.pair("source"), ctx.pair("target")
    inverse = ctx.map("inverse") if ctx.get("inverse", None) else None
    var = ctx.get("elimination", None)
    inv_exc = ctx.polys("inverse_exceptional", m.target_ring) if ctx.get("inverse_exceptional", None) else []
    rings = [m.source_ring, m.target_ring]

    def build(inst):
        inv = inst(inverse) if inverse is not None else None
        rep = restricts_birationally(inst(m), inst(src), inst(tgt), var, inv, None,
                                     [inst(e) for e in inv_exc])
        res = {"holds": rep.holds, "reason": rep.reason,
               "forward_constant": rep.forward.get("constant"),
               "removed": [[f, k] for f, k in rep.forward.get("removed", [])],
               "inverse": rep.inverse}
        if ctx.oracle == "certificate_evaluation" and rep.holds and "cofactor" in rep.inverse:
            t = inst(tgt)
            pb = substitute(inst(src).divisor, inv.component_map(), inv.source_ring)
            pb = pb.num if isinstance(pb, RatFunc) else pb
            res["certificate"] = _certificate_holds(
                ctx, pb, t.divisor, t.constraints[0], [inst(e) for e in inv_exc],
                rep.inverse["multiplicities"], rep.inverse["constant"], rep.inverse["cofactor"])
        return rep.holds, res

    runs = _instances(ctx, rings, build)
    want = expect_flag(ctx)
    parts = [ok == want for _, (ok, _) in runs]
    witness = {label: res for label, (_, res) in runs}
    if ctx.oracle == "certificate_evaluation":
        agree = all(res.get("certificate", not want) for _, (_, res) in runs)
        witness["oracle"] = {"name": "certificate_evaluation", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


# volume forms -------------------------------------------------------------------------


def _chart_list(ctx, m):
    spec = ctx.get("charts", "all")
    if spec == "all":
        return chart_pairs(m)
    if spec.isdigit():
        return chart_pairs(m)[: int(spec)]
    out = []
    for text in ctx.items("charts"):
        su, tu = parse_chart_pair(text)
        out.append((su, tu))
    return out


@op("volume_preserving", oracles=("dual_number",))
def op_volume_preserving(ctx):
    """λ on every listed chart pair; pass iff all agree (and match ``lambda`` when given)."""
    m = ctx.map("map")
    src, tgt = ctx.pair("source"), ctx.pair("target")
    want = ctx.get("expect", "preserved")
    want_lam = ctx.rational("lambda", None)
    pairs = _chart_list(ctx, m)
    if len(pairs) < 1:
        raise ctx.error("no valid chart pair", "charts")
    reports = []
    for su, tu in pairs:
        r = volume_preserving(m, src, tgt, su, tu)
        reports.append(r)
    lams = {r.lam for r in reports}
    preserved = all(r.preserved for r in reports) and len(lams) == 1
    lam = lams.pop() if preserved else None
    witness = {
        "charts": [[list(su), list(tu)] for su, tu in pairs],
        "lambda": lam,
        "statuses": sorted({r.status for r in reports}),
        "chart_pairs": len(pairs),
    }
    if not preserved:
        bad = next((r for r in reports if not r.preserved), reports[0])
        witness["residual"] = bad.residual
        witness["ratio"] = bad.ratio
    if want == "preserved":
        ok = preserved and (want_lam is None or lam == want_lam)
    elif want == "violated":
        ok = all(not r.preserved for r in reports)
    else:
        raise ctx.error("'expect' must be preserved or violated", "expect")
    parts = [ok]
    if ctx.oracle == "dual_number":
        agree = _dual_oracle(ctx, m, src, tgt, pairs[: ctx.int("oracle_charts", 2)], reports)
        witness["oracle"] = {"name": "dual_number", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


def _dual_oracle(ctx, m, src, tgt, pairs, reports, points=3):
    """Oracle: dual-number Jacobians at random points of seeded instances.

    A preserved report must match λ at every point; a violated one must
    show at least two distinct values.
    """
    rng = ctx.rng("dual")
    for forms in ctx.samples([m.source_ring, m.target_ring]):
        mm, s, t = inst_map(m, forms), inst_pair(src, forms), inst_pair(tgt, forms)
        for (su, tu), rep in zip(pairs, reports):
            ch = chart(mm.source_ring, su)
            values = []
            for _ in range(20 * points):
                try:
                    values.append(pointwise_ratio(mm, s, t, su, tu, random_chart_point(ch, rng)))
                except ZeroDivisionError:
                    continue
                if len(values) == points:
                    break
            if len(values) < points:
                return False
            if rep.preserved and any(v != rep.lam for v in values):
                return False
            if not rep.preserved and len(set(values)) == 1:
                return False
    return True


# equality of maps ------------------------------------------------------------------------


def _compose_all(maps):
    out = maps[0]
    for g in maps[1:]:
        out = map_compose(out, g)
    return out


def _apply_all(maps, point):
    for m in maps:
        point = eval_map(m, point)
        if point is None:
            return None
    return point


def _pointwise_equal(ctx, chain, other, points=4):
    """Oracle: push random points through the chain and compare torus orbits."""
    rng = ctx.rng("pointwise")
    rings = [m.source_ring for m in chain] + [chain[-1].target_ring, other.source_ring]
    verdicts = []
    for forms in ctx.samples(rings):
        ic = [inst_map(m, forms) for m in chain]
        io = inst_map(other, forms)
        done = 0
        for _ in range(10 * points):
            x = random_point(ic[0].source_ring.variables, rng)
            a, b = _apply_all(ic, x), eval_map(io, x)
            if a is None or b is None or not any(a.values()) or not any(b.values()):
                continue
            verdicts.append(same_orbit(io.target_ring, a, b))
            done += 1
            if done == points:
                break
    return verdicts


@op("map_equal", oracles=("pointwise",))
def op_map_equal(ctx):
    """``maps`` composed left to right (first listed is applied first) against ``equals``."""
    chain = ctx.maps("maps")
    other = ctx.map("equals")
    units = ctx.names("chart", None)
    want = expect_flag(ctx)
    comp = _compose_all(chain)
    ch = chart(comp.target_ring, units) if units else default_chart(comp, (other,))
    eq = map_equal(comp, other, ch)
    witness = {"composite": str(comp), "chart": list(ch.units), "equal": eq}
    parts = [eq == want]
    if ctx.oracle == "pointwise":
        verdicts = _pointwise_equal(ctx, chain, other)
        agree = bool(verdicts) and (all(verdicts) if want else not all(verdicts))
        witness["oracle"] = {"name": "pointwise", "agrees": agree, "points": len(verdicts)}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


@op("involution", oracles=("pointwise",))
def op_involution(ctx):
    m = ctx.map("map")
    ident = RationalMapSpec.identity(m.source, "id")
    comp = map_compose(m, m)
    eq = map_equal(comp, ident)
    witness = {"square": str(comp), "identity": eq}
    want = expect_flag(ctx)
    parts = [eq == want]
    if ctx.oracle == "pointwise":
        verdicts = _pointwise_equal(ctx, [m, m], ident)
        agree = bool(verdicts) and (all(verdicts) if want else not all(verdicts))
        witness["oracle"] = {"name": "pointwise", "agrees": agree, "points": len(verdicts)}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


@op("fixes_pointwise", oracles=("pointwise",))
def op_fixes_pointwise(ctx):
    m = ctx.map("map")
    pair = ctx.pair("pair")
    fixed = fixes_divisor_pointwise(m, pair.divisor)
    witness = {"fixed": fixed}
    if not fixed:
        witness["nonfixed_pair"] = nonfixed_witness(m, pair.divisor)
    return Outcome.of(fixed == expect_flag(ctx), witness)


# polynomial identities --------------------------------------------------------------------


def _bindings(ctx, ring):
    """``substitute = y: EXPR; x3: EXPR`` as simultaneous bindings (identity elsewhere)."""
    out = {v: RatFunc.symbol(ring, v) for v in ring.variables}
    from .model import parse_expr

    for text, off in _positions(ctx.get("substitute", "")):
        if ":" not in text:
            raise ctx.error("substitution must look like VAR: EXPR", "substitute", off)
        var, expr = text.split(":", 1)
        var = var.strip()
        if var not in ring.variables:
            raise ctx.error(f"unknown variable {var!r}", "substitute", off)
        out[var] = parse_expr(ctx.sec, "substitute", expr, ring, off + text.index(":") + 1, True)
    return out


def _positions(value):
    from .format import split_list_positions

    return split_list_positions(value)


@op("poly_identity", oracles=("evaluation",))
def op_poly_identity(ctx):
    """``lhs`` (after the optional substitution) equals ``constant * rhs``; ``constant = any`` allows any nonzero scalar."""
    ring = ctx.ring("ring")
    lhs, rhs = ctx.poly("lhs", ring), ctx.poly("rhs", ring)
    bind = _bindings(ctx, ring) if ctx.get("substitute", None) else None
    new = substitute(lhs, bind, ring) if bind else RatFunc.from_poly(lhs)
    cspec = ctx.get("constant", "1")
    if cspec == "any":
        c = proportional(new.num, rhs) if new.den.is_constant() else None
        if c is not None:
            c = c / new.den.constant_value()
        ok = c is not None
    else:
        c = ctx.rational("constant", Fraction(1))
        ok = new == RatFunc.from_poly(rhs.scale(c))
    witness = {"lhs": new, "rhs": rhs, "constant": c}
    want = expect_flag(ctx)
    parts = [ok == want]
    if ctx.oracle == "evaluation":
        agree = _evaluation_oracle(ctx, ring, lhs, rhs, bind, c) == ok
        witness["oracle"] = {"name": "evaluation", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


def _evaluation_oracle(ctx, ring, lhs, rhs, bind, c, points=6):
    from ..algebra.ops import instantiate

    if c is None:
        return False
    rng = ctx.rng("evaluation")
    for forms in ctx.samples([ring]):
        il, ir = instantiate(lhs, forms), instantiate(rhs, forms)
        ib = {v: instantiate(b, forms) for v, b in bind.items()} if bind else None
        for _ in range(points):
            x = random_point(ring.variables, rng)
            if ib:
                y = {}
                for v, b in ib.items():
                    den = eval_poly(b.den, x)
                    if den == 0:
                        break
                    y[v] = eval_poly(b.num, x) / den
                else:
                    if eval_poly(il, y) != c * eval_poly(ir, x):
                        return False
                continue
            if eval_poly(il, x) != c * eval_poly(ir, x):
                return False
    return True

