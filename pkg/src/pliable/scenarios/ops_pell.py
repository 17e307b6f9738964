"""Ops for the Pell conic: the norm identity, components of G_Q, and the self-map families."""
from __future__ import annotations

from fractions import Fraction

from ..algebra.ops import instantiate, random_form, substitute
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..birmap.maps import CYPair
from ..birmap.pell import (
    COMPONENT_1,
    COMPONENT_2,
    NOT_A_MEMBER,
    gq_membership,
    gq_rank_condition,
    pell_identity,
    pell_matrix,
    pell_selfmap,
    pell_solution,
)
from ..birmap.transform import fixes_divisor_pointwise
from ..birmap.volume import pointwise_ratio, random_chart_point, volume_preserving
from ..toric import chart
from .checks import Outcome, combine, op

_COMPONENTS = {"1": COMPONENT_1, "2": COMPONENT_2, "none": NOT_A_MEMBER}


@op("pell_identity", oracles=("evaluation",))
def op_pell_identity(ctx):
    ring = ctx.ring("ring")
    A, B, C, u, v = (ctx.poly(k, ring) for k in ("A", "B", "C", "u", "v"))
    lhs, rhs = pell_identity(A, B, C, u, v)
    ok = lhs == rhs
    witness = {"lhs": lhs, "rhs": rhs}
    parts = [ok]
    if ctx.oracle == "evaluation":
        from .instances import eval_poly, random_point

        rng = ctx.rng("pell")
        agree = True
        for forms in ctx.samples([ring]):
            il, ir = instantiate(lhs, forms), instantiate(rhs, forms)
            for _ in range(5):
                x = random_point(ring.variables, rng)
                agree = agree and eval_poly(il, x) == eval_poly(ir, x)
        witness["oracle"] = {"name": "evaluation", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


def _specialize(entry, values):
    ring = entry.ring
    bind = {v: RatFunc.const(ring, values[v]) if v in values else RatFunc.symbol(ring, v) for v in ring.variables}
    return substitute(entry.num, bind, ring) / substitute(entry.den, bind, ring)


def _matrix(ctx, ring):
    rows = ctx.items("matrix")
    if len(rows) != 2:
        raise ctx.error("matrix needs two rows separated by ';'", "matrix")
    from .model import parse_expr

    out = []
    for row in rows:
        cells = [c.strip() for c in row.split(",")]
        if len(cells) != 2:
            raise ctx.error("each matrix row needs two entries separated by ','", "matrix")
        out.append([parse_expr(ctx.sec, "matrix", c, ring, 0, True) for c in cells])
    return out


@op("gq_membership", oracles=("rank_condition",))
def op_gq_membership(ctx):
    """Component of ``matrix`` in G_Q; ``specialize = g d`` draws rational values per instance,
    ``matrix = random`` draws random invertible integer matrices."""
    ring = ctx.ring("ring")
    A, B, C = (ctx.poly(k, ring) for k in ("A", "B", "C"))
    want = _COMPONENTS.get(ctx.get("expect"))
    if want is None:
        raise ctx.error("'expect' must be 1, 2 or none", "expect")
    rng = ctx.rng("gq")
    params = ctx.names("specialize", None)
    instances = ctx.int("instances", 1 if not params and ctx.get("matrix") != "random" else 5)
    base = None if ctx.get("matrix") == "random" else _matrix(ctx, ring)
    parts, results, agree = [], [], True
    for _ in range(instances):
        if base is None:
            mat = _random_matrix(rng, ring)
        elif params:
            values = {p: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for p in params}
            mat = [[_specialize(e, values) for e in row] for row in base]
        else:
            mat = base
        got = gq_membership(A, B, C, mat)
        results.append(got)
        parts.append(got == want)
        if ctx.oracle == "rank_condition":
            agree = agree and gq_rank_condition(A, B, C, mat) == (got != NOT_A_MEMBER)
    witness = {"components": results, "instances": instances}
    if ctx.oracle == "rank_condition":
        witness["oracle"] = {"name": "rank_condition", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


def _random_matrix(rng, ring):
    while True:
        m = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return [[RatFunc.const(ring, x) for x in row] for row in m]


def _linear(ring, rng, args=("x0", "x1", "x2")):
    p = Poly.zero(ring)
    for v in args:
        p = p + Poly.symbol(ring, v).scale(rng.randint(-9, 9))
    return p if not p.is_zero() else Poly.symbol(ring, args[0])


@op("pell_norm_form", oracles=("rank_condition",))
def op_pell_norm_form(ctx):
    """Points of ``U^2 - delta V^2 = 1`` from random slopes give component-1 elements for ``u^2 - delta v^2``."""
    ring = ctx.ring("ring")
    delta = ctx.poly("delta", ring)
    rng = ctx.rng("pell")
    one, zero = Poly.one(ring), Poly.zero(ring)
    parts, agree, rows = [], True, []
    for _ in range(ctx.int("instances", 5)):
        t = RatFunc.from_poly(_linear(ring, rng)) / RatFunc.from_poly(_linear(ring, rng))
        U, V = pell_solution(delta, t)
        norm_ok = U * U - RatFunc.from_poly(delta) * V * V == RatFunc.const(ring, 1)
        mat = pell_matrix(delta, U, V)
        got = gq_membership(one, zero, -delta, mat)
        parts.append(norm_ok and got == COMPONENT_1)
        rows.append({"t": t, "norm": norm_ok, "component": got})
        if ctx.oracle == "rank_condition":
            agree = agree and gq_rank_condition(one, zero, -delta, mat)
    witness = {"instances": rows}
    if ctx.oracle == "rank_condition":
        witness["oracle"] = {"name": "rank_condition", "agrees": agree}
        parts.append(agree)
    return Outcome.of(combine(parts), witness)


def _form(ring, rng, degree):
    form = random_form(3, degree, rng)
    p = Poly.zero(ring)
    pad = (0,) * (ring.nsym - 3)
    for e, c in form.items():
        p = p + Poly.monomial(ring, tuple(e) + pad, c)
    return p


@op("pell_family", oracles=("dual_number",))
def op_pell_family(ctx):
    """Members of one self-map family on sampled quartics ``A x3^2 + B x3 + C``.

    Each member is checked for volume preservation on the listed chart pairs
    (constant λ, equal to ``lambda`` when given) and for fixing D pointwise
    against ``expect_fixed``.  Member 0 is ``F = 0, G = 1``.
    """
    ring = ctx.ring("ring")
    A, B, C = (ctx.poly(k, ring) for k in ("A", "B", "C"))
    variant = ctx.int("variant")
    members = ctx.int("members", 5)
    want_fixed = ctx.flag("expect_fixed")
    want_lam = ctx.rational("lambda", None)
    charts = [tuple(x.split("->")) for x in ctx.items("charts")] or [("x0", "x0"), ("x3", "x1")]
    charts = [(tuple(a.split()), tuple(b.split())) for a, b in charts]
    rng = ctx.rng(f"pell{variant}")
    parts, rows = [], []
    oracle_ok = True
    for forms in ctx.samples([ring]):
        a, b, c = (instantiate(p, forms) for p in (A, B, C))
        r = a.ring
        x3 = Poly.symbol(r, "x3")
        D = a * x3 * x3 + b * x3 + c
        pair = CYPair(r, (), D, "D")
        for k in range(members):
            if k == 0:
                F, G = Poly.zero(r), Poly.one(r)
            else:
                df = rng.randint(0, 1)
                F, G = _form(r, rng, df), _form(r, rng, df + 1)
            m = pell_selfmap(a, b, c, F, G, variant)
            lams = []
            for su, tu in charts:
                rep = volume_preserving(m, pair, pair, su, tu)
                lams.append(rep.lam if rep.preserved else None)
            fixed = fixes_divisor_pointwise(m, D)
            ok = None not in lams and len(set(lams)) == 1 and (want_lam is None or lams[0] == want_lam)
            ok = ok and fixed == want_fixed
            parts.append(ok)
            rows.append({"F": F, "G": G, "lambda": lams, "fixed": fixed})
            if ctx.oracle == "dual_number" and None not in lams:
                su, tu = charts[0]
                ch = chart(r, su)
                for _ in range(2):
                    try:
                        val = pointwise_ratio(m, pair, pair, su, tu, random_chart_point(ch, rng))
                    except ZeroDivisionError:
                        continue
                    oracle_ok = oracle_ok and val == lams[0]
    witness = {"members": rows}
    if ctx.oracle == "dual_number":
        witness["oracle"] = {"name": "dual_number", "agrees": oracle_ok}
        parts.append(oracle_ok)
    return Outcome.of(combine(parts), witness)
