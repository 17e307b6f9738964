"""Strict transforms, restriction to pairs, and pointwise fixing of divisors."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..algebra.arith import (
    divexact,
    divides,
    divmod_poly,
    factor_list,
    multiplicity,
    proportional,
    pseudo_remainder,
)
from ..algebra.ops import substitute
from ..algebra.poly import Poly
from .maps import MapError, clear_denominators


class TransformError(ValueError):
    """Degenerate pullback (the divisor contains the image) or bad constraint."""


def pullback(p, m):
    """Pull ``p`` back along the polynomial (cleared) components of ``m``."""
    comps = clear_denominators(m)
    bindings = dict(zip(m.target_ring.variables, comps))
    rf = substitute(p, bindings, m.source_ring)
    if not rf.den.is_constant():
        return rf.num
    return rf.num.scale(1 / rf.den.constant_value())


def saturate(p, factors):
    """Divide out each factor to maximal multiplicity, in order."""
    removed = []
    for f in factors:
        if f.is_constant():
            continue
        k, p = multiplicity(p, f)
        if k:
            removed.append((f, k))
    return p, removed


def strict_transform(divisor, m, exceptional=()):
    """Saturated pullback of ``divisor`` and the removed factors with multiplicities.

    Declared ``exceptional`` polynomials are removed first, then every source
    coordinate variable.
    """
    raw = pullback(divisor, m)
    if raw.is_zero():
        raise TransformError("pullback is identically zero: the divisor contains the image")
    src = m.source_ring
    factors = list(exceptional) + [Poly.symbol(src, v) for v in src.variables]
    return saturate(raw, factors)


@dataclass
class RestrictionReport:
    holds: bool
    forward: dict = field(default_factory=dict)
    inverse: dict = field(default_factory=dict)
    reason: str = ""


def _reduce_ratio(num, den, g, var):
    """Constant ``c`` with ``num == c*den`` modulo the prime ideal ``(g)``, or ``None``."""
    power = max(pseudo_remainder(num, g, var)[1], pseudo_remainder(den, g, var)[1])
    rn, _ = pseudo_remainder(num, g, var, power=power)
    rd, _ = pseudo_remainder(den, g, var, power=power)
    if rd.is_zero() or rn.is_zero():
        return None
    return proportional(rn, rd)


def _check_constraint(g, var):
    if g.degree_in(var) < 1:
        raise TransformError(f"constraint does not involve the elimination variable {var}")
    const, facs = factor_list(g)
    if len(facs) != 1 or facs[0][1] != 1:
        raise TransformError("constraint is not irreducible; pseudo-division test needs a prime ideal")


def congruent_multiple(p, target, constraint, var, exceptional, max_mult=3):
    """Find ``c, m`` with ``p == c * target * prod(e_i^m_i)`` modulo ``constraint``.

    Returns ``(c, mults, k)`` where ``k`` is the exact cofactor
    ``(p - c*target*prod e_i^m_i) / constraint``, or ``None``.
    """
    for mults in itertools.product(range(max_mult + 1), repeat=len(exceptional)):
        den = target
        for e, k in zip(exceptional, mults):
            if k:
                den = den * e ** k
        c = _reduce_ratio(p, den, constraint, var)
        if c is None:
            continue
        diff = p - den.scale(c)
        q, r = divmod_poly(diff, constraint)
        if r.is_zero():
            return c, mults, q
    return None


def _same_up_to_constant(a, b, constraints, var):
    if not constraints:
        c = proportional(a, b)
        return (c is not None), {"constant": c}
    if len(constraints) != 1:
        raise TransformError("only a single hypersurface constraint is supported")
    found = congruent_multiple(a, b, constraints[0], var, [])
    if found is None:
        return False, {}
    return True, {"constant": found[0], "cofactor": found[2]}


def restricts_birationally(m, src, tgt, elimination_variable=None, inverse=None,
                           exceptional=None, inverse_exceptional=()):
    """Check that ``m`` maps ``D_X`` onto ``D_Y`` birationally and back.

    Forward: the strict transform of ``tgt.divisor`` equals ``src.divisor``
    (up to a constant, modulo the source constraint) and the target
    constraints pull back into the source constraint ideal.  Inverse: the
    pullback of ``src.divisor`` along ``inverse`` is a constant times
    ``tgt.divisor`` times powers of ``inverse_exceptional``, modulo the target
    constraint, tested by pseudo-division in ``elimination_variable``.
    """
    exceptional = m.exceptional if exceptional is None else exceptional
    var = elimination_variable
    for pair in (src, tgt):
        for g in pair.constraints:
            if var is None or not pair.ring.has_symbol(var) or g.degree_in(var) < 1:
                continue
            _check_constraint(g, var)
    forward = {}
    # target constraints must vanish on X
    for g in tgt.constraints:
        pb = pullback(g, m)
        if src.constraints:
            ok = pb.is_zero() or _same_up_to_constant(pb, src.constraints[0], [], var)[0] or \
                divides(src.constraints[0], pb)
        else:
            ok = pb.is_zero()
        if not ok:
            return RestrictionReport(False, forward, {}, "a target constraint does not vanish on the source")
    try:
        strict, removed = strict_transform(tgt.divisor, m, exceptional)
    except TransformError as exc:
        return RestrictionReport(False, forward, {}, str(exc))
    ok, info = _same_up_to_constant(strict, src.divisor, list(src.constraints), var)
    forward = {"strict": strict, "removed": removed, **info}
    if not ok:
        return RestrictionReport(False, forward, {}, "strict transform of the target divisor differs from the source divisor")
    inv = {}
    if inverse is not None:
        for g in src.constraints:
            if not pullback(g, inverse).is_zero() and not (
                tgt.constraints and divides(tgt.constraints[0], pullback(g, inverse))
            ):
                return RestrictionReport(False, forward, inv, "a source constraint does not vanish on the target")
        p = pullback(src.divisor, inverse)
        if p.is_zero():
            return RestrictionReport(False, forward, inv, "inverse pullback of the source divisor is zero")
        if tgt.constraints:
            if len(tgt.constraints) != 1:
                raise TransformError("only a single hypersurface constraint is supported")
            found = congruent_multiple(p, tgt.divisor, tgt.constraints[0], var, list(inverse_exceptional))
            if found is None:
                return RestrictionReport(False, forward, inv, "inverse strict transform differs from the target divisor")
            c, mults, cof = found
            inv = {"constant": c, "multiplicities": mults, "cofactor": cof}
        else:
            strict_inv, removed_inv = strict_transform(src.divisor, inverse, inverse_exceptional)
            c = proportional(strict_inv, tgt.divisor)
            if c is None:
                return RestrictionReport(False, forward, inv, "inverse strict transform differs from the target divisor")
            inv = {"constant": c, "removed": removed_inv}
    return RestrictionReport(True, forward, inv)


def fixes_divisor_pointwise(m, divisor):
    """True iff ``divisor`` divides ``g_i x_j - g_j x_i`` for all pairs ``i < j``."""
    ring = m.source_ring
    if ring != m.target_ring:
        raise MapError("pointwise fixing needs a self-map")
    comps = clear_denominators(m)
    xs = [Poly.symbol(ring, v) for v in ring.variables]
    for i, j in itertools.combinations(range(len(xs)), 2):
        expr = comps[i] * xs[j] - comps[j] * xs[i]
        if not divides(divisor, expr):
            return False
    return True


def nonfixed_witness(m, divisor):
    """First pair ``(i, j)`` with a nonzero remainder, or ``None``."""
    ring = m.source_ring
    comps = clear_denominators(m)
    xs = [Poly.symbol(ring, v) for v in ring.variables]
    for i, j in itertools.combinations(range(len(xs)), 2):
        expr = comps[i] * xs[j] - comps[j] * xs[i]
        if not divides(divisor, expr):
            return (ring.variables[i], ring.variables[j])
    return None


def saturation_roundtrip(divisor, m, exceptional=()):
    """Oracle: strict transform times removed factors gives the raw pullback back."""
    raw = pullback(divisor, m)
    strict, removed = strict_transform(divisor, m, exceptional)
    back = strict
    for f, k in removed:
        back = back * f ** k
    return back == raw


def exact_quotient_or_none(p, q):
    try:
        return divexact(p, q)
    except ValueError:
        return None
