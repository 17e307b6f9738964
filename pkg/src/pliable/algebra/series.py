"""Truncated multivariate power series around a point."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import AtomError, Poly
from .ratfunc import RatFunc


@dataclass(frozen=True)
class TruncSeries:
    """Polynomial part of total degree ``< order`` of a local expansion.

    ``poly`` is expressed in shifted coordinates: the variable ``x`` stands
    for ``x - center[x]``.
    """

    poly: Poly
    order: int
    center: tuple

    def truncate(self, order):
        return TruncSeries(truncate(self.poly, order), order, self.center)

    def lowest_form(self):
        """Nonzero homogeneous part of least degree, or ``None``."""
        parts = self.poly.homogeneous_parts()
        if not parts:
            return None
        d = min(parts)
        return d, parts[d]


def truncate(p, order):
    n = p.ring.n
    return Poly(p.ring, {e: c for e, c in p.terms.items() if sum(e[:n]) < order})


def mul_trunc(a, b, order):
    return truncate(a * b, order)


def translate(p, center):
    """Rewrite ``p`` in coordinates centered at ``center`` (x -> x + c)."""
    if p.atoms_used():
        if any(c for c in center.values()):
            raise AtomError("cannot translate a polynomial containing atoms; instantiate them first")
        return p
    bindings = {}
    for v, c in center.items():
        if c:
            bindings[v] = Poly.symbol(p.ring, v) + Fraction(c)
    return p.substitute_poly(bindings) if bindings else p


def series_expand(f, center, order):
    """Expansion of a polynomial or rational function at ``center`` up to degree ``< order``.

    ``center`` maps variables to rational coordinates (missing ones are 0).
    The denominator must not vanish at the center.
    """
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    ring = f.ring
    if f.num.atoms_used() or f.den.atoms_used():
        raise AtomError("series expansion needs concrete coefficients; instantiate atoms first")
    point = {v: Fraction(center.get(v, 0)) for v in ring.variables}
    unknown = set(center) - set(ring.variables)
    if unknown:
        raise ValueError(f"center mentions unknown variables {sorted(unknown)}")
    num = truncate(translate(f.num, point), order)
    den = truncate(translate(f.den, point), order)
    zero = (0,) * ring.nsym
    a0 = den.terms.get(zero, Fraction(0))
    if not a0:
        raise ZeroDivisionError("denominator vanishes at the expansion point")
    rest = (den - a0).scale(-1 / a0)
    inv = Poly.one(ring)
    power = Poly.one(ring)
    for _ in range(1, order):
        power = mul_trunc(power, rest, order)
        if not power.terms:
            break
        inv = inv + power
    result = mul_trunc(num, inv.scale(1 / a0), order)
    return TruncSeries(result, order, tuple(sorted(point.items())))
