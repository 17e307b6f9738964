"""Pairs (X, D) in toric ambients and rational maps between ambients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.arith import divexact, factor_list, multiplicity, poly_gcd
from ..algebra.ops import multidegree, substitute
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..algebra.ring import GradedRing, RingError
from ..toric import ChartError, ToricAmbient, chart, chart_coordinates, dehomogenize, valid_charts


class MapError(ValueError):
    """Malformed map or incompatible composition."""


def _ring_of(x):
    if isinstance(x, ToricAmbient):
        return x.ring
    return x


@dataclass(frozen=True)
class CYPair:
    """A pair ``(X, D)``: X cut out by ``constraints`` in a toric ambient, D by ``divisor``."""

    ambient: object
    constraints: tuple
    divisor: Poly
    label: str = ""

    @property
    def ring(self):
        return _ring_of(self.ambient)

    @classmethod
    def make(cls, ambient, constraints, divisor, label="", check=True):
        pair = cls(ambient, tuple(constraints), divisor, label)
        if check:
            problems = pair_diagnostics(pair)
            if problems:
                raise ValueError(f"pair {label or '?'}: " + "; ".join(problems))
        return pair


def pair_diagnostics(pair):
    """Human-readable violations of homogeneity and of ``K_X + D ~ 0``."""
    ring = pair.ring
    out = []
    total = [0] * ring.rank
    for name, p in [("divisor", pair.divisor)] + [
        (f"constraint {i + 1}", c) for i, c in enumerate(pair.constraints)
    ]:
        if p.is_zero():
            out.append(f"{name} is zero")
            continue
        d = multidegree(p)
        if d is None:
            out.append(f"{name} is not homogeneous")
            continue
        total = [a + b for a, b in zip(total, d)]
    if not out and tuple(total) != ring.anticanonical_degree():
        out.append(
            f"anticanonical mismatch: degrees sum to {tuple(total)}, "
            f"weight columns sum to {ring.anticanonical_degree()}"
        )
    return out


@dataclass(frozen=True)
class RationalMapSpec:
    """Rational map given by one component per target variable.

    Components are rational functions in the source Cox ring.  ``exceptional``
    lists source polynomials that may be saturated away in strict transforms.
    """

    source: object
    target: object
    components: tuple
    name: str = ""
    exceptional: tuple = field(default=(), compare=False)

    @property
    def source_ring(self):
        return _ring_of(self.source)

    @property
    def target_ring(self):
        return _ring_of(self.target)

    def component_map(self):
        return dict(zip(self.target_ring.variables, self.components))

    @classmethod
    def make(cls, source, target, components, name="", exceptional=()):
        src, tgt = _ring_of(source), _ring_of(target)
        comps = []
        for c in components:
            if isinstance(c, Poly):
                c = RatFunc.from_poly(c)
            if c.ring != src:
                raise MapError("map component does not live in the source ring")
            comps.append(c)
        if len(comps) != tgt.n:
            raise MapError(f"map needs {tgt.n} components, got {len(comps)}")
        return cls(source, target, tuple(comps), name, tuple(exceptional))

    @classmethod
    def identity(cls, ambient, name="id"):
        ring = _ring_of(ambient)
        return cls.make(ambient, ambient, [Poly.symbol(ring, v) for v in ring.variables], name)

    def __str__(self):
        comps = ", ".join(c.to_str() for c in self.components)
        return f"({', '.join(self.source_ring.variables)}) -> ({comps})"


def grading_matrix(m):
    """Integer matrix M with ``deg(component_i) = M * (target column i)``, or ``None``."""
    src, tgt = m.source_ring, m.target_ring
    rows = []
    rhs = []
    for v, c in zip(tgt.variables, m.components):
        if c.is_zero():
            continue
        d = multidegree(c, src)
        if d is None:
            return None
        rows.append(tgt.column(v))
        rhs.append(d)
    if not rows:
        return None
    rs, rt = src.rank, tgt.rank
    # solve rows @ M^T = rhs column by column of M^T
    sol = []
    for k in range(rs):
        x = _solve_exact(rows, [r[k] for r in rhs], rt)
        if x is None:
            return None
        sol.append(x)
    return tuple(tuple(row) for row in sol)


def _solve_exact(a, b, n):
    """Integer solution of ``a x = b`` (overdetermined allowed), else ``None``."""
    m = [[Fraction(v) for v in row] + [Fraction(t)] for row, t in zip(a, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = m[i][n]
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def map_compose(f, g):
    """The composite ``g o f`` (apply ``f`` first); target of ``f`` must be the source of ``g``."""
    if f.target_ring != g.source_ring:
        raise MapError("cannot compose: target of the first map is not the source of the second")
    bindings = f.component_map()
    comps = [substitute(c, bindings, f.source_ring) for c in g.components]
    name = f"{g.name}*{f.name}" if f.name and g.name else ""
    return normalize_map(RationalMapSpec.make(f.source, g.target, comps, name))


def default_chart(m, others=()):
    """First chart (trying later variables first) where no unit component vanishes."""
    ring = m.target_ring
    maps = (m,) + tuple(others)
    candidates = sorted(valid_charts(ring), key=lambda u: [-ring.variables.index(v) for v in u])
    for units in candidates:
        ok = all(
            not mm.component_map()[u].is_zero() for mm in maps for u in units
        )
        if ok:
            return chart(ring, units)
    raise ChartError("no chart of the target contains the image")


def map_equal(f, g, ch=None):
    """Compare two maps to the same target through their chart coordinates."""
    if f.source_ring != g.source_ring or f.target_ring != g.target_ring:
        return False
    if ch is None:
        ch = default_chart(f, (g,))
    if isinstance(ch, (tuple, list)):
        ch = chart(f.target_ring, ch)
    for mm in (f, g):
        for u in ch.units:
            if mm.component_map()[u].is_zero():
                raise ChartError(f"chart {ch.units} is invalid: component {u} vanishes")
    a = chart_coordinates(f.component_map(), ch)
    b = chart_coordinates(g.component_map(), ch)
    return all(a[v] == b[v] for v in a)


# denominator clearing ---------------------------------------------------------

def _valuation(p, f):
    if p.is_zero():
        return None
    return multiplicity(p, f)[0]


def clear_denominators(m):
    """Polynomial components projectively equal to those of ``m``.

    Each irreducible factor is moved between components by the torus action
    so that no denominator remains and the total multiplicity is minimal.
    """
    tgt = m.target_ring
    comps = list(m.components)
    nonzero = [i for i, c in enumerate(comps) if not c.is_zero()]
    factors = []
    seen = set()

    def add_factors(p):
        if p.is_constant():
            return
        for f, _ in factor_list(p)[1]:
            if f not in seen:
                seen.add(f)
                factors.append(f)

    for i in nonzero:
        add_factors(comps[i].den)
    if tgt.rank == 1 and all(w > 0 for w in tgt.weights[0]):
        g = Poly.zero(m.source_ring)
        for i in nonzero:
            g = poly_gcd(g, comps[i].num)
        add_factors(g)
    else:
        for i in nonzero:
            add_factors(comps[i].num)
    cols = [tgt.column(v) for v in tgt.variables]
    nums = [c.num for c in comps]
    dens = [c.den for c in comps]
    scale = [Fraction(1)] * len(comps)
    for f in factors:
        vals = {}
        for i in nonzero:
            vals[i] = (_valuation(nums[i], f) or 0) - (_valuation(dens[i], f) or 0)
        shift = _best_shift(vals, cols, tgt.rank)
        if shift is None:
            raise MapError("cannot clear denominators with the torus action")
        for i in nonzero:
            k = vals[i] + sum(a * w for a, w in zip(shift, cols[i]))
            kn = _valuation(nums[i], f) or 0
            kd = _valuation(dens[i], f) or 0
            base_num = nums[i]
            base_den = dens[i]
            if kn:
                base_num = divexact(base_num, f ** kn)
            if kd:
                base_den = divexact(base_den, f ** kd)
            nums[i] = base_num * f ** k
            dens[i] = base_den
    out = []
    for i, c in enumerate(comps):
        if c.is_zero():
            out.append(Poly.zero(m.source_ring))
            continue
        if not dens[i].is_constant():
            raise MapError("denominator left after clearing")
        out.append(nums[i].scale(1 / dens[i].constant_value()))
    return out


def _best_shift(vals, cols, rank):
    bound = max([abs(v) for v in vals.values()] + [1]) + 1
    best = None
    for shift in itertools.product(range(-bound, bound + 1), repeat=rank):
        ks = [v + sum(a * w for a, w in zip(shift, cols[i])) for i, v in vals.items()]
        if min(ks) < 0:
            continue
        key = (sum(ks), [abs(a) for a in shift])
        if best is None or key < best[0]:
            best = (key, shift)
    return None if best is None else best[1]


def normalize_map(m):
    """Replace components by cleared, content-free polynomial components."""
    comps = clear_denominators(m)
    return RationalMapSpec.make(m.source, m.target, comps, m.name, m.exceptional)
