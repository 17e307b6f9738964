"""Toric GIT data in rank at most two: chambers, walls, irrelevant ideals, charts."""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .algebra.ring import GradedRing, RingError


class ChartError(ValueError):
    """A unit set that does not define a smooth affine chart."""


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero weight column has no ray")
    return tuple(x // g for x in v)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = _cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def sort_rays(rays):
    """Sort planar rays counterclockwise starting from the positive x-axis."""
    return sorted(set(rays), key=functools.cmp_to_key(_angle_cmp))


@dataclass(frozen=True)
class Chamber:
    """A maximal cone of the secondary fan.

    ``rays`` is ``(rho1, rho2)`` in counterclockwise order for rank two and
    ``(rho,)`` with ``rho = (1,)`` or ``(-1,)`` in rank one.  ``boundary``
    lists, for each ray, the variables whose weight columns lie on it.
    """

    rays: tuple
    boundary: tuple = ()

    def interior_point(self):
        if len(self.rays) == 1:
            return self.rays[0]
        return tuple(a + b for a, b in zip(*self.rays))

    def contains(self, v):
        if len(self.rays) == 1:
            return v[0] * self.rays[0][0] > 0
        a, b = self.rays
        return _cross(a, v) >= 0 and _cross(v, b) >= 0

    def __str__(self):
        names = ["<" + ",".join(s) + ">" for s in self.boundary]
        return f"cone{self.rays} {' '.join(names)}".strip()


@dataclass(frozen=True)
class Wall:
    """A ray separating ``from_chamber`` from ``to_chamber`` (``None`` at the boundary)."""

    ray: tuple
    from_chamber: Chamber
    to_chamber: Chamber | None


@dataclass(frozen=True)
class Fibration:
    kind = "Fibration"

    def __str__(self):
        return "Fibration"


@dataclass(frozen=True)
class DivisorialContraction:
    variable: str
    kind = "DivisorialContraction"

    def __str__(self):
        return f"DivisorialContraction({self.variable})"


@dataclass(frozen=True)
class DivisorialExtraction:
    """Crossing the wall extracts the divisor ``{variable = 0}``; this side has Picard rank one."""

    variable: str
    kind = "DivisorialExtraction"

    def __str__(self):
        return f"DivisorialExtraction({self.variable})"


@dataclass(frozen=True)
class SmallModification:
    variables: tuple
    kind = "SmallModification"

    def __str__(self):
        return f"SmallModification({','.join(self.variables)})"


@dataclass(frozen=True)
class IrrelevantIdeal:
    """Monomial generators (as variable tuples) and, when it exists, a product form."""

    generators: tuple
    factors: tuple | None

    def __str__(self):
        if self.factors is not None:
            return "".join("(" + ",".join(f) + ")" for f in self.factors)
        return "(" + ", ".join("*".join(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class ToricAmbient:
    ring: GradedRing
    chamber: Chamber
    name: str = ""


def _columns(ring):
    return {v: ring.column(v) for v in ring.variables}


def chamber_decomposition(ring):
    """Maximal chambers of the GIT fan of ``ring`` (rank 1 or 2)."""
    cols = _columns(ring)
    if ring.rank == 1:
        out = []
        for sign in (1, -1):
            members = tuple(v for v, c in cols.items() if c[0] * sign > 0)
            if members:
                out.append(Chamber(((sign,),), (members,)))
        return out
    if ring.rank != 2:
        raise RingError("chamber decomposition is implemented for rank 1 and 2 gradings")
    rays = sort_rays(_primitive(c) for c in cols.values() if any(c))
    on_ray = {r: tuple(v for v, c in cols.items() if any(c) and _primitive(c) == r) for r in rays}
    out = []
    m = len(rays)
    if m < 2:
        return out
    for i in range(m):
        a, b = rays[i], rays[(i + 1) % m]
        if _cross(a, b) > 0:
            out.append(Chamber((a, b), (on_ray[a], on_ray[b])))
    return out


def find_chamber(ring, stability):
    """Chamber containing the stability vector in its interior."""
    for ch in chamber_decomposition(ring):
        if len(ch.rays) == 1:
            if stability[0] * ch.rays[0][0] > 0:
                return ch
        else:
            a, b = ch.rays
            if _cross(a, stability) > 0 and _cross(stability, b) > 0:
                return ch
    raise ValueError(f"stability {stability} is not in the interior of a chamber")


def chamber_by_boundary(ring, names):
    """Chamber whose boundary rays carry the given variables (e.g. ``z0,u``)."""
    cols = _columns(ring)
    rays = {_primitive(cols[n]) for n in names}
    for ch in chamber_decomposition(ring):
        if set(ch.rays) == rays:
            return ch
    raise ValueError(f"no chamber is bounded by the columns of {sorted(names)}")


def walls(ring):
    """All walls of the fan: interior walls twice (once per side) and boundary walls."""
    chambers = chamber_decomposition(ring)
    out = []
    if ring.rank == 1:
        for ch in chambers:
            other = [c for c in chambers if c is not ch]
            out.append(Wall((0,), ch, other[0] if other else None))
        return out
    for ch in chambers:
        for ray in ch.rays:
            neighbour = None
            for other in chambers:
                if other is not ch and ray in other.rays:
                    neighbour = other
            out.append(Wall(ray, ch, neighbour))
    return out


def far_side(ring, wall):
    """Variables strictly beyond the wall as seen from ``wall.from_chamber``."""
    cols = _columns(ring)
    ch = wall.from_chamber
    if ring.rank == 1:
        sign = ch.rays[0][0]
        return tuple(v for v, c in cols.items() if c[0] * sign < 0)
    a, b = ch.rays
    if wall.ray == b:
        return tuple(v for v, c in cols.items() if _cross(b, c) > 0)
    if wall.ray == a:
        return tuple(v for v, c in cols.items() if _cross(a, c) < 0)
    raise ValueError("wall ray is not a boundary ray of its chamber")


def near_side(ring, wall):
    """Variables strictly on the side of ``wall.from_chamber``, off the wall line."""
    cols = _columns(ring)
    ch = wall.from_chamber
    if ring.rank == 1:
        sign = ch.rays[0][0]
        return tuple(v for v, c in cols.items() if c[0] * sign > 0)
    a, b = ch.rays
    if wall.ray == b:
        return tuple(v for v, c in cols.items() if _cross(b, c) < 0)
    if wall.ray == a:
        return tuple(v for v, c in cols.items() if _cross(a, c) > 0)
    raise ValueError("wall ray is not a boundary ray of its chamber")


def classify_wall(ring, wall):
    """Fibration, divisorial contraction or extraction, or small modification across ``wall``.

    The contraction to the wall has exceptional locus ``{far = 0}`` with
    fibres of dimension ``len(near) - 1``; a single near variable means the
    contraction is an isomorphism and crossing extracts that divisor.
    """
    far = far_side(ring, wall)
    if not far:
        return Fibration()
    if len(far) == 1:
        return DivisorialContraction(far[0])
    near = near_side(ring, wall)
    if len(near) == 1:
        return DivisorialExtraction(near[0])
    return SmallModification(far)


def wall_between(ring, chamber, ray):
    for w in walls(ring):
        if w.from_chamber == chamber and w.ray == ray:
            return w
    raise ValueError(f"{ray} is not a wall of {chamber}")


def two_ray_game(ring, chamber):
    """Walls met when running the game from ``chamber`` in both directions.

    Small modifications are crossed; the game stops on each side at the
    first divisorial contraction or fibration.  Returns a list of
    ``(wall, classification)`` pairs, first the counterclockwise side.
    """
    steps = []
    if ring.rank == 1:
        for w in walls(ring):
            if w.from_chamber == chamber:
                steps.append((w, classify_wall(ring, w)))
        return steps
    for side in (1, 0):
        ch = chamber
        seen = set()
        # a fan covering the whole plane would otherwise be circled forever
        while ch is not None and ch not in seen:
            seen.add(ch)
            w = wall_between(ring, ch, ch.rays[side])
            kind = classify_wall(ring, w)
            steps.append((w, kind))
            if not isinstance(kind, SmallModification):
                break
            ch = w.to_chamber
    return steps


def irrelevant_ideal(ring, stability):
    """Irrelevant ideal for a chamber or a stability vector.

    A monomial ``x_S`` is a generator when the stability lies in the
    relative interior of the cone spanned by the columns of ``S``.
    """
    if isinstance(stability, Chamber):
        stability = stability.interior_point()
    if isinstance(stability, ToricAmbient):
        stability = stability.chamber.interior_point()
    cols = _columns(ring)
    names = list(ring.variables)
    gens = []
    if ring.rank == 1:
        gens = [(v,) for v in names if cols[v][0] * stability[0] > 0]
        factors = (tuple(g[0] for g in gens),)
        return IrrelevantIdeal(tuple(gens), factors)
    c = tuple(stability)
    single = [v for v in names if any(cols[v]) and _cross(cols[v], c) == 0 and
              cols[v][0] * c[0] + cols[v][1] * c[1] > 0]
    gens.extend((v,) for v in single)
    left = [v for v in names if _cross(cols[v], c) > 0]
    right = [v for v in names if _cross(c, cols[v]) > 0]
    complete = True
    for i in left:
        for j in right:
            if _cross(cols[i], cols[j]) > 0:
                gens.append(tuple(sorted((i, j), key=names.index)))
            else:
                complete = False
    gens = _minimal(gens)
    factors = None
    if not single and complete and left and right:
        factors = (tuple(left), tuple(right))
    elif single and not gens[len(single):]:
        factors = (tuple(single),)
    return IrrelevantIdeal(tuple(gens), factors)


def _minimal(gens):
    out = []
    for g in gens:
        if not any(set(h) < set(g) for h in gens):
            if g not in out:
                out.append(g)
    return out


def irrelevant_locus_contains(ring, stability, zero_vars):
    """True if the coordinate subspace ``{zero_vars = 0}`` is unstable."""
    ideal = irrelevant_ideal(ring, stability)
    zero = set(zero_vars)
    return all(any(v in zero for v in g) for g in ideal.generators)


# charts -------------------------------------------------------------------

def _det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


def _inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _perm_sign(order):
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class Chart:
    """Affine chart ``{x_i != 0 for i in units}`` with the units set to 1."""

    ring: GradedRing
    units: tuple
    chart_ring: GradedRing
    exponents: tuple
    orientation: int

    @property
    def coordinates(self):
        return self.chart_ring.variables

    def dehomogenize(self, p):
        return dehomogenize(p, self)

    def image_coordinates(self, components):
        return chart_coordinates(components, self)


def unit_matrix(ring, units):
    idx = [ring.variables.index(u) for u in units]
    return [[row[i] for i in idx] for row in ring.weights]


def chart(ring, units):
    """Chart for ``units``; the weight submatrix must be unimodular."""
    units = tuple(units)
    if isinstance(ring, ToricAmbient):
        ring = ring.ring
    if len(units) != ring.rank:
        raise ChartError(f"a chart needs {ring.rank} unit variables, got {len(units)}")
    for u in units:
        if u not in ring.variables:
            raise ChartError(f"unknown unit variable {u!r}")
    if len(set(units)) != len(units):
        raise ChartError("repeated unit variable")
    m = unit_matrix(ring, units)
    d = _det(m)
    if abs(d) != 1:
        raise ChartError(f"unit set {units} is not unimodular (determinant {d})")
    inv = _inverse(m)
    exps = {}
    for v in ring.variables:
        if v in units:
            continue
        w = ring.column(v)
        c = [sum(inv[i][k] * w[k] for k in range(len(w))) for i in range(len(units))]
        exps[v] = tuple(int(x) for x in c)
    order = [ring.variables.index(u) for u in units] + [
        i for i, v in enumerate(ring.variables) if v not in units
    ]
    orientation = _perm_sign(order) * d
    return Chart(ring, units, ring.chart_ring(units), tuple(sorted(exps.items())), orientation)


def valid_charts(ring):
    """All unimodular unit sets, in variable order."""
    out = []
    for units in itertools.combinations(ring.variables, ring.rank):
        if abs(_det(unit_matrix(ring, units))) == 1:
            out.append(units)
    return out


def dehomogenize(p, ch):
    """Set the chart's unit variables to 1."""
    if isinstance(p, RatFunc):
        return RatFunc.make(dehomogenize(p.num, ch), dehomogenize(p.den, ch))
    src = p.ring
    dst = ch.chart_ring
    keep = [i for i, s in enumerate(src.symbols) if s not in ch.units]
    out = {}
    for e, c in p.terms.items():
        f = tuple(e[i] for i in keep)
        out[f] = out.get(f, 0) + c
    return Poly(dst, {e: c for e, c in out.items() if c})


def chart_coordinates(components, ch):
    """Chart coordinates of the point with Cox coordinates ``components``.

    ``components`` maps the ambient variables to rational functions; the
    coordinate for ``x_j`` is ``g_j / prod_i g_i^(c_ij)`` with
    ``c_j = W_U^{-1} w_j``.
    """
    exps = dict(ch.exponents)
    out = {}
    for v, c in exps.items():
        val = _as_rf(components[v])
        for u, k in zip(ch.units, c):
            if k:
                base = _as_rf(components[u])
                if base.is_zero():
                    raise ChartError(f"image lies outside the chart: {u} vanishes")
                val = val * base ** (-k)
        out[v] = val
    return out


def _as_rf(x):
    return x if isinstance(x, RatFunc) else RatFunc.from_poly(x)


# quotient singularities of non-unimodular charts ----------------------------

@dataclass(frozen=True)
class CyclicQuotient:
    """The singularity ``1/r(a_1, ..., a_n)`` at the origin of a chart."""

    r: int
    weights: tuple
    coordinates: tuple = ()

    def __str__(self):
        return f"1/{self.r}({','.join(str(w) for w in self.weights)})"


def _frac(x):
    return x - math.floor(x)


def chart_quotient(ring, units):
    """Cyclic quotient type of the chart ``{x_U != 0}`` with ``x_U = 1``.

    The stabilizer of the slice is the finite group of torus elements that
    fix every unit variable; it must be cyclic.
    """
    units = tuple(units)
    m = unit_matrix(ring, units)
    d = abs(_det(m))
    if d == 0:
        raise ChartError(f"unit set {units} has singular weight matrix")
    rest = tuple(v for v in ring.variables if v not in units)
    if d == 1:
        return CyclicQuotient(1, tuple(0 for _ in rest), rest)
    mt = [list(col) for col in zip(*m)]
    inv = _inverse(mt)
    n = len(units)
    basis = [tuple(_frac(inv[i][k]) for i in range(n)) for k in range(n)]
    gen = None
    for coeffs in itertools.product(range(d), repeat=n):
        theta = tuple(_frac(sum(c * b[i] for c, b in zip(coeffs, basis))) for i in range(n))
        order = next(k for k in range(1, d + 1) if all((k * t).denominator == 1 for t in theta))
        if order == d:
            gen = theta
            break
    if gen is None:
        raise ChartError("stabilizer group is not cyclic")
    weights = []
    for v in rest:
        w = ring.column(v)
        x = _frac(sum(Fraction(a) * t for a, t in zip(w, gen)))
        weights.append(int(x * d))
    return normalize_quotient(CyclicQuotient(d, tuple(weights), rest))


def normalize_quotient(q):
    """Choose the generator giving the lexicographically least weight vector."""
    best = None
    for k in range(1, q.r):
        if math.gcd(k, q.r) != 1:
            continue
        w = tuple((k * a) % q.r for a in q.weights)
        if best is None or sorted(w) < sorted(best[0]) or (sorted(w) == sorted(best[0]) and w < best[0]):
            best = (w, k)
    if best is None:
        return CyclicQuotient(q.r, tuple(a % q.r for a in q.weights), q.coordinates)
    return CyclicQuotient(q.r, best[0], q.coordinates)


def same_quotient_type(a, b):
    """Equal groups up to change of generator and permutation of coordinates."""
    if a.r != b.r or len(a.weights) != len(b.weights):
        return False
    target = sorted(w % b.r for w in b.weights)
    for k in range(1, a.r + 1):
        if math.gcd(k, a.r) == 1 and sorted((k * w) % a.r for w in a.weights) == target:
            return True
    return a.r == 1
