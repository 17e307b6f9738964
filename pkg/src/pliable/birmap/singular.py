"""Local analysis of hypersurface germs and cyclic quotient singularities."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..algebra.kernel import age_numerators
from ..algebra.poly import AtomError, Poly
from ..algebra.ratfunc import RatFunc
from ..algebra.series import translate, truncate
from ..toric import Chart, chart, chart_coordinates, dehomogenize


class SingularityError(ValueError):
    """Precondition failure: wrong dimension, wrong multiplicity, point not on the germ."""


@dataclass(frozen=True)
class TangentCone:
    multiplicity: int
    lowest_form: Poly
    quadratic_rank: int | None


@dataclass(frozen=True)
class AkType:
    kind: str  # "A", "NotADuValAk" or "Undetermined"
    k: int | None = None

    def __str__(self):
        return f"A{self.k}" if self.kind == "A" else self.kind


def _local(p, ch, point):
    """Dehomogenize on the chart and translate ``point`` to the origin."""
    if not isinstance(ch, Chart):
        ch = chart(p.ring, tuple(ch))
    q = dehomogenize(p, ch)
    if q.atoms_used():
        raise AtomError("local analysis needs concrete coefficients; instantiate atoms first")
    coords = _chart_point(p.ring, ch, point)
    local = translate(q, coords)
    return ch, local


def _chart_point(ring, ch, point):
    if isinstance(point, dict):
        unknown = set(point) - set(ch.coordinates)
        if unknown:
            raise SingularityError(f"point mentions non-chart coordinates {sorted(unknown)}")
        return {v: Fraction(point.get(v, 0)) for v in ch.coordinates}
    point = tuple(point)
    if len(point) != ring.n:
        raise SingularityError(f"point needs {ring.n} homogeneous coordinates")
    comps = {v: RatFunc.const(ring, Fraction(x)) for v, x in zip(ring.variables, point)}
    for u in ch.units:
        if comps[u].is_zero():
            raise SingularityError(f"point is not on the chart {ch.units}")
    coords = chart_coordinates(comps, ch)
    return {v: coords[v].constant_value() for v in ch.coordinates}


def quadratic_matrix(q, variables):
    """Symmetric Gram matrix of a quadratic form (so that q = x^T M x)."""
    ring = q.ring
    idx = [ring.index(v) for v in variables]
    n = len(variables)
    m = [[Fraction(0)] * n for _ in range(n)]
    for e, c in q.terms.items():
        nz = [i for i in range(n) if e[idx[i]]]
        if len(nz) == 1 and e[idx[nz[0]]] == 2:
            m[nz[0]][nz[0]] += c
        elif len(nz) == 2:
            a, b = nz
            m[a][b] += c / 2
            m[b][a] += c / 2
        else:
            raise ValueError("not a quadratic form")
    return m


def matrix_rank(m):
    a = [list(r) for r in m]
    rank = 0
    rows = len(a)
    cols = len(a[0]) if a else 0
    for c in range(cols):
        p = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for r in range(rows):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def nullspace(m):
    """Basis of the right kernel of a rational matrix."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(v)
    return basis


def tangent_cone(p, ch, point):
    """Multiplicity, lowest homogeneous form and (for multiplicity 2) quadratic rank."""
    ch, local = _local(p, ch, point)
    if local.is_zero():
        raise SingularityError("polynomial vanishes identically on the chart")
    parts = local.homogeneous_parts()
    if 0 in parts:
        raise SingularityError("polynomial does not vanish at the point")
    d = min(parts)
    low = parts[d]
    rank = None
    if d == 2:
        rank = matrix_rank(quadratic_matrix(low, ch.coordinates))
    return TangentCone(d, low, rank)


def _diagonalize(m):
    """Rational ``T`` and diagonal ``D`` with ``T^T M T = D`` (symmetric Gaussian elimination)."""
    n = len(m)
    a = [list(r) for r in m]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(i, j, f):  # column_i += f * column_j, and the matching row operation
        for r in range(n):
            a[r][i] += f * a[r][j]
        for c in range(n):
            a[i][c] += f * a[j][c]
        for r in range(n):
            t[r][i] += f * t[r][j]

    def swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                col_op(k, j, Fraction(1))
        piv = a[k][k]
        if piv == 0:
            continue
        for j in range(k + 1, n):
            if a[k][j] != 0:
                col_op(j, k, -a[k][j] / piv)
    return t, [a[i][i] for i in range(n)]


def _linear_change(f, variables, t):
    """Substitute ``x = T z`` (new coordinates reuse the old names)."""
    ring = f.ring
    xs = [Poly.symbol(ring, v) for v in variables]
    bindings = {}
    for i, v in enumerate(variables):
        expr = Poly.zero(ring)
        for j in range(len(variables)):
            if t[i][j]:
                expr = expr + xs[j].scale(t[i][j])
        bindings[v] = expr
    return f.substitute_poly(bindings)


def classify_Ak(p, ch, point, max_k=6):
    """Type of a surface double point: ``A_k`` for ``k <= max_k``, ``NotADuValAk`` or ``Undetermined``.

    The nondegenerate part of the quadratic form is split off by iterated
    completion of squares on the series truncated at order ``max_k + 2``; the
    residual one-variable series ``c*w^(k+1) + ...`` gives ``k``.
    """
    ch, local = _local(p, ch, point)
    coords = list(ch.coordinates)
    if len(coords) != 3:
        raise SingularityError(f"surface germ expected: chart has {len(coords)} coordinates")
    order = max_k + 2
    return classify_germ(truncate(local, order), coords, order)


def classify_germ(f, coords, order):
    """Classify a germ at the origin given as a truncated polynomial in ``coords``."""
    parts = f.homogeneous_parts()
    if 0 in parts:
        raise SingularityError("germ does not vanish at the origin")
    mult = min(parts) if parts else None
    if mult != 2:
        raise SingularityError(f"double point expected, multiplicity is {mult}")
    q = parts[2]
    m = quadratic_matrix(q, coords)
    rank = matrix_rank(m)
    if rank == len(coords):
        return AkType("A", 1)
    if rank < len(coords) - 1:
        return AkType("NotADuValAk")
    t, diag = _diagonalize(m)
    order_idx = sorted(range(len(coords)), key=lambda i: diag[i] == 0)
    t = [[row[i] for i in order_idx] for row in t]
    diag = [diag[i] for i in order_idx]
    g = truncate(_linear_change(f, coords, t), order)
    us, w = coords[:-1], coords[-1]
    ring = g.ring
    # Newton iteration for the critical point u(w) of g in the u-directions
    sol = {u: Poly.zero(ring) for u in us}
    wpoly = Poly.symbol(ring, w)
    grads = {u: g.derivative(u) for u in us}
    for _ in range(order + 1):
        bindings = dict(sol)
        bindings[w] = wpoly
        step = {}
        for u, lam in zip(us, diag):
            val = truncate(grads[u].substitute_poly(bindings), order)
            step[u] = val.scale(Fraction(-1) / (2 * lam))
        if all(s.is_zero() for s in step.values()):
            break
        sol = {u: truncate(sol[u] + step[u], order) for u in us}
    bindings = dict(sol)
    bindings[w] = wpoly
    phi = truncate(g.substitute_poly(bindings), order)
    if phi.is_zero():
        return AkType("Undetermined")
    k = min(sum(e) for e in phi.terms) - 1
    return AkType("A", k)


@dataclass(frozen=True)
class CAProbe:
    multiplicity: int
    quadratic_rank: int | None
    restricted_cubic: Poly | None

    @property
    def compatible_cA2(self):
        return (
            self.multiplicity == 2
            and self.quadratic_rank == 2
            and self.restricted_cubic is not None
            and not self.restricted_cubic.is_zero()
        )


def probe_cA(p, ch, point):
    """Multiplicity, quadratic rank and cubic part restricted to the kernel of the quadric.

    A threefold double point whose quadric has rank 2 and whose cubic term
    does not vanish on the kernel plane is of type ``cA_2``.
    """
    ch, local = _local(p, ch, point)
    coords = list(ch.coordinates)
    cone = tangent_cone(p, ch, point)
    if cone.multiplicity != 2:
        return CAProbe(cone.multiplicity, None, None)
    m = quadratic_matrix(cone.lowest_form, coords)
    rank = matrix_rank(m)
    kernel = nullspace(m)
    cubic = local.homogeneous_parts().get(3, Poly.zero(local.ring))
    ring = local.ring
    params = coords[: len(kernel)]
    bindings = {}
    for i, v in enumerate(coords):
        expr = Poly.zero(ring)
        for j, vec in enumerate(kernel):
            if vec[i]:
                expr = expr + Poly.symbol(ring, params[j]).scale(vec[i])
        bindings[v] = expr
    restricted = cubic.substitute_poly(bindings)
    return CAProbe(2, rank, restricted)


# cyclic quotient singularities ---------------------------------------------------

@dataclass(frozen=True)
class QuotientType:
    kind: str  # "Terminal", "CanonicalNotTerminal" or "WorseThanCanonical"
    r: int
    numerators: tuple  # r * age for each element acting nontrivially

    @property
    def ages(self):
        return tuple(Fraction(n, self.r) for n in self.numerators)

    def __str__(self):
        return self.kind


def ages(r, weights):
    """``age(j) = sum_i frac(j*w_i/r)`` for the ``j = 1..r-1`` acting nontrivially.

    Elements fixing every coordinate lie in the kernel of the action and are
    skipped, so non-faithful weights are classified by their effective group.
    """
    return tuple(Fraction(n, r) for n in age_numerators(r, [int(w) for w in weights]))


def _classify_numerators(nums, r):
    if all(n > r for n in nums):
        return "Terminal"
    if all(n >= r for n in nums):
        return "CanonicalNotTerminal"
    return "WorseThanCanonical"


def reid_tai(r, weights):
    """Reid-Tai criterion for ``1/r(w_1, ..., w_n)``."""
    if r < 1:
        raise ValueError("group order must be positive")
    nums = tuple(age_numerators(r, [int(w) for w in weights]))
    return QuotientType(_classify_numerators(nums, r), r, nums)


@lru_cache(maxsize=None)
def _eigen(r, e):
    z = cmath.exp(2j * math.pi / r) ** e
    return (round(z.real, 9), round(z.imag, 9)), z


@lru_cache(maxsize=None)
def _angle(r, key):
    theta = math.atan2(key[1], key[0]) / (2 * math.pi)
    if theta < -1e-12:
        theta += 1
    if abs(theta - 1) < 1e-9:
        theta = 0.0
    return round(theta * r)


def reid_tai_bruteforce(r, weights):
    """Oracle: enumerate the diagonal group elements as complex roots of unity.

    Each element's age is read off from the arguments of its eigenvalues,
    rounded to the exact fraction with denominator ``r``.
    """
    if r == 1:
        return "Terminal"
    seen = set()
    found = []
    for j in range(1, r):
        eig = tuple(_eigen(r, j * w) for w in weights)
        key = tuple(k for k, _ in eig)
        if all(abs(z - 1) < 1e-9 for _, z in eig) or key in seen:
            continue
        seen.add(key)
        found.append(sum(_angle(r, k) for k, _ in eig))
    return _classify_numerators(found, r)
