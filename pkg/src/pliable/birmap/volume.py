"""Volume preservation of maps between toric pairs, computed on affine charts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra.arith import divexact, poly_lcm
from ..algebra.ops import substitute
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from ..toric import Chart, ChartError, chart, chart_coordinates, dehomogenize


class VolumeError(ValueError):
    """Chart incompatibility, constraint-bearing pairs or a non-dominant map."""


@dataclass(frozen=True)
class VPReport:
    status: str  # "preserved", "violated" or "indeterminate"
    lam: Fraction | None
    charts: tuple
    residual: RatFunc
    ratio: RatFunc

    @property
    def preserved(self):
        return self.status == "preserved"


def _as_chart(ring, ch):
    if isinstance(ch, Chart):
        return ch
    return chart(ring, tuple(ch))


def poly_det(rows):
    """Determinant of a square matrix of polynomials (Laplace expansion)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return Poly.zero(rows[0][0].ring)
    return total


def ratfunc_det(matrix):
    """Determinant of a matrix of rational functions, clearing row denominators first."""
    rows = []
    dens = []
    for row in matrix:
        d = Poly.one(row[0].ring)
        for x in row:
            if not x.den.is_constant():
                d = poly_lcm(d, x.den)
        rows.append([x.num * divexact(d, x.den) for x in row])
        dens.append(d)
    det = poly_det(rows)
    den = Poly.one(det.ring)
    for d in dens:
        den = den * d
    return RatFunc.make(det, den)


def jacobian(functions, variables):
    return [[f.derivative(v) for v in variables] for f in functions]


def chart_expression(m, src_chart, tgt_chart):
    """The map in affine coordinates: target chart coordinate -> RatFunc on the source chart."""
    comps = {}
    for v, c in m.component_map().items():
        comps[v] = dehomogenize(c, src_chart)
    for u in tgt_chart.units:
        if comps[u].is_zero():
            raise ChartError(f"map is not defined on chart {tgt_chart.units}: {u} vanishes")
    return chart_coordinates(comps, tgt_chart)


def volume_ratio(m, src, tgt, src_chart, tgt_chart):
    """``lambda(x) = (eps_t/eps_s) * J * f_src / (f_tgt o phi)`` on the given charts."""
    if src.constraints or tgt.constraints:
        raise VolumeError("volume forms are only computed for pairs without constraints")
    src_chart = _as_chart(m.source_ring, src_chart)
    tgt_chart = _as_chart(m.target_ring, tgt_chart)
    expr = chart_expression(m, src_chart, tgt_chart)
    xs = src_chart.coordinates
    ys = tgt_chart.coordinates
    funcs = [expr[y] for y in ys]
    jac = ratfunc_det(jacobian(funcs, xs))
    if jac.is_zero():
        raise VolumeError("Jacobian determinant vanishes: the map is not dominant")
    f_src = dehomogenize(src.divisor, src_chart)
    f_tgt = dehomogenize(tgt.divisor, tgt_chart)
    pulled = substitute(f_tgt, expr, src_chart.chart_ring)
    if pulled.is_zero():
        raise VolumeError("target divisor pulls back to zero")
    sign = Fraction(tgt_chart.orientation, src_chart.orientation)
    return jac * RatFunc.from_poly(f_src) * sign / pulled


def volume_preserving(m, src, tgt, src_chart, tgt_chart):
    """Report whether ``m^* omega_tgt = lambda * omega_src`` with constant ``lambda``."""
    src_c = _as_chart(m.source_ring, src_chart)
    tgt_c = _as_chart(m.target_ring, tgt_chart)
    ratio = volume_ratio(m, src, tgt, src_c, tgt_c)
    lead = ratio.num.leading_coeff() / ratio.den.leading_coeff()
    residual = RatFunc.from_poly(ratio.num - ratio.den.scale(lead))
    charts = (src_c.units, tgt_c.units)
    if ratio.is_constant() and not ratio.is_zero():
        return VPReport("preserved", ratio.constant_value(), charts, residual, ratio)
    return VPReport("violated", None, charts, residual, ratio)


# independent pointwise oracle -------------------------------------------------

class Dual:
    """Truncated multivariate dual numbers ``a + sum_i b_i eps_i`` over Q."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    @staticmethod
    def lift(x, n):
        return x if isinstance(x, Dual) else Dual(Fraction(x), [Fraction(0)] * n)

    def __add__(self, o):
        o = Dual.lift(o, len(self.b))
        return Dual(self.a + o.a, [x + y for x, y in zip(self.b, o.b)])

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, [-x for x in self.b])

    def __sub__(self, o):
        return self + (-Dual.lift(o, len(self.b)))

    def __rsub__(self, o):
        return Dual.lift(o, len(self.b)) - self

    def __mul__(self, o):
        o = Dual.lift(o, len(self.b))
        return Dual(self.a * o.a, [self.a * y + o.a * x for x, y in zip(self.b, o.b)])

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Dual.lift(1, len(self.b))
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        if self.a == 0:
            raise ZeroDivisionError("dual number with zero real part")
        inv = 1 / self.a
        return Dual(inv, [-x * inv * inv for x in self.b])

    def __truediv__(self, o):
        return self * Dual.lift(o, len(self.b)).inverse()

    def __rtruediv__(self, o):
        return Dual.lift(o, len(self.b)) * self.inverse()


def _fdet(m):
    n = len(m)
    a = [list(r) for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def pointwise_ratio(m, src, tgt, src_chart, tgt_chart, point, atom_values=None):
    """Value of the volume ratio at a rational point, via dual-number Jacobians.

    Only evaluation is used (no symbolic differentiation or gcd), so this is
    an independent check of :func:`volume_ratio`.  Atoms must be given
    numeric values in ``atom_values`` (shared by source and target).
    """
    src_c = _as_chart(m.source_ring, src_chart)
    tgt_c = _as_chart(m.target_ring, tgt_chart)
    atom_values = atom_values or {}
    xs = src_c.coordinates
    n = len(xs)
    full = {}
    for i, v in enumerate(m.source_ring.variables):
        if v in src_c.units:
            full[v] = Dual.lift(1, n)
        else:
            k = xs.index(v)
            full[v] = Dual(Fraction(point[v]), [Fraction(int(j == k)) for j in range(n)])
    vals = dict(full)
    for name, val in atom_values.items():
        vals[name] = Dual.lift(val, n)
    image = {}
    for v, c in m.component_map().items():
        image[v] = c.num.evaluate(vals, one=Dual.lift(1, n)) / c.den.evaluate(vals, one=Dual.lift(1, n))
        image[v] = Dual.lift(image[v], n)
    coords = {}
    for v, e in tgt_c.exponents:
        val = image[v]
        for u, k in zip(tgt_c.units, e):
            if k > 0:
                val = val / image[u] ** k
            elif k < 0:
                val = val * image[u] ** (-k)
        coords[v] = val
    jac = _fdet([coords[y].b for y in tgt_c.coordinates])
    src_vals = {v: full[v].a for v in m.source_ring.variables}
    src_vals.update({k: Fraction(v) for k, v in atom_values.items()})
    f_src = src.divisor.evaluate(src_vals, one=Fraction(1))
    tgt_vals = {v: Fraction(1) for v in tgt_c.units}
    tgt_vals.update({v: coords[v].a for v in tgt_c.coordinates})
    # atoms on the target side are evaluated at the same (dehomogenized) arguments
    tgt_vals.update(_target_atom_values(m, tgt_c, tgt_vals, src_vals, atom_values))
    f_tgt = tgt.divisor.evaluate(tgt_vals, one=Fraction(1))
    if f_tgt == 0:
        raise ZeroDivisionError("target divisor vanishes at the image point")
    sign = Fraction(tgt_c.orientation, src_c.orientation)
    return sign * jac * Fraction(f_src) / Fraction(f_tgt)


def _target_atom_values(m, tgt_c, tgt_vals, src_vals, atom_values):
    if not m.target_ring.atoms:
        return {}
    if atom_values:
        raise VolumeError("pointwise oracle supports atoms only after instantiation")
    return {}


def random_chart_point(ch, rng, bound=7):
    return {v: Fraction(rng.randint(-bound, bound) or 1, rng.randint(1, 3)) for v in ch.coordinates}


def chart_pairs(m, limit=None):
    """Valid (source chart, target chart) unit-set pairs for ``m``."""
    from ..toric import valid_charts

    out = []
    for su, tu in itertools.product(valid_charts(m.source_ring), valid_charts(m.target_ring)):
        out.append((su, tu))
        if limit and len(out) >= limit:
            break
    return out
