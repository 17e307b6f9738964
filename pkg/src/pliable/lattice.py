"""Intersection lattices, divisor classes, polyhedral regions and Riemann-Roch counts."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .algebra.parse import poly_parse
from .algebra.poly import Poly
from .algebra.ring import GradedRing
from .algebra.series import truncate


class LatticeError(ValueError):
    """Mismatched lattices, malformed Gram matrices or bad class expressions."""


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def det(m):
    """Exact determinant of a square rational matrix."""
    a = [[_frac(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return Fraction(1)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return out


def _linear_terms(text, names):
    """Coefficients and constant of a linear expression in ``names``."""
    ring = _linear_ring(tuple(names))
    p = poly_parse(text, ring)
    coeffs = [Fraction(0)] * len(names)
    const = Fraction(0)
    for e, c in p.terms.items():
        s = sum(e)
        if s == 0:
            const += c
        elif s == 1:
            coeffs[e.index(1)] += c
        else:
            raise LatticeError(f"expression is not linear: {text!r}")
    return coeffs, const


_LINEAR_RINGS = {}


def _linear_ring(names):
    if names not in _LINEAR_RINGS:
        _LINEAR_RINGS[names] = GradedRing.make(list(names), [[1] * len(names)], name="linear")
    return _LINEAR_RINGS[names]


@dataclass(frozen=True)
class GramLattice:
    """Free module with a symmetric rational intersection form on a named basis."""

    names: tuple
    gram: tuple
    label: str = ""

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise LatticeError("basis names must be distinct")
        gram = tuple(tuple(_frac(x) for x in row) for row in self.gram)
        if len(gram) != n or any(len(r) != n for r in gram):
            raise LatticeError(f"Gram matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self):
        return len(self.names)

    def det(self):
        return det(self.gram)

    def element(self, name):
        if name not in self.names:
            raise LatticeError(f"unknown basis element {name!r}")
        return DivClass(self, tuple(Fraction(int(n == name)) for n in self.names))

    def zero(self):
        return DivClass(self, (Fraction(0),) * self.rank)

    def vector(self, coords):
        if isinstance(coords, dict):
            unknown = set(coords) - set(self.names)
            if unknown:
                raise LatticeError(f"unknown basis elements {sorted(unknown)}")
            coords = [coords.get(n, 0) for n in self.names]
        coords = tuple(_frac(x) for x in coords)
        if len(coords) != self.rank:
            raise LatticeError(f"class needs {self.rank} coordinates")
        return DivClass(self, coords)

    def parse(self, text):
        """Class from a linear expression such as ``"h - 2*e0 - e1"``."""
        coeffs, const = _linear_terms(text, self.names)
        if const:
            raise LatticeError(f"class expression has a constant term: {text!r}")
        return DivClass(self, tuple(coeffs))

    def gram_of(self, classes):
        return tuple(tuple(inner(u, v) for v in classes) for u in classes)


@dataclass(frozen=True)
class DivClass:
    lattice: GramLattice
    coords: tuple

    def _check(self, other):
        if not isinstance(other, DivClass) or other.lattice != self.lattice:
            raise LatticeError("classes belong to different lattices")

    def __add__(self, other):
        self._check(other)
        return DivClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return DivClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivClass(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, k):
        k = _frac(k)
        return DivClass(self.lattice, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other):
        return inner(self, other)

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        parts = []
        for c, n in zip(self.coords, self.lattice.names):
            if not c:
                continue
            mag = abs(c)
            term = n if mag == 1 else f"{mag}*{n}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" + {term}" if c > 0 else f" - {term}")
        return "".join(parts) or "0"


def inner(u, v):
    """``u^T G v``."""
    u._check(v)
    g = u.lattice.gram
    return sum(
        (u.coords[i] * g[i][j] * v.coords[j] for i in range(len(g)) for j in range(len(g)) if u.coords[i] and v.coords[j]),
        Fraction(0),
    )


def sublattice_det(classes):
    """Determinant of the matrix of pairwise intersections."""
    classes = list(classes)
    if not classes:
        return Fraction(1)
    lat = classes[0].lattice
    for c in classes[1:]:
        if c.lattice != lat:
            raise LatticeError("classes belong to different lattices")
    return det(lat.gram_of(classes))


# bundled lattices -------------------------------------------------------------

def a1_quartic_lattice():
    """Hyperplane class ``h`` and exceptional curve ``e`` over an A1 point."""
    return GramLattice(("h", "e"), ((4, 0), (0, -2)), "A1 quartic")


def a2_quartic_lattice():
    """Hyperplane class and the two exceptional curves over an A2 point."""
    return GramLattice(("h", "e0", "e1"), ((4, 0, 0), (0, -2, 1), (0, 1, -2)), "A2 quartic")


def d5a_lattice():
    """Class group of the K3 surface with the curves ``e1`` and ``ebar1``."""
    return GramLattice(("e1", "ebar1"), ((Fraction(-3, 2), 3), (3, -2)), "Cl(D5a)")


def restriction_gram(c1, c2):
    """Intersection matrix of ``(L, xi)`` (pulled-back line and tautological class) restricted to an anticanonical member of P(E)."""
    return ((2, c1 + 3), (c1 + 3, c1 * c1 + 3 * c1 - 2 * c2))


def pe_lattice(c1, c2):
    return GramLattice(("L", "xi"), restriction_gram(c1, c2), f"P(E) c1={c1} c2={c2}")


def pe_anticanonical(c1, c2=0, r=1, base_canonical=-3):
    """``-K = (r+1) xi - (c1 + K_Y) L`` for a rank ``r+1`` bundle on a base with ``K_Y = base_canonical * L``."""
    lat = pe_lattice(c1, c2)
    return lat.vector({"xi": r + 1, "L": -(c1 + base_canonical)})


def chern_from_ideal_sequence(k):
    """Chern classes of the extension of ``I_p(k)`` by ``O`` on P^2.

    Uses ``c_t(I_p(k)) (1 + (k-2) t) = (1 + (k-1) t)^2`` from the twisted
    Koszul resolution, read modulo ``t^3`` since Chern classes of sheaves on
    a surface stop in degree 2.
    """
    if k > 2:
        raise ValueError("the extension is trivial for k > 2; no such bundle")
    ring = _linear_ring(("t",))
    t = Poly.symbol(ring, "t")
    one = Poly.one(ring)
    rhs = truncate((one + t.scale(k - 1)) ** 2, 3)
    # invert 1 + (k-2) t modulo t^3
    a = Fraction(k - 2)
    inv = one - t.scale(a) + (t * t).scale(a * a)
    ct = truncate(rhs * inv, 3)
    coeffs = ct.coeffs_in("t")
    c1 = coeffs.get(1, Poly.zero(ring)).constant_value() if 1 in coeffs else Fraction(0)
    c2 = coeffs.get(2, Poly.zero(ring)).constant_value() if 2 in coeffs else Fraction(0)
    check = truncate((one + t.scale(c1) + (t * t).scale(c2)) * (one + t.scale(k - 2)), 3)
    if check != rhs:
        raise ArithmeticError("Koszul Chern identity failed")
    return int(c1), int(c2)


@dataclass(frozen=True)
class BundleCase:
    ident: int
    c1: int
    c2: int
    fano: bool
    description: str
    c2_range: tuple | None = None

    def __str__(self):
        kind = "Fano" if self.fano else "weak Fano"
        return f"({self.ident}) c1={self.c1} c2={self.c2} [{kind}] {self.description}"


def weak_fano_bundle_table():
    """Rank 2 bundles on P^2 with ``c1 in {0, -1}`` and ``P(E)`` (weak) Fano."""
    rows = [
        (1, -1, 0, True, "O + O(-1)", None),
        (2, 0, -1, True, "O(1) + O(-1)", None),
        (3, 0, 0, True, "O + O", None),
        (4, -1, 1, True, "T(-2)", None),
        (5, 0, 1, True, "extension of I_p by O", None),
        (6, 0, 2, True, "stable", (2, 2)),
        (7, 0, 3, True, "stable", (3, 3)),
        (8, -1, -2, False, "O(1) + O(-2)", None),
        (9, -1, 1, False, "extension of I_p(-1) by O", None),
    ]
    out = [BundleCase(*r) for r in rows]
    for c2 in range(2, 6):
        out.append(BundleCase(10, -1, c2, False, "stable", (2, 5)))
    for c2 in range(4, 7):
        out.append(BundleCase(11, 0, c2, False, "stable", (4, 6)))
    return out


# cones ----------------------------------------------------------------------------

def _solve_square(a, b):
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def _independent_rows(a):
    """Indices of a maximal set of linearly independent rows."""
    chosen = []
    basis = []
    for i, row in enumerate(a):
        v = list(row)
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((piv, v))
            chosen.append(i)
    return chosen


def basic_feasible_solutions(columns, target):
    """All vertices of ``{lam >= 0 : sum lam_i columns_i = target}``."""
    dim = len(target)
    rows = [[_frac(col[r]) for col in columns] for r in range(dim)]
    rhs = [_frac(x) for x in target]
    keep = _independent_rows(rows)
    # drop dependent equations after checking they are consistent
    rows_k = [rows[i] for i in keep]
    rhs_k = [rhs[i] for i in keep]
    rank = len(keep)
    found = []
    for subset in itertools.combinations(range(len(columns)), rank):
        sub = [[row[j] for j in subset] for row in rows_k]
        sol = _solve_square(sub, rhs_k)
        if sol is None or any(x < 0 for x in sol):
            continue
        lam = [Fraction(0)] * len(columns)
        for j, x in zip(subset, sol):
            lam[j] = x
        if all(sum(rows[r][j] * lam[j] for j in range(len(columns))) == rhs[r] for r in range(dim)):
            if lam not in found:
                found.append(lam)
    return found


def cone_decompose(generators, target):
    """Nonnegative rational ``lam`` with ``target = sum lam_i generators_i``, or ``None``.

    Returns the barycenter of the vertices of the solution polytope, which is
    canonical and symmetric under permutations fixing the data.
    """
    gens = list(generators)
    for g in gens:
        target._check(g)
    if target.is_zero():
        return tuple(Fraction(0) for _ in gens)
    verts = basic_feasible_solutions([g.coords for g in gens], target.coords)
    if not verts:
        return None
    n = len(verts)
    return tuple(sum((v[i] for v in verts), Fraction(0)) / n for i in range(len(gens)))


# regions ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Polyhedron ``{a.x + c >= 0}`` and ``{a.x + c == 0}`` over named variables."""

    variables: tuple
    inequalities: tuple = ()
    equalities: tuple = ()

    @classmethod
    def parse(cls, variables, constraints):
        """Build from strings like ``"-5*b0 + b1 + 6 >= 0"``, ``"a <= 3"`` or ``"5*b0 - b1 = 7"``."""
        variables = tuple(variables)
        ineqs, eqs = [], []
        for text in constraints:
            for op in (">=", "<=", "=="):
                if op in text:
                    lhs, rhs = text.split(op, 1)
                    break
            else:
                if "=" not in text:
                    raise LatticeError(f"constraint needs >=, <= or =: {text!r}")
                op = "="
                lhs, rhs = text.split("=", 1)
            la, lc = _linear_terms(lhs, variables)
            ra, rc = _linear_terms(rhs, variables)
            diff = (tuple(x - y for x, y in zip(la, ra)), lc - rc)
            if op == ">=":
                ineqs.append(diff)
            elif op == "<=":
                ineqs.append((tuple(-x for x in diff[0]), -diff[1]))
            else:
                eqs.append(diff)
        return cls(variables, tuple(ineqs), tuple(eqs))

    def all_inequalities(self):
        out = list(self.inequalities)
        for a, c in self.equalities:
            out.append((a, c))
            out.append((tuple(-x for x in a), -c))
        return out

    @cached_property
    def _integral(self):
        """Constraints scaled to integer coefficients (same solution set)."""
        def scale(a, c):
            den = 1
            for x in (*a, c):
                den = den * x.denominator // math.gcd(den, x.denominator)
            return tuple(int(x * den) for x in a), int(c * den)

        return ([scale(a, c) for a, c in self.inequalities], [scale(a, c) for a, c in self.equalities])

    def contains(self, point):
        if all(isinstance(x, int) for x in point):
            ineqs, eqs = self._integral
            return (all(sum(x * y for x, y in zip(a, point)) + c >= 0 for a, c in ineqs)
                    and all(sum(x * y for x, y in zip(a, point)) + c == 0 for a, c in eqs))
        point = [_frac(x) for x in point]
        for a, c in self.inequalities:
            if sum(x * y for x, y in zip(a, point)) + c < 0:
                return False
        for a, c in self.equalities:
            if sum(x * y for x, y in zip(a, point)) + c != 0:
                return False
        return True

    def constraint_strings(self):
        out = []
        for a, c in self.inequalities:
            out.append(_format_linear(a, c, self.variables) + " >= 0")
        for a, c in self.equalities:
            out.append(_format_linear(a, c, self.variables) + " = 0")
        return out


def _format_linear(a, c, names):
    ring = _linear_ring(tuple(names))
    terms = {}
    for i, x in enumerate(a):
        if x:
            e = [0] * len(names)
            e[i] = 1
            terms[tuple(e)] = Fraction(x)
    if c:
        terms[(0,) * len(names)] = Fraction(c)
    return str(Poly(ring, terms)) if terms else "0"


def _normalize(a, c):
    scale = max([abs(x) for x in a] + [abs(c)])
    if scale == 0:
        return tuple(a), c
    return tuple(x / scale for x in a), c / scale


def fourier_motzkin(constraints, j):
    """Eliminate variable ``j`` from ``a.x + c >= 0`` constraints (exactly)."""
    pos, neg, rest = [], [], []
    for a, c in constraints:
        if a[j] > 0:
            pos.append((a, c))
        elif a[j] < 0:
            neg.append((a, c))
        else:
            rest.append((a, c))
    out = set(_normalize(a, c) for a, c in rest)
    for (ap, cp), (an, cn) in itertools.product(pos, neg):
        fp, fn = -an[j], ap[j]
        a = tuple(fp * x + fn * y for x, y in zip(ap, an))
        out.add(_normalize(a, fp * cp + fn * cn))
    return sorted(out)


def _bounds_1d(constraints, j):
    """Interval for ``x_j`` from constraints involving only ``x_j``; ``None`` if empty."""
    lo, hi = None, None
    for a, c in constraints:
        if a[j] == 0:
            if not any(a) and c < 0:
                return None
            continue
        v = -c / a[j]
        if a[j] > 0:
            lo = v if lo is None else max(lo, v)
        else:
            hi = v if hi is None else min(hi, v)
    return lo, hi


def variable_bounds(region):
    """Exact ``(min, max)`` of every coordinate over the region (``None`` entries when unbounded)."""
    cons = region.all_inequalities()
    n = len(region.variables)
    out = []
    for j in range(n):
        cur = cons
        for k in range(n):
            if k != j:
                cur = fourier_motzkin(cur, k)
        b = _bounds_1d(cur, j)
        if b is None:
            return None
        out.append(b)
    return out


def integer_points(region):
    """All integer points of a bounded region, sorted lexicographically."""
    n = len(region.variables)
    bounds = variable_bounds(region)
    if bounds is None:
        return []
    for (lo, hi), v in zip(bounds, region.variables):
        if lo is None or hi is None:
            raise LatticeError(f"region is unbounded in {v}")
        if lo > hi:
            return []
    cons = region.all_inequalities()
    # projections onto the first k coordinates, k = 1..n
    projections = [None] * n
    cur = cons
    for k in range(n - 1, -1, -1):
        projections[k] = cur
        if k:
            cur = fourier_motzkin(cur, k)
    points = []

    def extend(prefix):
        k = len(prefix)
        if k == n:
            if region.contains(prefix):
                points.append(tuple(prefix))
            return
        fixed = []
        for a, c in projections[k]:
            c2 = c + sum(a[i] * prefix[i] for i in range(k))
            a2 = tuple(0 if i < k else a[i] for i in range(n))
            fixed.append((a2, c2))
        b = _bounds_1d(fixed, k)
        if b is None:
            return
        lo, hi = b
        if lo is None or hi is None:
            raise LatticeError(f"region is unbounded in {region.variables[k]}")
        for x in range(math.ceil(lo), math.floor(hi) + 1):
            extend(prefix + [x])

    extend([])
    return sorted(points)


def integer_points_bruteforce(region, box):
    """Oracle: scan ``[-box, box]^n`` and keep the points in the region."""
    n = len(region.variables)
    return sorted(p for p in itertools.product(range(-box, box + 1), repeat=n) if region.contains(p))


# Riemann-Roch on curves in K3 surfaces ----------------------------------------------

@dataclass(frozen=True)
class RRResult:
    deg_p: Fraction
    deg_k: Fraction
    genus: Fraction
    h0: tuple

    def as_tuple(self):
        return (self.deg_p, self.deg_k, self.genus, self.h0)


def rr_on_k3_curve(lattice, curve, polarization, twist):
    """Degrees, genus and bounds on ``h^0(P)`` for ``P = twist * polarization`` restricted to ``curve``.

    On a K3 surface ``K_curve = curve|_curve`` by adjunction, so
    ``deg K = curve^2`` and ``g = curve^2/2 + 1``.  Riemann-Roch gives
    ``h^0(P) - h^0(K - P) = deg P + 1 - g``.
    """
    if curve.lattice != lattice or polarization.lattice != lattice:
        raise LatticeError("classes belong to a different lattice")
    c2 = inner(curve, curve)
    if c2.denominator != 1 or c2.numerator % 2:
        raise LatticeError(f"curve has odd or fractional self-intersection {c2}")
    deg_p = twist * inner(polarization, curve)
    deg_k = c2
    genus = c2 / 2 + 1
    chi = deg_p + 1 - genus
    slack = deg_k - deg_p
    if slack < 0:
        h0 = (int(chi), int(chi))
    elif slack == 0:
        h0 = (int(chi), int(chi) + 1)
    else:
        h0 = (max(int(chi), 0), int(chi + slack + 1))
    return RRResult(Fraction(deg_p), Fraction(deg_k), Fraction(genus), h0)
