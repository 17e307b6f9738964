from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from pliable.algebra import GradedRing, Poly, divides, multidegree, poly_gcd, poly_parse, poly_print
from pliable.algebra.kernel import age_numerators, backends, mul_terms
from pliable.birmap import reid_tai, reid_tai_bruteforce
from pliable.lattice import GramLattice, Region, det, integer_points, integer_points_bruteforce, sublattice_det
from pliable.toric import chamber_decomposition, sort_rays

RING = GradedRing.make(["x", "y", "z"], [[1, 2, 3]])

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
exponents = st.tuples(*[st.integers(0, 4)] * 3)
term_dicts = st.dictionaries(exponents, coeffs.filter(lambda c: c != 0), max_size=8)


def poly(terms):
    return Poly(RING, dict(terms))


@given(term_dicts)
def test_print_parse_roundtrip(terms):
    p = poly(terms)
    assert poly_parse(poly_print(p), RING) == p


@given(term_dicts, term_dicts)
def test_product_matches_naive(a, b):
    naive = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            naive[e] = naive.get(e, 0) + ca * cb
    naive = {e: c for e, c in naive.items() if c}
    for impl in backends().values():
        assert mul_terms(a, b, 3, impl) == naive


@given(st.lists(exponents, min_size=1, max_size=3), st.lists(exponents, min_size=1, max_size=3),
       st.integers(0, 3))
def test_multidegree_additive(ea, eb, shift):
    # monomials of one weighted degree give homogeneous polynomials
    def homog(es):
        target = sum(w * x for w, x in zip((1, 2, 3), es[0]))
        return poly({e: Fraction(i + 1) for i, e in enumerate(es)
                     if sum(w * x for w, x in zip((1, 2, 3), e)) == target})
    p, q = homog(ea), homog(eb)
    assert multidegree(p * q) == tuple(a + b for a, b in zip(multidegree(p), multidegree(q)))


@settings(max_examples=40, deadline=None)
@given(term_dicts.filter(bool), term_dicts.filter(bool))
def test_gcd_divides_both(a, b):
    p, q = poly(a), poly(b)
    g = poly_gcd(p, q)
    assert divides(g, p) and divides(g, q)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 30), st.lists(st.integers(-40, 40), min_size=1, max_size=4))
def test_reid_tai_matches_bruteforce(r, weights):
    assert reid_tai(r, weights).kind == reid_tai_bruteforce(r, weights)


@given(st.integers(2, 40), st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_age_backends_agree(r, weights):
    results = {tuple(age_numerators(r, weights, impl)) for impl in backends().values()}
    assert len(results) == 1


@st.composite
def regions(draw):
    n = draw(st.integers(1, 3))
    names = [f"b{i}" for i in range(n)]
    box = draw(st.integers(1, 5))
    cons = [f"{v} >= {-box}" for v in names] + [f"{v} <= {box}" for v in names]
    for _ in range(draw(st.integers(0, 3))):
        cs = draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
        c0 = draw(st.integers(-6, 10))
        cons.append(" + ".join(f"{c}*{v}" for c, v in zip(cs, names)) + f" + {c0} >= 0")
    return Region.parse(names, cons), box


@settings(max_examples=80, deadline=None)
@given(regions())
def test_integer_points_match_box_scan(data):
    region, box = data
    assert integer_points(region) == integer_points_bruteforce(region, box + 1)


@st.composite
def unimodular(draw, n):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.sampled_from([(a, b) for a in range(n) for b in range(n) if a != b]))
        k = draw(st.integers(-3, 3))
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    return m


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), unimodular(2))
def test_sublattice_det_unimodular_invariant(entries, u):
    a, b, c = entries
    lat = GramLattice(("p", "q"), ((a, b), (b, c)))
    assert sublattice_det([lat.vector(row) for row in u]) == det(lat.gram)


columns = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any)


@given(st.lists(columns, min_size=2, max_size=6))
def test_chambers_cover_columns_counterclockwise(cols):
    ring = GradedRing.make([f"x{i}" for i in range(len(cols))], [[c[0] for c in cols], [c[1] for c in cols]])
    chambers = chamber_decomposition(ring)
    rays = [ch.rays[0] for ch in chambers]
    assert rays == sort_rays(rays)
    for ch in chambers:
        a, b = ch.rays
        assert a[0] * b[1] - a[1] * b[0] > 0
