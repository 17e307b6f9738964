from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pliable.algebra import GradedRing, Poly, multidegree, poly_parse
from pliable.birmap import (
    COMPONENT_1,
    COMPONENT_2,
    NOT_A_MEMBER,
    CYPair,
    MapError,
    RationalMapSpec,
    classify_Ak,
    fixes_divisor_pointwise,
    gq_membership,
    gq_rank_condition,
    map_compose,
    map_equal,
    pair_diagnostics,
    pell_identity,
    pell_selfmap,
    probe_cA,
    pullback,
    reid_tai,
    reid_tai_bruteforce,
    saturation_roundtrip,
    strict_transform,
    tangent_cone,
    volume_preserving,
)
from pliable.birmap.volume import chart_pairs, pointwise_ratio, random_chart_point
from pliable.scenarios.instances import forms_for, inst_map, inst_pair
from pliable.toric import chart

from conftest import SEEDS, suite_model


@pytest.fixture(scope="module")
def st():
    return suite_model("links_strict_transform")


def test_sigma_strict_transform_symbolic(st):
    sigma, d1, d2 = st.maps["sigma"], st.pairs["D1"], st.pairs["D2"]
    strict, removed = strict_transform(d1.divisor, sigma, sigma.exceptional)
    assert strict == d2.divisor
    assert [(str(f), k) for f, k in removed] == [("x", 2)]
    assert saturation_roundtrip(d1.divisor, sigma)


def test_eb_strict_transform(st):
    eb = st.maps["eb"]
    strict, removed = strict_transform(st.pairs["D3b"].divisor, eb)
    assert strict == st.pairs["D1"].divisor
    assert [(str(f), k) for f, k in removed] == [("x0", 1)]


def test_pullback_degree(st):
    sigma = st.maps["sigma"]
    raw = pullback(st.pairs["D1"].divisor, sigma)
    x = Poly.symbol(sigma.source_ring, "x")
    assert raw == st.pairs["D2"].divisor * x * x
    assert multidegree(raw) == (0, 4)


def test_chi_b_is_composite(st):
    nub, sigma, eb, chib = (st.maps[n] for n in ("nub", "sigma", "eb", "chib"))
    composite = map_compose(map_compose(nub, sigma), eb)
    assert map_equal(composite, chib)


def test_compose_rejects_mismatched_rings(st):
    with pytest.raises(MapError):
        map_compose(st.maps["sigma"], st.maps["nub"])


def test_map_needs_one_component_per_target_variable():
    r = GradedRing.make(["x", "y"], [[1, 1]])
    with pytest.raises(MapError):
        RationalMapSpec.make(r, r, [Poly.symbol(r, "x")])


def test_pair_anticanonical_mismatch():
    r = GradedRing.make(["x0", "x1", "x2", "x3"], [[1, 1, 1, 1]])
    bad = CYPair(r, (), poly_parse("x0^3 + x1^3", r))
    assert any(p.startswith("anticanonical mismatch") for p in pair_diagnostics(bad))
    good = CYPair(r, (), poly_parse("x0^4 + x3^4", r))
    assert pair_diagnostics(good) == []


@pytest.mark.parametrize("seed", SEEDS)
def test_sigma_volume_preserving_two_chart_pairs(st, seed):
    sigma = st.maps["sigma"]
    forms = forms_for([sigma.source_ring, sigma.target_ring], seed)
    m, s, t = inst_map(sigma, forms), inst_pair(st.pairs["D2"], forms), inst_pair(st.pairs["D1"], forms)
    pairs = chart_pairs(m)
    lams = {volume_preserving(m, s, t, *p).lam for p in pairs[:2]}
    assert lams == {Fraction(-1)}
    rng = random.Random(seed)
    su, tu = pairs[0]
    point = random_chart_point(chart(m.source_ring, su), rng)
    assert pointwise_ratio(m, s, t, su, tu, point) == -1


def test_wrong_divisor_is_not_preserved(st):
    sigma = st.maps["sigma"]
    forms = forms_for([sigma.source_ring, sigma.target_ring], 0)
    m = inst_map(sigma, forms)
    s, t = inst_pair(st.pairs["D2a"], forms), inst_pair(st.pairs["D1"], forms)
    rep = volume_preserving(m, s, t, *chart_pairs(m)[0])
    assert not rep.preserved


# Pell conic and G_Q ------------------------------------------------------------------


@pytest.fixture(scope="module")
def pgd():
    return GradedRing.make(["x0", "x1", "x2", "g", "d"], [[1, 1, 1, 0, 0]],
                           [("A", ("x0", "x1", "x2"), 2), ("B", ("x0", "x1", "x2"), 3),
                            ("C", ("x0", "x1", "x2"), 4)])


def test_pell_identity(pgd):
    A, B, C, u, v = (poly_parse(s, pgd) for s in ("A", "B", "C", "g", "d"))
    lhs, rhs = pell_identity(A, B, C, u, v)
    assert lhs == rhs


def test_gq_components(pgd):
    A, B, C = (poly_parse(s, pgd) for s in ("A", "B", "C"))
    one = Poly.one(pgd)
    identity = [[one, Poly.zero(pgd)], [Poly.zero(pgd), one]]
    assert gq_membership(A, B, C, identity) == COMPONENT_1
    assert gq_rank_condition(A, B, C, identity)
    # (u, v) -> (-u - (B/A) v, v) swaps the roots of Q
    flip = [[-one * A, -B], [Poly.zero(pgd), A]]
    assert gq_membership(A, B, C, flip) == COMPONENT_2
    assert gq_membership(A, B, C, [[one, one], [Poly.zero(pgd), one]]) == NOT_A_MEMBER


@pytest.fixture(scope="module")
def quartic_data():
    ring = GradedRing.make(["x0", "x1", "x2", "x3"], [[1, 1, 1, 1]])
    A = poly_parse("x0^2 + 2*x1*x2 - x2^2", ring)
    B = poly_parse("x0^3 - x1^2*x2 + 3*x2^3", ring)
    C = poly_parse("x1^4 + x0*x2^3 - 2*x0^2*x1^2 + 5*x2^4", ring)
    D = poly_parse("x3^2", ring) * A + poly_parse("x3", ring) * B + C
    return ring, A, B, C, D


def test_pell_selfmaps(quartic_data):
    ring, A, B, C, D = quartic_data
    pair = CYPair(ring, (), D)
    F, G = poly_parse("x0 - x2", ring), poly_parse("x1^2 + x0*x2", ring)
    for variant, fixed, lam in ((1, True, 1), (2, False, -1)):
        m = pell_selfmap(A, B, C, F, G, variant)
        assert fixes_divisor_pointwise(m, D) is fixed
        rep = volume_preserving(m, pair, pair, ("x0",), ("x0",))
        assert rep.preserved and rep.lam == lam


def test_pell_selfmap_degree_check(quartic_data):
    ring, A, B, C, _ = quartic_data
    with pytest.raises(MapError):
        pell_selfmap(A, B, C, poly_parse("x0", ring), poly_parse("x1", ring), 1)


# singularities -----------------------------------------------------------------------


def test_a1_and_a2_points():
    ring = GradedRing.make(["x0", "x1", "x2", "x3"], [[1, 1, 1, 1]])
    a1 = poly_parse("(x0^2 + x1^2 + x2^2)*x3^2 + x0^3 + x1^3 + x2^4", ring)
    a2 = poly_parse("x0*x1*x3^2 + (x2^3 + x0^3 + x1^3)*x3 + x0^4 + x2^4", ring)
    assert tangent_cone(a1, ("x3",), (0, 0, 0, 1)).quadratic_rank == 3
    assert tangent_cone(a2, ("x3",), (0, 0, 0, 1)).quadratic_rank == 2
    assert str(classify_Ak(a1, ("x3",), (0, 0, 0, 1))) == "A1"
    assert str(classify_Ak(a2, ("x3",), (0, 0, 0, 1))) == "A2"


def test_ca2_probe():
    ring = GradedRing.make(["x", "y", "z", "t", "w"], [[1, 1, 1, 1, 1]])
    f = poly_parse("x*y*w + z^3 + t^3", ring)
    probe = probe_cA(f, ("w",), (0, 0, 0, 0, 1))
    assert probe.multiplicity == 2 and probe.quadratic_rank == 2 and probe.compatible_cA2


@pytest.mark.parametrize("r, weights, kind", [
    (2, (1, 1, 1), "Terminal"),
    (3, (0, 1, 2), "CanonicalNotTerminal"),
    (3, (1, 1, -2), "CanonicalNotTerminal"),
    (5, (1, 1, -2), "CanonicalNotTerminal"),
    (7, (1, 1, -2), "CanonicalNotTerminal"),
    (4, (1, 1, 1), "WorseThanCanonical"),
    (1, (0, 0, 0), "Terminal"),
])
def test_reid_tai(r, weights, kind):
    assert reid_tai(r, weights).kind == kind
    assert reid_tai_bruteforce(r, weights) == kind


def test_reid_tai_rejects_bad_order():
    with pytest.raises(ValueError):
        reid_tai(0, (1,))
