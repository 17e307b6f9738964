from __future__ import annotations

import pytest

from pliable.algebra import GradedRing, RingError, poly_parse
from pliable.toric import (
    ChartError,
    chamber_decomposition,
    chart,
    chart_quotient,
    classify_wall,
    dehomogenize,
    find_chamber,
    irrelevant_ideal,
    sort_rays,
    two_ray_game,
    valid_charts,
    wall_between,
    walls,
)


def ring(weights, names):
    return GradedRing.make(names.split(), [[int(x) for x in r.split()] for r in weights.split("/")])


@pytest.fixture(scope="module")
def x4():
    return ring("1 1 1 2 0 -2 / 0 0 0 0 1 1", "x0 x1 x2 x3 u v")


@pytest.fixture(scope="module")
def f7():
    return ring("1 1 1 2 0 -1 -2 / 0 0 0 0 1 1 1", "x0 x1 x2 y u0 u1 u2")


def test_sort_rays_counterclockwise():
    assert sort_rays([(0, -1), (-1, 0), (1, 1), (1, 0)]) == [(1, 0), (1, 1), (-1, 0), (0, -1)]


def test_projective_space_single_chamber():
    p3 = ring("1 1 1 1", "x0 x1 x2 x3")
    chambers = chamber_decomposition(p3)
    assert len(chambers) == 1
    [w] = walls(p3)
    assert str(classify_wall(p3, w)) == "Fibration"


def test_two_chambers_and_divisorial_wall(x4):
    c1, c2 = chamber_decomposition(x4)
    assert c1.rays == ((1, 0), (0, 1)) and c2.rays == ((0, 1), (-2, 1))
    w = wall_between(x4, c1, (0, 1))
    assert str(classify_wall(x4, w)) == "DivisorialContraction(v)"
    back = wall_between(x4, c2, (0, 1))
    assert str(classify_wall(x4, back)) == "DivisorialExtraction(v)"


def test_irrelevant_ideal_product_form(x4):
    c1 = find_chamber(x4, (1, 1))
    assert str(irrelevant_ideal(x4, c1)) == "(x0,x1,x2,x3)(u,v)"


def test_flip_wall(f7):
    chambers = chamber_decomposition(f7)
    assert len(chambers) == 3
    w = wall_between(f7, chambers[0], (0, 1))
    assert str(classify_wall(f7, w)) == "SmallModification(u1,u2)"
    steps = [str(k) for _, k in two_ray_game(f7, chambers[0])]
    assert steps == ["SmallModification(u1,u2)", "DivisorialContraction(u2)", "Fibration"]


def test_rank_three_rejected():
    r = ring("1 0 0 1 / 0 1 0 1 / 0 0 1 1", "a b c d")
    with pytest.raises(RingError):
        chamber_decomposition(r)


def test_chart_and_dehomogenize(x4):
    ch = chart(x4, ("x0", "u"))
    assert set(ch.coordinates) == {"x1", "x2", "x3", "v"}
    p = poly_parse("x0^2*u + x1*x0*u", x4)
    q = dehomogenize(p, ch)
    assert q == poly_parse("1 + x1", ch.chart_ring)


def test_non_unimodular_chart_rejected(x4):
    assert ("x3", "u") not in valid_charts(x4)
    with pytest.raises(ChartError):
        chart(x4, ("x3", "u"))


def test_chart_quotient_types():
    r = ring("1 1 1 2", "x0 x1 x2 y")
    q = chart_quotient(r, ("y",))
    assert q.r == 2 and sorted(q.weights) == [1, 1, 1]
