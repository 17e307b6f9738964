from __future__ import annotations

from fractions import Fraction

import pytest

from pliable.lattice import (
    GramLattice,
    LatticeError,
    Region,
    a1_quartic_lattice,
    a2_quartic_lattice,
    chern_from_ideal_sequence,
    cone_decompose,
    d5a_lattice,
    det,
    inner,
    integer_points,
    integer_points_bruteforce,
    pe_anticanonical,
    restriction_gram,
    rr_on_k3_curve,
    sublattice_det,
    variable_bounds,
    weak_fano_bundle_table,
)


def test_det_exact():
    assert det([[2, 1], [1, 2]]) == 3
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2
    assert det([[1, 2], [2, 4]]) == 0


def test_gram_must_be_symmetric():
    with pytest.raises(LatticeError):
        GramLattice(("a", "b"), ((1, 2), (3, 1)))


def test_a1_lattice():
    lat = a1_quartic_lattice()
    h, e = lat.parse("h"), lat.parse("e")
    assert lat.det() == -8
    assert inner(lat.parse("h - 2*e"), lat.parse("h - 2*e")) == -4
    assert sublattice_det([h, e]) == -8


def test_a2_lattice_classes():
    lat = a2_quartic_lattice()
    assert inner(lat.parse("e0"), lat.parse("e1")) == 1
    assert lat.det() == 12


def test_class_parse_errors():
    lat = a1_quartic_lattice()
    with pytest.raises(LatticeError):
        lat.parse("h + 1")
    with pytest.raises((LatticeError, ValueError)):
        lat.parse("q")


def test_bundle_table_dets():
    table = weak_fano_bundle_table()
    dets = {(c.ident, c.c2): det(restriction_gram(c.c1, c.c2)) for c in table}
    assert [k for k, d in dets.items() if d == -8] == [(1, 0)]
    assert [k for k, d in dets.items() if d == 0] == [(8, -2)]
    assert len({c.ident for c in table}) == 11


def test_anticanonical_class():
    c = pe_anticanonical(-1)
    assert c.coords == (Fraction(4), Fraction(2))
    assert c.lattice.names == ("L", "xi")


def test_koszul_chern_classes():
    assert chern_from_ideal_sequence(0) == (0, 1)
    assert chern_from_ideal_sequence(-1) == (-1, 1)
    with pytest.raises(ValueError):
        chern_from_ideal_sequence(3)


def test_cone_decompose():
    lat = a1_quartic_lattice()
    gens = [lat.parse("e"), lat.parse("h - 2*e")]
    coeffs = cone_decompose(gens, lat.parse("h"))
    assert list(coeffs) == [2, 1]
    assert cone_decompose(gens, lat.parse("-h")) is None


def test_diamond_points():
    r = Region.parse(["b0", "b1"], ["-5*b0 + b1 + 6 >= 0", "5*b0 - b1 + 6 >= 0",
                                    "b0 - 5*b1 + 6 >= 0", "-b0 + 5*b1 + 6 >= 0"])
    pts = integer_points(r)
    assert len(pts) == 9 and (0, 0) in pts
    assert pts == integer_points_bruteforce(r, 3)


def test_infeasible_equality_system():
    r = Region.parse(["b0", "b1"], ["5*b0 - b1 = 7", "-7 <= b0 - 5*b1", "b0 - 5*b1 <= 7"])
    assert integer_points(r) == []
    assert integer_points_bruteforce(r, 10) == []


def test_rational_bounds():
    r = Region.parse(["a"], ["2*a <= 5", "a >= -1/2"])
    assert variable_bounds(r) == [(Fraction(-1, 2), Fraction(5, 2))]
    assert integer_points(r) == [(0,), (1,), (2,)]


def test_unbounded_region_rejected():
    r = Region.parse(["a", "b"], ["a >= 0"])
    with pytest.raises(LatticeError):
        integer_points(r)


@pytest.mark.parametrize("curve, twist, want", [
    ("ebar1 + 2*e1", 2, (8, 4, (6, 6))),
    ("3*ebar1 + 2*e1", 3, (18, 12, (12, 12))),
    ("2*e1 + 2*ebar1", 2, (10, 10, (5, 6))),
    ("4*e1 + 4*ebar1", 4, (40, 40, (20, 21))),
    ("3*ebar1 + 4*e1", 4, (36, 30, (21, 21))),
])
def test_riemann_roch_counts(curve, twist, want):
    lat = d5a_lattice()
    res = rr_on_k3_curve(lat, lat.parse(curve), lat.parse("e1 + ebar1"), twist)
    assert (res.deg_p, res.deg_k, res.h0) == want
