"""Seeded concrete instances of symbolic scenario objects, and numeric evaluation helpers."""
from __future__ import annotations

import random
from fractions import Fraction

from ..algebra.ops import instantiate, instantiated_ring, seeded_forms
from ..birmap.maps import CYPair, RationalMapSpec
from ..toric import ToricAmbient
from .format import ScenarioError


def atom_specs(rings):
    """``{atom name: (number of arguments, order)}`` shared by all rings."""
    specs = {}
    for ring in rings:
        for a in ring.atoms:
            spec = (len(a.args), a.order)
            if a.order is None:
                raise ScenarioError(f"atom {a.name} cannot be instantiated: its degree breaks the atom rule")
            if specs.setdefault(a.name, spec) != spec:
                raise ScenarioError(f"atom {a.name} is declared with different shapes in different rings")
    return specs


def forms_for(rings, seed, sample=0):
    return seeded_forms(atom_specs(rings), seed * 7919 + sample)


def inst_space(space, forms):
    if isinstance(space, ToricAmbient):
        return ToricAmbient(instantiated_ring(space.ring, forms), space.chamber, space.name)
    return instantiated_ring(space, forms)


def inst_pair(pair, forms):
    return CYPair(
        inst_space(pair.ambient, forms),
        tuple(instantiate(c, forms) for c in pair.constraints),
        instantiate(pair.divisor, forms),
        pair.label,
    )


def inst_map(m, forms):
    return RationalMapSpec(
        inst_space(m.source, forms),
        inst_space(m.target, forms),
        tuple(instantiate(c, forms) for c in m.components),
        m.name,
        tuple(instantiate(e, forms) for e in m.exceptional),
    )


def random_point(variables, rng, bound=9):
    """Nonzero small rationals for each variable."""
    out = {}
    for v in variables:
        n = 0
        while n == 0:
            n = rng.randint(-bound, bound)
        out[v] = Fraction(n, rng.randint(1, 4))
    return out


def eval_poly(p, values):
    return Fraction(p.evaluate(values, one=Fraction(1)))


def eval_map(m, values):
    """Numeric image of a point under a (concrete) map; ``None`` where undefined."""
    out = []
    for c in m.components:
        den = eval_poly(c.den, values)
        if den == 0:
            return None
        out.append(eval_poly(c.num, values) / den)
    return dict(zip(m.target_ring.variables, out))


def integer_kernel(weights):
    """Integer basis of the rational kernel of the weight matrix."""
    from ..birmap.singular import nullspace
    import math

    rows = [[Fraction(x) for x in row] for row in weights]
    if not rows:
        return []
    basis = nullspace(rows)
    out = []
    for v in basis:
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in v])
    return out


def same_orbit(ring, a, b):
    """Whether two numeric points are related by the torus action (character test)."""
    names = ring.variables
    for v in names:
        if (a[v] == 0) != (b[v] == 0):
            return False
    support = [v for v in names if a[v] != 0]
    if not support:
        return True
    ratios = {v: a[v] / b[v] for v in support}
    sub = [[row[names.index(v)] for v in support] for row in ring.weights]
    for rel in integer_kernel(sub):
        prod = Fraction(1)
        for v, n in zip(support, rel):
            prod *= ratios[v] ** n
        if prod != 1:
            return False
    return True


def rng_for(seed, salt):
    return random.Random(f"{seed}:{salt}")
