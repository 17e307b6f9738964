"""Grading, substitution with the atom scaling rule, and atom instantiation."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .arith import divexact, poly_lcm
from .poly import AtomError, Poly
from .ratfunc import RatFunc
from .ring import GradedRing, RingError


def multidegree(p, ring=None):
    """Common multidegree of all terms, or ``None`` if ``p`` is inhomogeneous.

    Accepts a :class:`Poly` or a :class:`RatFunc` (numerator minus
    denominator degree).  The zero polynomial has no degree.
    """
    if isinstance(p, RatFunc):
        if p.is_zero():
            raise ValueError("the zero function has no multidegree")
        dn = multidegree(p.num, ring)
        dd = multidegree(p.den, ring)
        if dn is None or dd is None:
            return None
        return tuple(a - b for a, b in zip(dn, dd))
    ring = ring or p.ring
    if not p.terms:
        raise ValueError("the zero polynomial has no multidegree")
    degs = [ring.symbol_degree(i) for i in range(ring.nsym)]
    r = ring.rank
    found = None
    for e in p.terms:
        d = [0] * r
        for i, x in enumerate(e):
            if x:
                for k, w in enumerate(degs[i]):
                    d[k] += w * x
        d = tuple(d)
        if found is None:
            found = d
        elif d != found:
            return None
    return found


def _as_ratfunc(value, ring):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc.from_poly(value)
    return RatFunc.const(ring, Fraction(value))


def atom_pullback(atom, target_ring, bindings, source_ring):
    """Pull back ``atom`` of ``target_ring`` to ``s^order * atom'`` in ``source_ring``.

    Every argument (unit arguments count as 1) must map to ``s`` times the
    matching argument of the same-named atom of ``source_ring``, for one
    common rational function ``s``.
    """
    try:
        src_atom = source_ring.atom(atom.name)
    except RingError:
        raise AtomError(f"atom {atom.name} has no counterpart in the source ring") from None
    if len(src_atom.args) != len(atom.args):
        raise AtomError(f"atom {atom.name} has different arity in source and target")
    one = RatFunc.const(source_ring, 1)
    scale = None
    for t_arg, s_arg in zip(atom.args, src_atom.args):
        t_val = one if t_arg in target_ring.units else _as_ratfunc(bindings[t_arg], source_ring)
        s_val = one if s_arg in source_ring.units else RatFunc.symbol(source_ring, s_arg)
        ratio = t_val / s_val
        if scale is None:
            scale = ratio
        elif ratio != scale:
            raise AtomError(
                f"atom {atom.name}: arguments are not scaled by a common factor"
            )
    src = RatFunc.symbol(source_ring, atom.name)
    if scale == 1:
        return src
    order = atom.order if atom.order is not None else src_atom.order
    if order is None:
        raise AtomError(f"atom {atom.name} has no polynomial order; cannot rescale it")
    return scale ** order * src


def substitute(p, bindings, source_ring=None):
    """Pull back ``p`` along ``var -> bindings[var]`` to a rational function.

    ``bindings`` maps variables of ``p.ring`` to polynomials or rational
    functions of ``source_ring``.  Unbound variables must exist in the source
    ring and are kept.  Atoms follow the scaling rule of :func:`atom_pullback`.
    """
    if isinstance(p, RatFunc):
        num = substitute(p.num, bindings, source_ring)
        den = substitute(p.den, bindings, source_ring)
        return num / den
    ring = p.ring
    if source_ring is None:
        source_ring = _infer_ring(bindings, ring)
    full = {}
    for v in ring.variables:
        if v in bindings:
            full[v] = _as_ratfunc(bindings[v], source_ring)
        elif source_ring.has_symbol(v) and v in source_ring.variables:
            full[v] = RatFunc.symbol(source_ring, v)
        else:
            raise RingError(f"no binding for variable {v!r}")
    used_atoms = p.atoms_used()
    for a in ring.atoms:
        if a.name in used_atoms:
            full[a.name] = atom_pullback(a, ring, full, source_ring)
    return _substitute_common(p, full, source_ring)


def _infer_ring(bindings, fallback):
    for b in bindings.values():
        if isinstance(b, (Poly, RatFunc)):
            return b.ring
    return fallback


def _substitute_common(p, values, ring):
    syms = p.ring.symbols
    used = [i for i in range(p.ring.nsym) if any(e[i] for e in p.terms)]
    dens = [values[syms[i]].den for i in used if not values[syms[i]].den.is_constant()]
    common = Poly.one(ring)
    for d in dens:
        if not d == common:
            common = poly_lcm(common, d)
    nums = {}
    for i in used:
        v = values[syms[i]]
        nums[i] = v.num if v.den == common else v.num * divexact(common, v.den)
    degs = [sum(e[i] for i in used) for e in p.terms]
    top = max(degs) if degs else 0
    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = nums[i] ** k if i >= 0 else common ** k
        return cache[key]

    total = Poly.zero(ring)
    for (e, c), d in zip(p.terms.items(), degs):
        term = Poly.const(ring, c)
        for i in used:
            if e[i]:
                term = term * power(i, e[i])
        if top - d and not common.is_constant():
            term = term * power(-1, top - d)
        total = total + term
    if common.is_constant():
        return RatFunc.from_poly(total)
    return RatFunc.make(total, common ** top)


# atom instantiation --------------------------------------------------------

def monomials(nvars, degree):
    """Exponent tuples of all monomials of the given degree, in lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def random_coefficient(rng, bound=9):
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def random_form(nargs, degree, rng, density=1.0):
    """Random homogeneous form as ``{exponent over args: int}``.

    Coefficients are drawn from ``{-9..9} minus {0}``; with ``density < 1``
    some monomials are dropped, but the form is never zero.
    """
    mons = monomials(nargs, degree)
    form = {}
    for m in mons:
        if density >= 1.0 or rng.random() < density:
            form[m] = random_coefficient(rng)
    if not form and mons:
        form[mons[0]] = random_coefficient(rng)
    return form


def seeded_forms(specs, seed):
    """Random forms for ``{name: (nargs, degree)}``, reproducible from ``seed``."""
    rng = random.Random(seed)
    return {name: random_form(n, d, rng) for name, (n, d) in sorted(specs.items())}


def instantiate(p, forms):
    """Replace atoms by concrete forms in their arguments.

    ``forms`` maps atom names to ``{exponent over the atom's args: coeff}``.
    The result lives in the same ring minus the instantiated atoms.
    """
    if isinstance(p, RatFunc):
        return instantiate(p.num, forms) / instantiate(p.den, forms)
    ring = p.ring
    new_ring = instantiated_ring(ring, forms)
    bindings = {}
    for a in ring.atoms:
        if a.name not in forms:
            continue
        args = [Poly.one(new_ring) if x in ring.units else Poly.symbol(new_ring, x) for x in a.args]
        value = Poly.zero(new_ring)
        for e, c in forms[a.name].items():
            if len(e) != len(args):
                raise AtomError(f"form for {a.name} has the wrong number of arguments")
            term = Poly.const(new_ring, c)
            for g, k in zip(args, e):
                if k:
                    term = term * g ** k
            value = value + term
        bindings[a.name] = value
    values = {s: bindings[s] if s in bindings else Poly.symbol(new_ring, s) for s in ring.symbols}
    out = p.evaluate(values, one=Poly.one(new_ring))
    return out if isinstance(out, Poly) else Poly.const(new_ring, out)


def instantiated_ring(ring, forms):
    return GradedRing(
        ring.variables,
        ring.weights,
        tuple(a for a in ring.atoms if a.name not in forms),
        ring.units,
        ring.name,
    )
