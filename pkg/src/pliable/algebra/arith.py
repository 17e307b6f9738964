"""Division, pseudo-division, gcd and factorization for :class:`Poly`.

Multivariate division, gcd and factorization are delegated to FLINT
(python-flint ``fmpq_mpoly``, degree-lexicographic order); atoms are passed
through as extra indeterminates.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import flint
from flint.utils.flint_exceptions import DomainError

from .poly import Poly
from .ring import RingError


@lru_cache(maxsize=256)
def _flint_ctx(nsym):
    return flint.fmpq_mpoly_ctx.get(tuple(f"g{i}" for i in range(max(nsym, 1))), "deglex")


def to_flint(p):
    ctx = _flint_ctx(p.ring.nsym)
    if p.ring.nsym == 0:
        return ctx.from_dict({(0,): flint.fmpq(c.numerator, c.denominator) for c in p.terms.values()})
    return ctx.from_dict({e: flint.fmpq(c.numerator, c.denominator) for e, c in p.terms.items()})


def from_flint(ring, q):
    out = {}
    n = ring.nsym
    for e, c in q.to_dict().items():
        out[tuple(int(x) for x in e[:n])] = Fraction(int(c.p), int(c.q))
    return Poly(ring, out)


def _monomial_gcd(e, p):
    low = list(e)
    for f in p.terms:
        for i, x in enumerate(f):
            if x < low[i]:
                low[i] = x
    return tuple(low)


def poly_gcd(p, q):
    """Monic greatest common divisor; ``gcd(p, 0)`` is ``p`` made monic."""
    if p.ring != q.ring:
        raise RingError("gcd of polynomials from different rings")
    if not p.terms:
        return q.monic()
    if not q.terms:
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Poly.one(p.ring)
    if len(p.terms) == 1:
        return Poly.monomial(p.ring, _monomial_gcd(next(iter(p.terms)), q))
    if len(q.terms) == 1:
        return Poly.monomial(p.ring, _monomial_gcd(next(iter(q.terms)), p))
    if p == q:
        return p.monic()
    g = to_flint(p).gcd(to_flint(q))
    return from_flint(p.ring, g).monic()


def poly_lcm(p, q):
    g = poly_gcd(p, q)
    return divexact(p * q, g).monic()


def divmod_poly(p, q):
    """Division with remainder by leading terms under grlex.

    The remainder has no term divisible by the leading monomial of ``q``;
    for exact division it is zero.
    """
    if p.ring != q.ring:
        raise RingError("division of polynomials from different rings")
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p, p
    quo, rem = divmod(to_flint(p), to_flint(q))
    return from_flint(p.ring, quo), from_flint(p.ring, rem)


def _exact(fp, fq):
    try:
        return fp / fq
    except DomainError:
        return None


def divexact(p, q):
    """Exact quotient ``p / q``; raises ``ValueError`` if ``q`` does not divide ``p``."""
    if p.ring != q.ring:
        raise RingError("division of polynomials from different rings")
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    if q.is_constant():
        return p.scale(1 / q.constant_value())
    out = _exact(to_flint(p), to_flint(q))
    if out is None:
        raise ValueError("division is not exact")
    return from_flint(p.ring, out)


def divides(q, p):
    if not q.terms:
        return not p.terms
    if not p.terms or q.is_constant():
        return True
    return _exact(to_flint(p), to_flint(q)) is not None


def multiplicity(p, f):
    """Largest m with ``f^m`` dividing ``p`` and the cofactor."""
    if f.is_constant():
        raise ValueError("multiplicity of a constant factor is undefined")
    if not p.terms:
        raise ValueError("multiplicity in the zero polynomial is undefined")
    fp, ff = to_flint(p), to_flint(f)
    m = 0
    while True:
        quo = _exact(fp, ff)
        if quo is None:
            return m, (from_flint(p.ring, fp) if m else p)
        fp = quo
        m += 1


def pseudo_remainder(p, g, var, power=None):
    """Pseudo-remainder of ``p`` by ``g`` in the variable ``var``.

    Returns ``(r, e)`` with ``lc^e * p = s * g + r`` and ``deg_var r < deg_var g``,
    where ``lc`` is the leading coefficient of ``g`` in ``var``.  If ``power``
    is given, ``e`` is raised to exactly that value (it must be large enough).
    """
    m = g.degree_in(var)
    if m < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    gc = g.coeffs_in(var)
    lc = gc[m]
    i = p.ring.index(var)
    r = p
    steps = 0
    while r.terms and r.degree_in(var) >= m:
        d = r.degree_in(var)
        lr = r.coeffs_in(var)[d]
        shift = [0] * p.ring.nsym
        shift[i] = d - m
        r = lc * r - (lr * g).mul_monomial(tuple(shift))
        steps += 1
    if power is not None:
        if power < steps:
            raise ValueError(f"pseudo-division needed {steps} steps, more than {power}")
        r = r * lc ** (power - steps)
        steps = power
    return r, steps


def factor_list(p):
    """Factor over Q: ``(constant, [(monic irreducible factor, multiplicity), ...])``."""
    if not p.terms:
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return p.constant_value(), []
    c, facs = to_flint(p).factor()
    out = []
    const = Fraction(int(c.p), int(c.q))
    for f, m in facs:
        fp = from_flint(p.ring, f)
        lc = fp.leading_coeff()
        const *= lc ** m
        out.append((fp.monic(), int(m)))
    out.sort(key=lambda t: (t[0].total_degree(), str(t[0])))
    return const, out


def proportional(p, q):
    """Nonzero constant ``c`` with ``p == c*q``, or ``None``."""
    if not p.terms or not q.terms:
        return None
    ep = p.leading_exponent()
    if ep != q.leading_exponent():
        return None
    c = p.terms[ep] / q.terms[ep]
    if len(p.terms) != len(q.terms):
        return None
    for e, v in p.terms.items():
        w = q.terms.get(e)
        if w is None or v != c * w:
            return None
    return c
