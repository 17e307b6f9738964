"""Rational functions in normalized (coprime, monic denominator) form."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .arith import divexact, poly_gcd
from .poly import Poly
from .ring import RingError


class RatFunc:
    """Quotient ``num/den`` of polynomials of one ring.

    Invariant: ``gcd(num, den) = 1`` and ``den`` has leading coefficient 1
    under grlex, so equal functions have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num, den=None):
        if den is None:
            return cls(num, Poly.one(num.ring))
        if num.ring != den.ring:
            raise RingError("numerator and denominator in different rings")
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.terms:
            return cls(num, Poly.one(num.ring))
        if den.is_constant():
            return cls(num.scale(1 / den.constant_value()), Poly.one(num.ring))
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = divexact(num, g)
            den = divexact(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return cls(num, den)

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.one(p.ring))

    @classmethod
    def const(cls, ring, c):
        return cls(Poly.const(ring, c), Poly.one(ring))

    @classmethod
    def symbol(cls, ring, name):
        return cls(Poly.symbol(ring, name), Poly.one(ring))

    @classmethod
    def parse(cls, ring, text):
        from .parse import ratfunc_parse

        return ratfunc_parse(text, ring)

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return not self.num.terms

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def as_poly(self):
        if not self.is_polynomial():
            raise ValueError("rational function is not a polynomial")
        return self.num.scale(1 / self.den.constant_value())

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise RingError("rational functions live in different rings")
            return other
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingError("rational functions live in different rings")
            return RatFunc(other, Poly.one(self.ring))
        if isinstance(other, (int, Fraction, Rational)):
            return RatFunc.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc.make(self.num + other.num, self.den)
        if self.den.is_constant():
            return RatFunc(self.num * other.den + other.num, other.den)
        if other.den.is_constant():
            return RatFunc(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)
        d1 = divexact(self.den, g)
        d2 = divexact(other.den, g)
        return RatFunc.make(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return RatFunc.const(self.ring, 0)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = self.num, other.den
        n2, d1 = other.num, self.den
        if not g1.is_constant():
            n1, d2 = divexact(n1, g1), divexact(d2, g1)
        if not g2.is_constant():
            n2, d1 = divexact(n2, g2), divexact(d1, g2)
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coeff()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of the zero rational function")
        lc = self.num.leading_coeff()
        return RatFunc(self.den.scale(1 / lc), self.num.scale(1 / lc))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("rational function powers need an integer exponent")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.ring == other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.is_constant() and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def cross_equal(self, other):
        """Equality by cross-multiplication (independent of normalization)."""
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, name):
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        return RatFunc.make(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, values):
        num = self.num.evaluate(values)
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return num / den

    def substitute_poly(self, bindings, target_ring=None):
        num = self.num.substitute_poly(bindings, target_ring)
        den = self.den.substitute_poly(bindings, target_ring)
        return RatFunc.make(num, den)

    def embed(self, ring):
        return RatFunc(self.num.embed(ring), self.den.embed(ring))

    def to_str(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __str__ = to_str

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"
