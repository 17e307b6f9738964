"""Sparse multivariate polynomials over Q with opaque atoms."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .kernel import mul_terms
from .ring import GradedRing, RingError


class AtomError(ValueError):
    """Raised when an operation cannot treat an atom as an opaque symbol."""


def _grlex_key(e):
    return (sum(e), e)


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


class Poly:
    """Polynomial in the variables and atoms of a :class:`GradedRing`.

    Terms are stored as ``{exponent tuple: Fraction}`` with exponents ordered
    as ``ring.symbols`` (variables first, then atoms).  Instances are treated
    as immutable.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms=None):
        self.ring = ring
        self.terms = {} if terms is None else terms
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, ring, terms):
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.nsym:
                raise RingError(f"exponent {e} does not match ring with {ring.nsym} symbols")
            if any(x < 0 for x in e):
                raise RingError(f"negative exponent in {e}")
            c = _coerce_coeff(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        return cls(ring, {e: c for e, c in clean.items() if c})

    @classmethod
    def const(cls, ring, c):
        c = _coerce_coeff(c)
        return cls(ring, {(0,) * ring.nsym: c} if c else {})

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def one(cls, ring):
        return cls.const(ring, 1)

    @classmethod
    def symbol(cls, ring, name):
        e = [0] * ring.nsym
        e[ring.index(name)] = 1
        return cls(ring, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, ring, exps, coeff=1):
        return cls.from_dict(ring, {tuple(exps): coeff})

    @classmethod
    def parse(cls, ring, text):
        from .parse import poly_parse

        return poly_parse(text, ring)

    def gens(self):
        return [Poly.symbol(self.ring, s) for s in self.ring.symbols]

    # basic queries ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.ring.nsym, Fraction(0))

    def is_monomial(self):
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in decreasing grlex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_exponent(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_exponent()] if self.terms else Fraction(0)

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return Poly(self.ring, {e: c / lc for e, c in self.terms.items()})

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def lowest_degree_in(self, name):
        i = self.ring.index(name)
        return min(e[i] for e in self.terms)

    def symbols_used(self):
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.symbols[i])
        return used

    def atoms_used(self):
        return {s for s in self.symbols_used() if s not in self.ring.variables}

    def variables_used(self):
        return {s for s in self.symbols_used() if s in self.ring.variables}

    def coeffs_in(self, name):
        """Split as ``sum_k c_k * name^k``; returns ``{k: c_k}``."""
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Poly(self.ring, t) for k, t in out.items()}

    def homogeneous_parts(self):
        """Split by total degree in the ring variables (atoms count zero)."""
        n = self.ring.n
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e[:n]), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in out.items()}

    def content_monomial(self):
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * self.ring.nsym
        it = iter(self.terms)
        low = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < low[i]:
                    low[i] = x
        return tuple(low)

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c):
        c = _coerce_coeff(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        c = _coerce_coeff(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
        )

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.ring)
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return self.mul_monomial(e, c)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return other.mul_monomial(e, c)
        return Poly(self.ring, mul_terms(self.terms, other.terms, self.ring.nsym))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        from .ratfunc import RatFunc

        return RatFunc.make(self, other if isinstance(other, Poly) else Poly.const(self.ring, other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # calculus and evaluation -------------------------------------------
    def derivative(self, name):
        """Partial derivative in a ring variable.

        Atoms whose arguments include ``name`` have no symbolic derivative, so
        this raises :class:`AtomError` if any such atom occurs.
        """
        i = self.ring.index(name)
        for a in self.ring.atoms:
            if name in a.args and a.name in self.atoms_used():
                raise AtomError(
                    f"cannot differentiate atom {a.name} in {name}; instantiate it first"
                )
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly(self.ring, out)

    def evaluate(self, values, one=None):
        """Evaluate with ``values`` mapping every used symbol to a ring element.

        ``values`` may hold any objects supporting ``+``, ``*`` and integer
        powers (rationals, dual numbers, Polys of another ring...).  ``one`` is
        the multiplicative identity used for the result's zero.
        """
        syms = self.ring.symbols
        total = None
        cache = {}
        for e, c in self.terms.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    p = cache.get(key)
                    if p is None:
                        try:
                            v = values[syms[i]]
                        except KeyError:
                            raise KeyError(f"no value for symbol {syms[i]!r}") from None
                        p = v ** x
                        cache[key] = p
                    term = p * term
            total = term if total is None else total + term
        if total is None:
            return 0 if one is None else one * 0
        return total

    def substitute_poly(self, bindings, target_ring=None):
        """Replace symbols by polynomials of ``target_ring`` (default: same ring).

        Symbols missing from ``bindings`` are kept, which requires them to
        exist in the target ring.
        """
        ring = target_ring or self.ring
        values = {}
        for s in self.ring.symbols:
            if s in bindings:
                b = bindings[s]
                values[s] = b if isinstance(b, Poly) else Poly.const(ring, b)
            else:
                values[s] = Poly.symbol(ring, s)
        result = self.evaluate(values, one=Poly.one(ring))
        if not isinstance(result, Poly):
            result = Poly.const(ring, result)
        return result

    def embed(self, ring):
        """Same polynomial viewed in a ring that contains all used symbols."""
        if ring == self.ring:
            return self
        idx = []
        for s in self.ring.symbols:
            idx.append(ring.index(s) if ring.has_symbol(s) else None)
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nsym
            for i, x in enumerate(e):
                if x:
                    if idx[i] is None:
                        raise RingError(f"symbol {self.ring.symbols[i]!r} missing from target ring")
                    f[idx[i]] = x
            out[tuple(f)] = c
        return Poly(ring, out)

    # printing ---------------------------------------------------------
    def to_str(self):
        return format_poly(self)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_coeff(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(e, symbols):
    parts = []
    for s, x in zip(symbols, e):
        if x == 1:
            parts.append(s)
        elif x > 1:
            parts.append(f"{s}^{x}")
    return "*".join(parts)


def format_poly(p):
    """Deterministic text form, terms in decreasing grlex order."""
    if not p.terms:
        return "0"
    syms = p.ring.symbols
    pieces = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(e, syms)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)
