"""Graded polynomial rings with opaque coefficient atoms."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingError(ValueError):
    """Raised for malformed rings or operations that mix incompatible rings."""


def _is_identifier(name):
    return bool(_IDENT.match(name))


@dataclass(frozen=True)
class Atom:
    """An opaque homogeneous form such as ``B(x0,x1,x2)``.

    ``degree`` is the multidegree in the ambient grading.  ``order`` is the
    polynomial degree in the arguments when all arguments share one weight
    column, and ``None`` otherwise.  In a chart ring some arguments may be
    unit variables that have been set to 1.
    """

    name: str
    args: tuple
    degree: tuple
    order: int | None

    def __str__(self):
        deg = ",".join(str(d) for d in self.degree)
        return f"{self.name}({','.join(self.args)}):{deg}"


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring ``Q[variables][atoms]`` graded by an integer matrix.

    ``weights`` has one row per grading direction and one column per
    variable.  Chart rings carry no grading (zero rows) and list the
    dehomogenized variables in ``units``.
    """

    variables: tuple
    weights: tuple
    atoms: tuple = ()
    units: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        seen = set()
        for v in self.variables:
            if not _is_identifier(v):
                raise RingError(f"invalid variable name {v!r}")
            if v in seen:
                raise RingError(f"duplicate variable {v!r}")
            seen.add(v)
        for row in self.weights:
            if len(row) != len(self.variables):
                raise RingError(
                    f"weight row {row} has {len(row)} entries, expected {len(self.variables)}"
                )
        for u in self.units:
            if u in seen:
                raise RingError(f"unit variable {u!r} is also a ring variable")
        for a in self.atoms:
            if not _is_identifier(a.name):
                raise RingError(f"invalid atom name {a.name!r}")
            if a.name in seen:
                raise RingError(f"duplicate symbol {a.name!r}")
            seen.add(a.name)
            for arg in a.args:
                if arg not in self.variables and arg not in self.units:
                    raise RingError(f"atom {a.name} has unknown argument {arg!r}")
            if self.weights and len(a.degree) != len(self.weights):
                raise RingError(f"atom {a.name} degree {a.degree} has wrong length")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @classmethod
    def make(cls, variables, weights, atoms=(), name=""):
        """Build a ring from plain lists; ``atoms`` holds ``(name, args, degree)``."""
        variables = tuple(variables)
        weights = tuple(tuple(int(w) for w in row) for row in weights)
        ring = cls(variables, weights, (), (), name)
        built = tuple(ring.make_atom(n, a, d) for n, a, d in atoms)
        return cls(variables, weights, built, (), name)

    def make_atom(self, name, args, degree):
        args = tuple(args)
        if isinstance(degree, int):
            degree = (degree,)
        degree = tuple(int(d) for d in degree)
        return Atom(name, args, degree, self._atom_order(args, degree))

    def _atom_order(self, args, degree):
        cols = {self.column(a) for a in args if a in self.variables}
        if len(cols) != 1:
            return None
        (col,) = cols
        ratios = set()
        for c, d in zip(col, degree):
            if c == 0:
                if d != 0:
                    return None
            else:
                ratios.add(Fraction(d, c))
        if len(ratios) != 1:
            return None
        (k,) = ratios
        if k.denominator != 1 or k < 0:
            return None
        return int(k)

    @property
    def n(self):
        return len(self.variables)

    @property
    def rank(self):
        return len(self.weights)

    @property
    def symbols(self):
        return self.variables + tuple(a.name for a in self.atoms)

    @property
    def nsym(self):
        return len(self.variables) + len(self.atoms)

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise RingError(f"unknown symbol {symbol!r}") from None

    def has_symbol(self, symbol):
        return symbol in self._index

    def atom(self, name):
        for a in self.atoms:
            if a.name == name:
                return a
        raise RingError(f"unknown atom {name!r}")

    def column(self, var):
        i = self.variables.index(var)
        return tuple(row[i] for row in self.weights)

    def symbol_degree(self, i):
        """Multidegree of the i-th symbol (variable or atom)."""
        if i < self.n:
            return tuple(row[i] for row in self.weights)
        return self.atoms[i - self.n].degree

    def anticanonical_degree(self):
        return tuple(sum(row) for row in self.weights)

    def chart_ring(self, units):
        """Ring of the affine chart where the variables in ``units`` equal 1."""
        units = tuple(units)
        for u in units:
            if u not in self.variables:
                raise RingError(f"unknown unit variable {u!r}")
        rest = tuple(v for v in self.variables if v not in units)
        atoms = tuple(Atom(a.name, a.args, (), a.order) for a in self.atoms)
        name = f"{self.name}[{','.join(units)}]" if self.name else ""
        return GradedRing(rest, (), atoms, self.units + units, name)

    def with_atoms(self, atoms):
        """Same variables and grading with a different atom list."""
        return GradedRing(self.variables, self.weights, tuple(atoms), self.units, self.name)

    def without_atoms(self):
        return GradedRing(self.variables, self.weights, (), self.units, self.name)

    def describe(self):
        rows = "; ".join(" ".join(str(w) for w in row) for row in self.weights)
        atoms = "; ".join(str(a) for a in self.atoms)
        return f"vars={','.join(self.variables)} weights={rows} atoms={atoms}"
