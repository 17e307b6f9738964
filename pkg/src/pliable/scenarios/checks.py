"""Check registry: each op computes a result, compares it with the declared expectation, and
runs the requested oracle when the expectation is derived rather than quoted."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from .format import ScenarioError, split_list, split_list_positions
from .instances import forms_for
from .model import parse_expr

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"

OPS = {}


def op(name, oracles=()):
    """Register ``fn(ctx) -> Outcome`` under ``name`` with the oracles it understands."""

    def deco(fn):
        OPS[name] = (fn, frozenset(oracles))
        return fn

    return deco


@dataclass
class Outcome:
    status: str
    witness: dict = field(default_factory=dict)

    @classmethod
    def of(cls, ok, witness=None):
        status = INDETERMINATE if ok is None else (PASS if ok else FAIL)
        return cls(status, witness or {})


def jsonable(x):
    """Witness values as JSON-ready data (rationals and polynomials become strings)."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (Poly, RatFunc)):
        return x.to_str()
    return str(x)


_REQUIRED = object()


class CheckContext:
    """Argument access for one ``[check ...]`` section, with located errors."""

    def __init__(self, model, sec, seed, oracle=None):
        self.model = model
        self.sec = sec
        self.seed = seed
        self.oracle = oracle

    # plain values
    def get(self, key, default=_REQUIRED):
        if default is _REQUIRED:
            return self.sec.require(key)
        return self.sec.get(key, default)

    def error(self, message, key=None, offset=0):
        return self.sec.error(message, key, offset)

    def int(self, key, default=_REQUIRED):
        value = self.get(key, default)
        if value is default and default is not _REQUIRED:
            return default
        try:
            return int(value)
        except ValueError:
            raise self.error(f"'{key}' must be an integer", key) from None

    def ints(self, key):
        try:
            return [int(x) for x in self.get(key).replace(",", " ").split()]
        except ValueError:
            raise self.error(f"'{key}' must be a list of integers", key) from None

    def rational(self, key, default=_REQUIRED):
        value = self.get(key, default)
        if value is default and default is not _REQUIRED:
            return default
        try:
            return Fraction(value.replace(" ", ""))
        except ValueError:
            raise self.error(f"'{key}' must be a rational number", key) from None

    def flag(self, key, default=_REQUIRED):
        value = self.get(key, default)
        if isinstance(value, bool):
            return value
        low = value.strip().lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise self.error(f"'{key}' must be true or false", key)

    def names(self, key, default=_REQUIRED):
        value = self.get(key, default)
        if value is None:
            return []
        return [x for x in value.replace(",", " ").replace(";", " ").split() if x]

    # model objects
    def pair(self, key):
        return self.model.get("pair", self.get(key), self.sec, key)

    def map(self, key):
        return self.model.get("map", self.get(key), self.sec, key)

    def maps(self, key):
        return [self.model.get("map", n, self.sec, key) for n in self.names(key)]

    def lattice(self, key):
        return self.model.get("lattice", self.get(key), self.sec, key)

    def region(self, key):
        return self.model.get("region", self.get(key), self.sec, key)

    def ring(self, key):
        return self.model.ring_of(self.get(key), self.sec, key)

    def space(self, key):
        return self.model.space(self.get(key), self.sec, key)

    def poly(self, key, ring, rational=False):
        return parse_expr(self.sec, key, self.get(key), ring, 0, rational)

    def polys(self, key, ring, rational=False):
        return [parse_expr(self.sec, key, t, ring, off, rational) for t, off in split_list_positions(self.get(key, ""))]

    def items(self, key):
        return split_list(self.get(key, ""))

    # randomness
    def samples(self, rings, default=1):
        """Seeded atom instantiations; ``samples=`` overrides the count."""
        n = self.int("samples", default)
        salt = sum(map(ord, self.sec.name))
        return [forms_for(rings, self.seed, salt * 101 + k) for k in range(n)]

    def rng(self, salt=""):
        return random.Random(f"{self.seed}:{self.sec.name}:{salt}")

    def mode(self, default="both"):
        value = self.get("mode", default)
        if value not in ("symbolic", "seeded", "both"):
            raise self.error("'mode' must be symbolic, seeded or both", "mode")
        return value


def expect_flag(ctx, default=True):
    return ctx.flag("expect", default)


def run_op(ctx, name):
    if name not in OPS:
        raise ctx.error(f"unknown op '{name}'", "op")
    fn, oracles = OPS[name]
    if ctx.oracle is not None and ctx.oracle not in oracles:
        known = ", ".join(sorted(oracles)) or "none"
        raise ctx.error(f"op '{name}' has no oracle '{ctx.oracle}' (known: {known})", "oracle")
    return fn(ctx)


def combine(parts):
    """Overall verdict from partial verdicts: any False fails, any None is indeterminate."""
    if any(p is False for p in parts):
        return False
    if any(p is None for p in parts):
        return None
    return True


def _register_all():
    from . import ops_geometry, ops_lattice, ops_links, ops_pell, properties  # noqa: F401


_register_all()

__all__ = [
    "CheckContext", "FAIL", "INDETERMINATE", "OPS", "Outcome", "PASS", "ScenarioError",
    "combine", "expect_flag", "jsonable", "op", "run_op",
]
