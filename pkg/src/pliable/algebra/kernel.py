"""Kernel selection and the packed-monomial multiplication built on it.

The compiled extension is used when it imports; setting the environment
variable ``PLIABLE_PURE_PYTHON=1`` forces the pure-Python twin.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py
if os.environ.get("PLIABLE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel_cy as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"


def backends():
    """Available kernel modules keyed by name (used by the benchmark)."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel_cy
    except ImportError:
        return out
    out["cython"] = _kernel_cy
    return out


def age_numerators(r, weights, impl=None):
    """``sum_i (j*w_i mod r)`` for each ``j = 1..r-1`` that moves some coordinate."""
    return (impl or _impl).age_numerators(r, weights)


def _integerize(terms):
    den = 1
    for c in terms.values():
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return den, [(e, c.numerator * (den // c.denominator)) for e, c in terms.items()]


def _layout(maxdeg):
    shifts = []
    pos = 0
    for m in maxdeg:
        shifts.append(pos)
        pos += m.bit_length()
    return shifts


def _pack(exps, shifts):
    keys = []
    for e in exps:
        k = 0
        for x, s in zip(e, shifts):
            if x:
                k |= x << s
        keys.append(k)
    return keys


def mul_terms(a, b, nsym, impl=None):
    """Product of two term dicts ``{exponent tuple: Fraction}``."""
    if not a or not b:
        return {}
    impl = impl or _impl
    da, ia = _integerize(a)
    db, ib = _integerize(b)
    maxdeg = [0] * nsym
    for terms in (ia, ib):
        local = [0] * nsym
        for e, _ in terms:
            for i, x in enumerate(e):
                if x > local[i]:
                    local[i] = x
        for i in range(nsym):
            maxdeg[i] += local[i]
    shifts = _layout(maxdeg)
    widths = [m.bit_length() for m in maxdeg]
    ka = _pack([e for e, _ in ia], shifts)
    kb = _pack([e for e, _ in ib], shifts)
    prod = impl.convolve(ka, [c for _, c in ia], kb, [c for _, c in ib])
    den = da * db
    exps = impl.unpack(list(prod), shifts, widths)
    if den == 1:
        return {e: Fraction(c) for e, c in zip(exps, prod.values())}
    return {e: Fraction(c, den) for e, c in zip(exps, prod.values())}
