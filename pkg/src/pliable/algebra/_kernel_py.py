"""Pure-Python sparse convolution used when the compiled kernel is absent."""
from __future__ import annotations


def convolve(ka, va, kb, vb):
    """Multiply two packed sparse polynomials.

    ``ka``/``kb`` are packed monomial keys (adding keys multiplies monomials)
    and ``va``/``vb`` the matching integer coefficients.  Returns a dict from
    packed key to nonzero integer coefficient.
    """
    out = {}
    get = out.get
    for k1, c1 in zip(ka, va):
        for k2, c2 in zip(kb, vb):
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def accumulate(keys, vals):
    """Sum coefficients with equal packed keys, dropping zeros."""
    out = {}
    get = out.get
    for k, c in zip(keys, vals):
        out[k] = get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def unpack(keys, shifts, widths):
    """Exponent tuples of packed keys."""
    masks = [(1 << w) - 1 for w in widths]
    return [tuple((k >> s) & m for s, m in zip(shifts, masks)) for k in keys]


def age_numerators(r, weights):
    out = []
    for j in range(1, r):
        total = 0
        moved = False
        for w in weights:
            x = (j * w) % r
            if x:
                moved = True
                total += x
        if moved:
            out.append(total)
    return out
