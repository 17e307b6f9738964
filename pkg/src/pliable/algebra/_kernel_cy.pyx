# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled sparse convolution over packed monomial keys, and quotient age sums."""

from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cdef int64_t _LIMIT = (<int64_t>1) << 62


cdef bint _fits(list keys, list vals, int64_t *kmax, int64_t *cmax):
    cdef object k, c
    cdef int64_t a
    kmax[0] = 0
    cmax[0] = 0
    for k in keys:
        if k >= _LIMIT:
            return False
        if k > kmax[0]:
            kmax[0] = k
    for c in vals:
        if c >= _LIMIT or c <= -_LIMIT:
            return False
        a = c if c >= 0 else -c
        if a > cmax[0]:
            cmax[0] = a
    return True


def convolve(list ka, list va, list kb, list vb):
    """Multiply two packed sparse polynomials (see the pure-Python twin).

    Uses machine integers and a C++ hash map when keys and every partial
    sum provably fit in 63 bits, Python objects otherwise.
    """
    cdef Py_ssize_t i, j, na = len(ka), nb = len(kb)
    cdef int64_t kma, kmb, cma, cmb
    cdef unordered_map[int64_t, int64_t] acc
    cdef vector[int64_t] ak, av, bk, bv
    cdef int64_t k1, c1
    cdef dict out
    cdef object old, oc1, k
    if (_fits(ka, va, &kma, &cma) and _fits(kb, vb, &kmb, &cmb)
            and kma + kmb < _LIMIT
            and (cma == 0 or cmb == 0 or
                 (<double>cma) * cmb * (na if na < nb else nb) < 4.0e18)):
        ak.reserve(na)
        av.reserve(na)
        bk.reserve(nb)
        bv.reserve(nb)
        for i in range(na):
            ak.push_back(ka[i])
            av.push_back(va[i])
        for j in range(nb):
            bk.push_back(kb[j])
            bv.push_back(vb[j])
        acc.reserve(na * nb)
        for i in range(na):
            k1 = ak[i]
            c1 = av[i]
            for j in range(nb):
                acc[k1 + bk[j]] += c1 * bv[j]
        out = {}
        for item in acc:
            if item.second != 0:
                out[item.first] = item.second
        return out
    out = {}
    for i in range(na):
        oc1 = va[i]
        for j in range(nb):
            k = ka[i] + kb[j]
            old = out.get(k)
            if old is None:
                out[k] = oc1 * vb[j]
            else:
                out[k] = old + oc1 * vb[j]
    return {k: c for k, c in out.items() if c}


def accumulate(list keys, list vals):
    cdef Py_ssize_t i, n = len(keys)
    cdef dict out = {}
    cdef object old
    for i in range(n):
        old = out.get(keys[i])
        if old is None:
            out[keys[i]] = vals[i]
        else:
            out[keys[i]] = old + vals[i]
    return {k: c for k, c in out.items() if c}


def unpack(list keys, list shifts, list widths):
    """Exponent tuples of packed keys."""
    cdef Py_ssize_t n = len(shifts), i
    cdef list out = []
    cdef object key
    cdef int64_t k
    cdef int s, w
    cdef bint small = True
    for key in keys:
        if key >= _LIMIT:
            small = False
            break
    if not small:
        return [tuple((key >> s) & ((1 << w) - 1) if w else 0 for s, w in zip(shifts, widths))
                for key in keys]
    cdef vector[int] sv, wv
    for i in range(n):
        sv.push_back(shifts[i])
        wv.push_back(widths[i])
    for key in keys:
        k = key
        out.append(tuple([(k >> sv[i]) & ((<int64_t>1 << wv[i]) - 1) if wv[i] else 0 for i in range(n)]))
    return out


def age_numerators(long r, list weights):
    cdef long j, w, x, total, i
    cdef bint moved
    cdef long n = len(weights)
    cdef long[64] ws
    if n > 64:
        raise ValueError("at most 64 weights")
    for i in range(n):
        ws[i] = ((<long>weights[i]) % r + r) % r
    out = []
    for j in range(1, r):
        total = 0
        moved = False
        for i in range(n):
            x = (j * ws[i]) % r
            if x:
                moved = True
                total += x
        if moved:
            out.append(total)
    return out
