"""Hot loops over encoded monomials.

A Laurent polynomial in ``n`` variables is handled here as two parallel
int64 arrays: ``keys`` (balanced base-``2**bits`` encodings of exponent
vectors, see :class:`repstab.characters.Codec`) and ``coeffs``.  Encodings
are additive, so multiplying monomials is adding keys, and numeric order of
keys is lexicographic order of exponent vectors.

Every kernel exists twice: an ``@njit`` loop version and a vectorised numpy
version.  ``REPSTAB_BACKEND`` picks which one the public names point at;
both are importable for testing and benchmarking.
"""

from __future__ import annotations

import numpy as np

from ._backend import BACKEND, njit

__all__ = [
    "reduce_terms",
    "product_terms",
    "string_divide",
    "KERNELS",
]


# --------------------------------------------------------------------------
# reduce: sort descending, merge duplicate keys, drop zero coefficients

def reduce_terms_numpy(keys, coeffs):
    if keys.size == 0:
        return keys.copy(), coeffs.copy()
    order = np.argsort(-keys, kind="stable")
    k = keys[order]
    c = coeffs[order]
    starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
    sums = np.add.reduceat(c, starts)
    uk = k[starts]
    keep = sums != 0
    return uk[keep], sums[keep]


@njit(cache=True)
def _radix_order_numba(keys, descending):
    # stable LSD radix argsort; 8-bit digits for short inputs, 16-bit for
    # long ones.  Passes where every key shares the digit are skipped, the
    # common case for narrow key ranges.
    n = keys.size
    width = 8 if n < 65536 else 16
    buckets = 1 << width
    mask = np.uint64(buckets - 1)
    flip = np.uint64(0x8000000000000000)
    ucur = keys.view(np.uint64) ^ flip
    if descending:
        ucur = ~ucur
    order = np.arange(n)
    tmp = np.empty(n, np.int64)
    utmp = np.empty(n, np.uint64)
    counts = np.empty(buckets + 1, np.int64)
    for p in range(64 // width):
        shift = np.uint64(width * p)
        counts[:] = 0
        for i in range(n):
            counts[((ucur[i] >> shift) & mask) + 1] += 1
        if counts.max() == n:
            continue
        for d in range(1, buckets + 1):
            counts[d] += counts[d - 1]
        for i in range(n):
            d = (ucur[i] >> shift) & mask
            j = counts[d]
            counts[d] = j + 1
            tmp[j] = order[i]
            utmp[j] = ucur[i]
        order, tmp = tmp, order
        ucur, utmp = utmp, ucur
    return order


@njit(cache=True)
def reduce_terms_numba(keys, coeffs):
    n = keys.size
    order = _radix_order_numba(keys, True)
    out_k = np.empty(n, np.int64)
    out_c = np.empty(n, np.int64)
    m = 0
    i = 0
    while i < n:
        k = keys[order[i]]
        s = 0
        while i < n and keys[order[i]] == k:
            s += coeffs[order[i]]
            i += 1
        if s != 0:
            out_k[m] = k
            out_c[m] = s
            m += 1
    return out_k[:m].copy(), out_c[:m].copy()


# --------------------------------------------------------------------------
# product: all pairwise monomial products, then reduce

def product_terms_numpy(ka, ca, kb, cb):
    keys = np.add.outer(ka, kb).ravel()
    coeffs = np.multiply.outer(ca, cb).ravel()
    return reduce_terms_numpy(keys, coeffs)


@njit(cache=True)
def product_terms_numba(ka, ca, kb, cb):
    na = ka.size
    nb = kb.size
    keys = np.empty(na * nb, np.int64)
    coeffs = np.empty(na * nb, np.int64)
    t = 0
    for i in range(na):
        for j in range(nb):
            keys[t] = ka[i] + kb[j]
            coeffs[t] = ca[i] * cb[j]
            t += 1
    return reduce_terms_numba(keys, coeffs)


# --------------------------------------------------------------------------
# string division: exact quotient by (1 - e^{-alpha})
#
# Monomials are grouped into alpha-strings: ``gid`` identifies the string,
# ``pos`` is the position along it.  Input must have unique (gid, pos)
# pairs.  The quotient at position p is the sum of input coefficients at
# positions >= p on the same string; division is exact iff every string
# sums to zero.  Returns (gid, pos, coeff, exact).

def string_divide_numpy(gid, pos, coeffs):
    empty = np.empty(0, np.int64)
    if gid.size == 0:
        return empty, empty, empty, True
    order = np.lexsort((-pos, gid))
    g = gid[order]
    p = pos[order]
    c = coeffs[order]
    new_group = np.concatenate(([True], g[1:] != g[:-1]))
    last = np.concatenate((new_group[1:], [True]))
    starts = np.flatnonzero(new_group)
    cs = np.cumsum(c)
    before = np.concatenate(([0], cs[starts[1:] - 1]))
    s = cs - before[np.cumsum(new_group) - 1]
    if np.any(s[last] != 0):
        return empty, empty, empty, False
    span = np.zeros(p.size, np.int64)
    inner = ~last
    span[:-1][inner[:-1]] = p[:-1][inner[:-1]] - p[1:][inner[:-1]]
    span[s == 0] = 0
    total = int(span.sum())
    src = np.repeat(np.arange(p.size), span)
    first = np.cumsum(span) - span
    step = np.arange(total, dtype=np.int64) - first[src]
    return g[src], p[src] - step, s[src], True


@njit(cache=True)
def string_divide_numba(gid, pos, coeffs):
    n = gid.size
    by_pos = _radix_order_numba(pos, True)
    order = by_pos[_radix_order_numba(gid[by_pos], False)]
    total = 0
    i = 0
    # first pass: exactness and output size
    while i < n:
        j = i
        s = 0
        while j < n and gid[order[j]] == gid[order[i]]:
            s += coeffs[order[j]]
            if j + 1 < n and gid[order[j + 1]] == gid[order[i]] and s != 0:
                total += pos[order[j]] - pos[order[j + 1]]
            j += 1
        if s != 0:
            empty = np.empty(0, np.int64)
            return empty, empty, empty, False
        i = j
    out_g = np.empty(total, np.int64)
    out_p = np.empty(total, np.int64)
    out_c = np.empty(total, np.int64)
    t = 0
    i = 0
    while i < n:
        j = i
        s = 0
        while j < n and gid[order[j]] == gid[order[i]]:
            s += coeffs[order[j]]
            if j + 1 < n and gid[order[j + 1]] == gid[order[i]] and s != 0:
                top = pos[order[j]]
                bottom = pos[order[j + 1]]
                for q in range(top, bottom, -1):
                    out_g[t] = gid[order[j]]
                    out_p[t] = q
                    out_c[t] = s
                    t += 1
            j += 1
        i = j
    return out_g, out_p, out_c, True


KERNELS = {
    "numpy": {
        "reduce_terms": reduce_terms_numpy,
        "product_terms": product_terms_numpy,
        "string_divide": string_divide_numpy,
    },
    "numba": {
        "reduce_terms": reduce_terms_numba,
        "product_terms": product_terms_numba,
        "string_divide": string_divide_numba,
    },
}

reduce_terms = KERNELS[BACKEND]["reduce_terms"]
product_terms = KERNELS[BACKEND]["product_terms"]
string_divide = KERNELS[BACKEND]["string_divide"]
