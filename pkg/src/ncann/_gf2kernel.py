"""Bitset kernel for exhaustive zero-divisor scans of polynomials over GF(2) rings.

For every f = c_0 + c_1 x + ... + c_X x^X with coefficients drawn from a list
of coefficient choices, the right annihilator K_f of f inside the polynomial
slice (x-degree <= X over n words) is measured by rank: each g-coordinate is
one bit of a uint64 row mask, so X+1 blocks of n words must fit in 64 bits.
It is compared with W_f = {g : c_i s_j = 0 for all i, j}.  K_f = W_f exactly
when dim K_f = dim W_f, since W_f is always contained in K_f.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MAGIC = 0x03F79D71B4CB0A89
_DEBRUIJN = np.uint64(_MAGIC)
_DB_TABLE = np.zeros(64, dtype=np.int64)
for _i in range(64):
    _DB_TABLE[(((1 << _i) * _MAGIC) & (2**64 - 1)) >> 58] = _i


@njit(cache=True)
def _lowbit(r, table, magic):
    low = r & (~r + np.uint64(1))
    return table[np.int64((low * magic) >> np.uint64(58))]


@njit(cache=True)
def _insert(basis, r, table, magic):
    """Reduce r against basis (pivot = lowest bit); store it if independent."""
    zero = np.uint64(0)
    while r != zero:
        b = _lowbit(r, table, magic)
        piv = basis[b]
        if piv == zero:
            basis[b] = r
            return 1
        r ^= piv
    return 0


@njit(cache=True)
def scan(T, masks, n_words, xdeg, one_pos, max_report, table, magic):
    """Scan every nonzero f; see module docstring.

    T[c, w]    -- mask over v of words with w in supp(choice_c * v)
    masks[c]   -- mask over words of choice c itself (to read scalar parts)
    Returns counters and the first violating / lemma-breaking f index tuples.
    """
    C = T.shape[0]
    nblk = xdeg + 1
    G = nblk * n_words
    zero = np.uint64(0)
    total = 1
    for _ in range(nblk):
        total *= C
    idx = np.zeros(nblk, np.int64)
    basis = np.zeros(64, np.uint64)
    basis_w = np.zeros(64, np.uint64)
    viol = np.zeros((max_report, nblk), np.int64)
    lem = np.zeros((max_report, nblk), np.int64)
    nviol = 0
    nlem = 0
    zero_div = 0
    kernel_dims = 0
    one_bit = np.uint64(1) << np.uint64(one_pos) if one_pos >= 0 else zero
    for t in range(1, total):
        rem = t
        for i in range(nblk):
            idx[i] = rem % C
            rem //= C
        for b in range(64):
            basis[b] = zero
        rk = 0
        for k in range(2 * xdeg + 1):
            for w in range(n_words):
                r = zero
                for j in range(nblk):
                    i = k - j
                    if 0 <= i and i <= xdeg:
                        r |= T[idx[i], w] << np.uint64(n_words * j)
                if r != zero:
                    rk += _insert(basis, r, table, magic)
        dim_k = G - rk
        if dim_k == 0:
            continue
        zero_div += 1
        kernel_dims += dim_k
        for b in range(64):
            basis_w[b] = zero
        rkw = 0
        for i in range(nblk):
            for w in range(n_words):
                r = T[idx[i], w]
                if r != zero:
                    rkw += _insert(basis_w, r, table, magic)
        dim_w = nblk * (n_words - rkw)
        if dim_w != dim_k:
            if nviol < max_report:
                for i in range(nblk):
                    viol[nviol, i] = idx[i]
            nviol += 1
        # scalar-part conclusion: f scalar-free, and every g in K_f scalar-free
        bad = False
        if one_pos >= 0:
            for i in range(nblk):
                if masks[idx[i]] & one_bit:
                    bad = True
            if not bad:
                for j in range(nblk):
                    e = np.uint64(1) << np.uint64(n_words * j + one_pos)
                    if _insert(basis, e, table, magic):
                        bad = True
                        break
        if bad:
            if nlem < max_report:
                for i in range(nblk):
                    lem[nlem, i] = idx[i]
            nlem += 1
    return total - 1, zero_div, kernel_dims, nviol, viol, nlem, lem


def run_scan(T, masks, n_words, xdeg, one_pos, max_report=10):
    if (xdeg + 1) * n_words > 64:
        raise ValueError("polynomial slice does not fit a 64-bit mask")
    return scan(np.ascontiguousarray(T, dtype=np.uint64), np.ascontiguousarray(masks, dtype=np.uint64),
                n_words, xdeg, one_pos, max_report, _DB_TABLE, _DEBRUIJN)
