"""numba @njit kernels for bit-packed GF(2) elimination.

All matrices are C-contiguous uint64 arrays of shape (rows, words); bit c of
a row lives at word c >> 6, position c & 63.  These loops dominate runtime
for the large lattices, so they stay free of Python objects.
"""

import numba
import numpy as np

U1 = np.uint64(1)
U63 = np.uint64(63)


@numba.njit(cache=True, inline="always")
def _parity64(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return np.uint8(x & U1)


@numba.njit(cache=True)
def rref_inplace(m, ncols, pivots_out):
    """Reduced row echelon form in place; returns rank, fills pivots_out."""
    rows, words = m.shape
    rank = 0
    for col in range(ncols):
        if rank == rows:
            break
        w = col >> 6
        bit = U1 << np.uint64(col & 63)
        pivot = -1
        for r in range(rank, rows):
            if m[r, w] & bit:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for j in range(words):
                tmp = m[rank, j]
                m[rank, j] = m[pivot, j]
                m[pivot, j] = tmp
        for r in range(rows):
            if r != rank and (m[r, w] & bit):
                for j in range(w, words):
                    m[r, j] ^= m[rank, j]
        pivots_out[rank] = col
        rank += 1
    return rank


@numba.njit(cache=True)
def reduce_row_inplace(basis, pivots, rank, v):
    """Reduce v against an RREF basis; v becomes the canonical remainder."""
    for i in range(rank):
        col = pivots[i]
        w = col >> 6
        bit = U1 << np.uint64(col & 63)
        if v[w] & bit:
            for j in range(w, v.shape[0]):
                v[j] ^= basis[i, j]


@numba.njit(cache=True)
def reduce_row_witness(basis, pivots, rank, v, used):
    """Like reduce_row_inplace but records which basis rows were used."""
    for i in range(rank):
        col = pivots[i]
        w = col >> 6
        bit = U1 << np.uint64(col & 63)
        if v[w] & bit:
            used[i] = 1
            for j in range(w, v.shape[0]):
                v[j] ^= basis[i, j]


@numba.njit(cache=True)
def and_parity_rows(m, v, out):
    """Per-row parity of popcount(row & v); the symplectic workhorse."""
    rows, words = m.shape
    for r in range(rows):
        acc = np.uint64(0)
        for j in range(words):
            acc ^= m[r, j] & v[j]
        out[r] = _parity64(acc)


@numba.njit(cache=True)
def and_parity_pairs(ax, az, bx, bz, out):
    """Symplectic products of every row of (ax|az) with every row of (bx|bz)."""
    ra = ax.shape[0]
    rb = bx.shape[0]
    words = ax.shape[1]
    for i in range(ra):
        for j in range(rb):
            acc = np.uint64(0)
            for w in range(words):
                acc ^= (ax[i, w] & bz[j, w]) ^ (az[i, w] & bx[j, w])
            out[i, j] = _parity64(acc)


@numba.njit(cache=True)
def xor_row_into_masked(m, mask, src):
    """m[r] ^= src for every r with mask[r] set."""
    rows, words = m.shape
    for r in range(rows):
        if mask[r]:
            for j in range(words):
                m[r, j] ^= src[j]


@numba.njit(cache=True)
def popcount_rows(m, out):
    rows, words = m.shape
    for r in range(rows):
        total = np.uint64(0)
        for j in range(words):
            x = m[r, j]
            x = x - ((x >> U1) & np.uint64(0x5555555555555555))
            x = (x & np.uint64(0x3333333333333333)) + (
                (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
            )
            x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
            total += (x * np.uint64(0x0101010101010101)) >> np.uint64(56)
        out[r] = total
