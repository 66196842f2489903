"""Pure-numpy fallbacks for the bit-packed GF(2) kernels.

Same contracts as _kernels_numba; selected when FLOQSIM_BACKEND=numpy or
when numba is unavailable.  Row updates are vectorized over words, so the
fallback stays usable (if slower) at the largest lattice sizes.
"""

import numpy as np


def rref_inplace(m, ncols, pivots_out):
    rows = m.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == rows:
            break
        w = col >> 6
        bit = np.uint64(1 << (col & 63))
        hits = np.nonzero(m[rank:, w] & bit)[0]
        if hits.size == 0:
            continue
        pivot = rank + int(hits[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        sel = (m[:, w] & bit).astype(bool)
        sel[rank] = False
        m[sel] ^= m[rank]
        pivots_out[rank] = col
        rank += 1
    return rank


def reduce_row_inplace(basis, pivots, rank, v):
    for i in range(rank):
        col = int(pivots[i])
        bit = np.uint64(1 << (col & 63))
        if v[col >> 6] & bit:
            v ^= basis[i]


def reduce_row_witness(basis, pivots, rank, v, used):
    for i in range(rank):
        col = int(pivots[i])
        bit = np.uint64(1 << (col & 63))
        if v[col >> 6] & bit:
            used[i] = 1
            v ^= basis[i]


def and_parity_rows(m, v, out):
    counts = np.bitwise_count(m & v[np.newaxis, :]).sum(axis=1)
    out[:] = (counts & 1).astype(np.uint8)


def and_parity_pairs(ax, az, bx, bz, out):
    for i in range(ax.shape[0]):
        acc = (ax[i] & bz) ^ (az[i] & bx)
        out[i, :] = (np.bitwise_count(acc).sum(axis=1) & 1).astype(np.uint8)


def xor_row_into_masked(m, mask, src):
    m[mask.astype(bool)] ^= src


def popcount_rows(m, out):
    out[:] = np.bitwise_count(m).sum(axis=1)
