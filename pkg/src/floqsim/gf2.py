"""Dense GF(2) linear algebra on bit-packed matrices.

A BitMatrix stores each row as machine words (uint64), 64 columns per word;
XOR, AND and popcount act word-parallel.  Everything downstream (Pauli
operators, stabilizer groups, logical analysis) reduces to rref/kernel/solve
calls on these matrices.

The elimination kernels come from _kernels_numba or _kernels_numpy depending
on the selected backend; see floqsim.backend.
"""

from __future__ import annotations

import numpy as np

from .backend import BACKEND

if BACKEND == "numba":
    from . import _kernels_numba as _k
else:
    from . import _kernels_numpy as _k


def words_for(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


def zeros(nrows: int, ncols: int) -> np.ndarray:
    return np.zeros((nrows, words_for(ncols)), dtype=np.uint64)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a (rows, ncols) 0/1 array into (rows, words) uint64."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    if bits.ndim == 1:
        bits = bits[np.newaxis, :]
    nrows, ncols = bits.shape
    pad = (-ncols) % 64
    if pad:
        bits = np.concatenate(
            [bits, np.zeros((nrows, pad), dtype=np.uint8)], axis=1
        )
    # little-endian within each 64-bit word: column c -> bit c & 63
    chunks = bits.reshape(nrows, -1, 8)
    as_bytes = np.packbits(chunks, axis=-1, bitorder="little")
    return as_bytes.reshape(nrows, -1).view(np.uint64).copy()


def unpack_rows(mat: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of pack_rows; returns a (rows, ncols) uint8 array."""
    raw = mat.view(np.uint8).reshape(mat.shape[0], -1)
    bits = np.unpackbits(raw, axis=1, bitorder="little")
    return bits[:, :ncols]


def get_bit(row: np.ndarray, col: int) -> int:
    return int((row[col >> 6] >> np.uint64(col & 63)) & np.uint64(1))


def set_bit(row: np.ndarray, col: int, value: int = 1) -> None:
    bit = np.uint64(1 << (col & 63))
    if value:
        row[col >> 6] |= bit
    else:
        row[col >> 6] &= ~bit


def rref(mat: np.ndarray, ncols: int) -> tuple[np.ndarray, int, np.ndarray]:
    """Reduced row echelon form.

    Returns (reduced matrix with zero rows dropped, rank, pivot columns).
    The result is the canonical basis of the row space: unique per space.
    """
    work = np.ascontiguousarray(mat, dtype=np.uint64).copy()
    if work.ndim == 1:
        work = work[np.newaxis, :]
    pivots = np.zeros(min(work.shape[0], ncols) + 1, dtype=np.int64)
    rank = int(_k.rref_inplace(work, ncols, pivots))
    return work[:rank], rank, pivots[:rank]


def rank(mat: np.ndarray, ncols: int) -> int:
    return rref(mat, ncols)[1]


def reduce_row(basis: np.ndarray, pivots: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Canonical remainder of v modulo an RREF basis (v is not modified)."""
    out = v.copy()
    _k.reduce_row_inplace(basis, pivots, len(pivots), out)
    return out


def reduce_row_with_witness(
    basis: np.ndarray, pivots: np.ndarray, v: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Remainder of v modulo basis plus the combination of rows used."""
    out = v.copy()
    used = np.zeros(basis.shape[0], dtype=np.uint8)
    _k.reduce_row_witness(basis, pivots, len(pivots), out, used)
    return out, used


def in_span(basis: np.ndarray, pivots: np.ndarray, v: np.ndarray) -> bool:
    return not reduce_row(basis, pivots, v).any()


def kernel(mat: np.ndarray, ncols: int) -> np.ndarray:
    """Basis of the null space {x : M x = 0}, packed, one vector per row.

    Dimension is ncols - rank(M).  Rows come out in RREF form over the free
    columns, so the basis is canonical as well.
    """
    red, rk, pivots = rref(mat, ncols)
    pivot_set = set(int(p) for p in pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = zeros(len(free_cols), ncols)
    for i, free in enumerate(free_cols):
        set_bit(basis[i], free)
        w = free >> 6
        bit = np.uint64(1 << (free & 63))
        for r in range(rk):
            if red[r, w] & bit:
                set_bit(basis[i], int(pivots[r]))
    return basis


def solve(mat: np.ndarray, ncols: int, b: np.ndarray) -> np.ndarray | None:
    """One solution x of M x = b (length-ncols packed vector), or None.

    b is a packed vector with mat.shape[0] meaningful bits.
    """
    nrows = mat.shape[0]
    aug = zeros(nrows, ncols + 1)
    aug[:, : mat.shape[1]] = mat
    for r in range(nrows):
        if get_bit(b, r):
            set_bit(aug[r], ncols)
    red, rk, pivots = rref(aug, ncols + 1)
    x = zeros(1, ncols)[0]
    for r in range(rk):
        col = int(pivots[r])
        if col == ncols:
            return None  # a row reduced to 0 = 1
        if get_bit(red[r], ncols):
            set_bit(x, col)
    return x


def symplectic_parity_rows(
    mx: np.ndarray, mz: np.ndarray, vx: np.ndarray, vz: np.ndarray
) -> np.ndarray:
    """Symplectic product of each row (mx|mz) with the vector (vx|vz)."""
    out = np.zeros(mx.shape[0], dtype=np.uint8)
    a = np.zeros(mx.shape[0], dtype=np.uint8)
    _k.and_parity_rows(mx, vz, out)
    _k.and_parity_rows(mz, vx, a)
    return out ^ a


def symplectic_parity_pairs(
    ax: np.ndarray, az: np.ndarray, bx: np.ndarray, bz: np.ndarray
) -> np.ndarray:
    """All-pairs symplectic products: out[i, j] = <a_i, b_j>."""
    out = np.zeros((ax.shape[0], bx.shape[0]), dtype=np.uint8)
    _k.and_parity_pairs(
        np.ascontiguousarray(ax),
        np.ascontiguousarray(az),
        np.ascontiguousarray(bx),
        np.ascontiguousarray(bz),
    out)
    return out


def xor_into_masked(mat: np.ndarray, mask: np.ndarray, src: np.ndarray) -> None:
    _k.xor_row_into_masked(mat, mask.astype(np.uint8), src)


def popcounts(mat: np.ndarray) -> np.ndarray:
    out = np.zeros(mat.shape[0], dtype=np.uint64)
    _k.popcount_rows(np.ascontiguousarray(mat), out)
    return out.astype(np.int64)


def intersect_rowspaces(
    a: np.ndarray, b: np.ndarray, ncols: int
) -> np.ndarray:
    """Canonical basis of rowspace(a) ∩ rowspace(b) via the stacked kernel."""
    ra = a.shape[0]
    stacked = np.concatenate([a, b], axis=0)
    # coefficient vectors (u | v) with u·a = v·b, i.e. kernel of [a; b]^T
    coeffs = kernel(transpose(stacked, ncols), ra + b.shape[0])
    if coeffs.shape[0] == 0:
        return zeros(0, ncols)
    out = zeros(coeffs.shape[0], ncols)
    for i in range(coeffs.shape[0]):
        for r in range(ra):
            if get_bit(coeffs[i], r):
                out[i] ^= a[r]
    red, _, _ = rref(out, ncols)
    return red


def transpose(mat: np.ndarray, ncols: int) -> np.ndarray:
    bits = unpack_rows(mat, ncols)
    return pack_rows(bits.T)
