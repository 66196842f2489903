"""Stabilizer groups as canonical GF(2) row spaces, plus measurement updates.

A StabilizerGroup is the row space of a bit-packed matrix whose rows are
signless Pauli operators in [x | z] layout.  The stored matrix is always in
reduced row echelon form, which makes it the unique canonical presentation
of the group: two groups are equal iff their matrices are bit-identical.

Measurement follows the projective update: a check that anticommutes with
some generators replaces one of them (the lowest-index anticommuting
generator is the pivot) after multiplying the pivot into the others; a
commuting check either is already in the group (no change) or extends it.
Signs are never tracked.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .errors import (
    DimensionMismatchError,
    NonCommutingError,
    NonCommutingRoundError,
)
from .pauli import PauliOp, pack_paulis


def _row_layout(n: int) -> tuple[int, int]:
    """(words per half, total packed columns) for the [x | z] row layout."""
    w = gf2.words_for(n)
    return w, 64 * w + n


def check_mutually_commuting(ops: Sequence[PauliOp]) -> tuple[int, int] | None:
    """Return the first anticommuting pair of indices, or None."""
    if len(ops) < 2:
        return None
    mx, mz = pack_paulis(list(ops))
    prods = gf2.symplectic_parity_pairs(mx, mz, mx, mz)
    bad = np.argwhere(np.triu(prods, k=1))
    if bad.size:
        i, j = bad[0]
        return int(i), int(j)
    return None


class StabilizerGroup:
    """Canonicalized independent generating set of commuting Pauli operators."""

    __slots__ = ("n", "mat", "rank", "pivots")

    def __init__(self, n: int, mat: np.ndarray, rank: int, pivots: np.ndarray):
        self.n = n
        self.mat = mat
        self.rank = rank
        self.pivots = pivots
        self.mat.setflags(write=False)

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "StabilizerGroup":
        w, _ = _row_layout(n)
        return cls(n, np.zeros((0, 2 * w), dtype=np.uint64), 0,
                   np.zeros(0, dtype=np.int64))

    @classmethod
    def from_generators(
        cls, ops: Sequence[PauliOp], *, validate: bool = True
    ) -> "StabilizerGroup":
        """Canonical group generated by ops; raises NonCommuting on bad input."""
        ops = list(ops)
        if not ops:
            raise ValueError("from_generators needs at least one operator")
        n = ops[0].n
        for op in ops:
            if op.n != n:
                raise DimensionMismatchError("mixed qubit counts")
        if validate:
            bad = check_mutually_commuting(ops)
            if bad is not None:
                raise NonCommutingError(*bad)
        rows = np.stack([op.packed_row() for op in ops])
        return cls._from_rows(n, rows)

    @classmethod
    def _from_rows(cls, n: int, rows: np.ndarray) -> "StabilizerGroup":
        _, ncols = _row_layout(n)
        red, rank, pivots = gf2.rref(rows, ncols)
        return cls(n, red, rank, pivots)

    # -- packed views ------------------------------------------------------

    @property
    def x_part(self) -> np.ndarray:
        w = gf2.words_for(self.n)
        return self.mat[:, :w]

    @property
    def z_part(self) -> np.ndarray:
        w = gf2.words_for(self.n)
        return self.mat[:, w:]

    def generators(self) -> list[PauliOp]:
        return [PauliOp.from_packed_row(self.n, self.mat[i])
                for i in range(self.rank)]

    def k(self) -> int:
        """Logical-qubit count n - rank."""
        return self.n - self.rank

    # -- membership --------------------------------------------------------

    def contains(self, p: PauliOp) -> bool:
        self._check_n(p)
        return gf2.in_span(self.mat, self.pivots, p.packed_row())

    def express(self, p: PauliOp) -> np.ndarray | None:
        """Coefficients of p over the canonical generators, or None."""
        self._check_n(p)
        rem, used = gf2.reduce_row_with_witness(
            self.mat, self.pivots, p.packed_row()
        )
        if rem.any():
            return None
        return used

    def element_from_coeffs(self, coeffs: np.ndarray) -> PauliOp:
        row = np.zeros(self.mat.shape[1], dtype=np.uint64)
        for i in np.nonzero(coeffs)[0]:
            row ^= self.mat[i]
        return PauliOp.from_packed_row(self.n, row)

    # -- measurement -------------------------------------------------------

    def measure(self, check: PauliOp) -> "StabilizerGroup":
        """Group after projectively measuring one check."""
        self._check_n(check)
        rows = self.mat.copy()
        rows = _measure_into_rows(self, rows, check.packed_row())
        return StabilizerGroup._from_rows(self.n, rows)

    def measure_round(
        self, checks: Sequence[PauliOp], *, validated: bool = False
    ) -> "StabilizerGroup":
        """Measure one commuting round of checks; order-independent."""
        checks = list(checks)
        if not checks:
            return self
        if not validated:
            bad = check_mutually_commuting(checks)
            if bad is not None:
                raise NonCommutingRoundError(*bad)
        for c in checks:
            self._check_n(c)
        rows = self.mat.copy()
        for c in checks:
            rows = _measure_into_rows(self, rows, c.packed_row())
        return StabilizerGroup._from_rows(self.n, rows)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabilizerGroup):
            return NotImplemented
        return (
            self.n == other.n
            and self.rank == other.rank
            and np.array_equal(self.mat, other.mat)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rank, self.mat.tobytes()))

    def __repr__(self) -> str:
        return f"StabilizerGroup(n={self.n}, rank={self.rank})"

    def _check_n(self, p: PauliOp) -> None:
        if p.n != self.n:
            raise DimensionMismatchError(f"{p.n} vs {self.n} qubits")


def _measure_into_rows(
    group_like: StabilizerGroup, rows: np.ndarray, check_row: np.ndarray
) -> np.ndarray:
    """One projective update on a (possibly redundant) generating row list.

    Redundant rows are tolerated; callers canonicalize once at the end.
    """
    n = group_like.n
    w = gf2.words_for(n)
    if rows.shape[0]:
        prods = gf2.symplectic_parity_rows(
            rows[:, :w], rows[:, w:], check_row[:w], check_row[w:]
        )
        anti = np.nonzero(prods)[0]
    else:
        anti = np.zeros(0, dtype=np.int64)
    if anti.size:
        pivot = int(anti[0])
        mask = np.zeros(rows.shape[0], dtype=np.uint8)
        mask[anti[1:]] = 1
        gf2.xor_into_masked(rows, mask, rows[pivot])
        rows[pivot] = check_row
        return rows
    # commuting: append (canonical rref later drops it if already in the span)
    return np.concatenate([rows, check_row[np.newaxis, :]], axis=0)


# -- derived subgroup computations ------------------------------------------


def center_of_group(gens: Sequence[PauliOp]) -> StabilizerGroup:
    """Elements of <gens> commuting with every generator.

    gens need not commute.  A basis of <gens> is built first (RREF), then a
    single kernel problem over that basis yields the center.
    """
    gens = list(gens)
    n = gens[0].n
    rows = np.stack([op.packed_row() for op in gens])
    _, ncols = _row_layout(n)
    basis, rank, _ = gf2.rref(rows, ncols)
    w = gf2.words_for(n)
    # A[j, i] = <gen_j, basis_i>; center coefficients span ker A
    mx, mz = pack_paulis(gens)
    a = gf2.symplectic_parity_pairs(mx, mz, basis[:, :w], basis[:, w:])
    coeffs = gf2.kernel(gf2.pack_rows(a), rank)
    return _combine(n, basis, coeffs)


def centralizer_within(
    host: StabilizerGroup, constraints: Sequence[PauliOp]
) -> StabilizerGroup:
    """Subgroup of host whose elements commute with every constraint."""
    if not constraints:
        return host
    w = gf2.words_for(host.n)
    mx, mz = pack_paulis(list(constraints))
    a = gf2.symplectic_parity_pairs(
        mx, mz, host.x_part, host.z_part
    )
    coeffs = gf2.kernel(gf2.pack_rows(a), host.rank)
    return _combine(host.n, host.mat, coeffs)


def intersect(s1: StabilizerGroup, s2: StabilizerGroup) -> StabilizerGroup:
    """Canonical basis of s1 ∩ s2 (stacked-kernel construction)."""
    if s1.n != s2.n:
        raise DimensionMismatchError(f"{s1.n} vs {s2.n} qubits")
    _, ncols = _row_layout(s1.n)
    if s1.rank == 0 or s2.rank == 0:
        return StabilizerGroup.empty(s1.n)
    rows = gf2.intersect_rowspaces(s1.mat, s2.mat, ncols)
    return StabilizerGroup._from_rows(s1.n, rows)


def restrict_to_region(
    s: StabilizerGroup, region: Iterable[int]
) -> StabilizerGroup:
    """Subgroup of s supported entirely inside the given qubit set."""
    inside = np.zeros(s.n, dtype=bool)
    for q in region:
        inside[q] = True
    coeffs = _restrict_coeffs(s, inside)
    return _combine(s.n, s.mat, coeffs)


def _restrict_coeffs(s: StabilizerGroup, inside: np.ndarray) -> np.ndarray:
    """Coefficient vectors of elements of s supported inside the mask."""
    outside = gf2.pack_rows((~inside).astype(np.uint8))[0]
    if s.rank == 0:
        return np.zeros((0, 1), dtype=np.uint64)
    masked = np.concatenate(
        [s.x_part & outside, s.z_part & outside], axis=1
    )
    _, ncols = _row_layout(s.n)
    # kernel over generator coordinates of the outside-support map
    constraint = gf2.transpose(masked, ncols)
    return gf2.kernel(constraint, s.rank)


def _combine(n: int, basis: np.ndarray, coeffs: np.ndarray) -> StabilizerGroup:
    """Span of the coefficient combinations of basis rows, canonicalized."""
    w = gf2.words_for(n)
    if coeffs.shape[0] == 0:
        return StabilizerGroup.empty(n)
    out = np.zeros((coeffs.shape[0], 2 * w), dtype=np.uint64)
    for i in range(coeffs.shape[0]):
        for r in range(basis.shape[0]):
            if gf2.get_bit(coeffs[i], r):
                out[i] ^= basis[r]
    return StabilizerGroup._from_rows(n, out)
