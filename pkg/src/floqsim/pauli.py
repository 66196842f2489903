"""Signless Pauli operators as pairs of packed bit vectors.

A PauliOp on n qubits is (x_bits, z_bits): X on qubit q sets x bit q, Z sets
z bit q, Y sets both.  Phases are deliberately not tracked; every quantity
this engine verifies (group membership, ranks, commutation) is
phase-independent, and the projective measurement update never consults
signs.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .errors import DimensionMismatchError

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_TO_CHAR = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


class PauliOp:
    """Immutable signless Pauli operator on n qubits."""

    __slots__ = ("n", "x", "z", "_hash")

    def __init__(self, n: int, x: np.ndarray, z: np.ndarray):
        if n <= 0:
            raise ValueError("need at least one qubit")
        self.n = n
        self.x = np.ascontiguousarray(x, dtype=np.uint64)
        self.z = np.ascontiguousarray(z, dtype=np.uint64)
        self.x.setflags(write=False)
        self.z.setflags(write=False)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        w = gf2.words_for(n)
        return cls(n, np.zeros(w, dtype=np.uint64), np.zeros(w, dtype=np.uint64))

    @classmethod
    def from_string(cls, s: str) -> "PauliOp":
        n = len(s)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q, ch in enumerate(s.upper()):
            try:
                xb, zb = _CHAR_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"bad Pauli character {ch!r}") from None
            x[q], z[q] = xb, zb
        return cls(n, gf2.pack_rows(x)[0], gf2.pack_rows(z)[0])

    @classmethod
    def from_sparse(cls, n: int, terms: dict[int, str]) -> "PauliOp":
        w = gf2.words_for(n)
        x = np.zeros(w, dtype=np.uint64)
        z = np.zeros(w, dtype=np.uint64)
        for q, ch in terms.items():
            if not 0 <= q < n:
                raise DimensionMismatchError(f"qubit {q} outside 0..{n - 1}")
            xb, zb = _CHAR_TO_BITS[ch.upper()]
            if xb:
                gf2.set_bit(x, q)
            if zb:
                gf2.set_bit(z, q)
        return cls(n, x, z)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        """Signless product: bitwise XOR of x-parts and z-parts."""
        if self.n != other.n:
            raise DimensionMismatchError(
                f"{self.n} vs {other.n} qubits in Pauli product"
            )
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z)

    def commutes_with(self, other: "PauliOp") -> bool:
        return symplectic_product(self, other) == 0

    def is_identity(self) -> bool:
        return not (self.x.any() or self.z.any())

    def weight(self) -> int:
        return int(gf2.popcounts((self.x | self.z)[np.newaxis, :])[0])

    def support(self) -> list[int]:
        bits = gf2.unpack_rows((self.x | self.z)[np.newaxis, :], self.n)[0]
        return [int(q) for q in np.nonzero(bits)[0]]

    def pauli_at(self, q: int) -> str:
        return _BITS_TO_CHAR[(gf2.get_bit(self.x, q), gf2.get_bit(self.z, q))]

    # -- packed views ------------------------------------------------------

    def packed_row(self) -> np.ndarray:
        """Row layout [x-words | z-words], 2n columns, used by BitMatrix math."""
        return np.concatenate([self.x, self.z])

    @classmethod
    def from_packed_row(cls, n: int, row: np.ndarray) -> "PauliOp":
        w = gf2.words_for(n)
        return cls(n, row[:w].copy(), row[w:].copy())

    # -- plumbing ----------------------------------------------------------

    def to_string(self) -> str:
        return "".join(self.pauli_at(q) for q in range(self.n))

    def to_sparse(self) -> dict[int, str]:
        return {q: self.pauli_at(q) for q in self.support()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self,
                "_hash",
                hash((self.n, self.x.tobytes(), self.z.tobytes())),
            )
        return self._hash

    def __repr__(self) -> str:
        if self.n <= 32:
            return f"PauliOp({self.to_string()!r})"
        return f"PauliOp(n={self.n}, {self.to_sparse()!r})"


def symplectic_product(p: PauliOp, q: PauliOp) -> int:
    """0 if p and q commute, 1 if they anticommute.

    Parity of popcount(p.x & q.z) + popcount(p.z & q.x).
    """
    if p.n != q.n:
        raise DimensionMismatchError(
            f"{p.n} vs {q.n} qubits in symplectic product"
        )
    s = gf2.symplectic_parity_rows(
        p.x[np.newaxis, :], p.z[np.newaxis, :], q.x, q.z
    )
    return int(s[0])


def multiply(p: PauliOp, q: PauliOp) -> PauliOp:
    """Signless product (phase discarded)."""
    return p * q


def pack_paulis(ops: list[PauliOp]) -> tuple[np.ndarray, np.ndarray]:
    """Stack x-parts and z-parts of a Pauli list into two packed matrices."""
    if not ops:
        raise ValueError("empty Pauli list")
    n = ops[0].n
    for op in ops:
        if op.n != n:
            raise DimensionMismatchError("mixed qubit counts in Pauli list")
    mx = np.stack([op.x for op in ops])
    mz = np.stack([op.z for op in ops])
    return mx, mz
