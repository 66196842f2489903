"""Dense projector simulation used as an independent oracle (n <= 5).

Starting from the maximally mixed state, each measured Pauli is applied as
an explicit 2^n projector with a fixed outcome choice (+1 unless the +1
branch has zero probability).  The stabilizer group of the resulting state
is read off from Pauli expectation values: a signless Pauli P belongs to the
group iff |tr(P rho)| = 1.

This path never touches the packed-bit engine, so agreement between the two
is a real cross-check of the measurement update.
"""

from __future__ import annotations

import itertools

import numpy as np

from .pauli import PauliOp
from .stabilizer import StabilizerGroup

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_MAX_N = 12  # hard cap; the oracle is meant for n <= 5


def pauli_matrix(p: PauliOp) -> np.ndarray:
    if p.n > _MAX_N:
        raise ValueError(f"dense Pauli matrix for n={p.n} refused")
    out = np.array([[1.0 + 0j]])
    for q in range(p.n):
        out = np.kron(out, _SINGLE[p.pauli_at(q)])
    return out


class ProjectorSimulator:
    """Density-matrix simulation of signless Pauli measurements."""

    def __init__(self, n: int):
        if n > _MAX_N:
            raise ValueError(f"n={n} too large for dense simulation")
        self.n = n
        dim = 2**n
        self.rho = np.eye(dim, dtype=complex) / dim

    def measure(self, p: PauliOp) -> int:
        """Project onto a fixed outcome branch; returns the sign used."""
        m = pauli_matrix(p)
        dim = 2**self.n
        eye = np.eye(dim, dtype=complex)
        proj_plus = (eye + m) / 2
        candidate = proj_plus @ self.rho @ proj_plus
        prob = abs(np.trace(candidate))
        sign = 1
        if prob < 1e-12:
            proj = (eye - m) / 2
            candidate = proj @ self.rho @ proj
            prob = abs(np.trace(candidate))
            sign = -1
        self.rho = candidate / np.trace(candidate).real
        return sign

    def stabilizer_group(self) -> StabilizerGroup | None:
        """Signless stabilizer group of the current state, or None if the
        state is not a stabilizer mixed state."""
        members: list[PauliOp] = []
        for letters in itertools.product("IXYZ", repeat=self.n):
            s = "".join(letters)
            if s == "I" * self.n:
                continue
            p = PauliOp.from_string(s)
            val = abs(np.trace(pauli_matrix(p) @ self.rho))
            if val > 1 - 1e-8:
                members.append(p)
            elif val > 1e-8:
                return None
        if not members:
            return StabilizerGroup.empty(self.n)
        return StabilizerGroup.from_generators(members)
