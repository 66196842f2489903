"""2D Floquet toric code on the square-octagon (4.8.8) lattice.

Qubits sit on the vertices; each vertex has degree 3.  Small squares carry
alternating red/blue edges (checkerboarded between squares so that octagon
check products come out as pure X or pure Z depending on the sublattice);
all inter-square edges are green.  Checks: red XX, green YY, blue ZZ.

The torus layout uses one square per unit cell on an L x L grid, 4L^2
qubits, with coordinates in units of a quarter cell (square centers at
(4i, 4j), corners offset by one).

The planar layout opens the torus with two cuts: one through the wrap-around
green edges (left/right boundaries) and one through the red/blue edges on
the lower halves of one row of squares (top/bottom boundaries).  Every cut
check is kept as its single-qubit restriction on each side.
"""

from __future__ import annotations

from ..errors import UnsupportedSizeError
from ..pauli import PauliOp
from .base import Check, CodeInstance

E, N, W, S = 0, 1, 2, 3
_OFFSETS = {E: (1, 0), N: (0, 1), W: (-1, 0), S: (0, -1)}

# square edges in cyclic order; at even parity the first and third are red
_SQUARE_EDGES = ((E, N), (N, W), (W, S), (S, E))

_PAULI_OF_COLOR = {"red": "X", "green": "Y", "blue": "Z"}
_LABEL_OF_COLOR = {"red": "R", "green": "G", "blue": "B"}

SCHEDULES_2D = {
    "gbrbgr": {"init": ["R", "B", "G", "R"],
               "period": ["G", "B", "R", "B", "G", "R"]},
    "gbr": {"init": ["R", "B", "G", "R"], "period": ["G", "B", "R"]},
}


def qubit_index(L: int, i: int, j: int, corner: int) -> int:
    return ((i % L) * L + (j % L)) * 4 + corner


def edge_color(i: int, j: int, a: int, b: int) -> str:
    """Color of the square edge (a, b) of square (i, j)."""
    idx = _SQUARE_EDGES.index((a, b))
    first_red = (i + j) % 2 == 0
    if idx in (0, 2):
        return "red" if first_red else "blue"
    return "blue" if first_red else "red"


def _two_body(n: int, q1: int, q2: int, color: str) -> PauliOp:
    p = _PAULI_OF_COLOR[color]
    return PauliOp.from_sparse(n, {q1: p, q2: p})


def build_tc2d(L: int) -> CodeInstance:
    """Torus instance; L must be even so the square checkerboard closes."""
    if L < 2 or L % 2:
        raise UnsupportedSizeError(
            f"floquet-tc-2d needs even L >= 2, got {L}"
        )
    n = 4 * L * L
    coords: dict[int, tuple[int, ...]] = {}
    tags: dict[int, tuple] = {}
    for i in range(L):
        for j in range(L):
            for c, (dx, dy) in _OFFSETS.items():
                q = qubit_index(L, i, j, c)
                coords[q] = ((4 * i + dx) % (4 * L), (4 * j + dy) % (4 * L))
                tags[q] = ("sq", i, j, "ENWS"[c])

    checks: list[Check] = []
    for i in range(L):
        for j in range(L):
            for a, b in _SQUARE_EDGES:
                color = edge_color(i, j, a, b)
                checks.append(Check(
                    _two_body(n, qubit_index(L, i, j, a),
                              qubit_index(L, i, j, b), color),
                    _LABEL_OF_COLOR[color], color, ("sq-edge", i, j, a, b),
                ))
            # green edges eastward and northward of this square
            checks.append(Check(
                _two_body(n, qubit_index(L, i, j, E),
                          qubit_index(L, i + 1, j, W), "green"),
                "G", "green", ("green-h", i, j),
            ))
            checks.append(Check(
                _two_body(n, qubit_index(L, i, j, N),
                          qubit_index(L, i, j + 1, S), "green"),
                "G", "green", ("green-v", i, j),
            ))

    named = []
    for i in range(L):
        for j in range(L):
            named.append((f"square({i},{j})", square_stabilizer(L, n, i, j)))
            named.append((f"octagon({i},{j})", octagon_stabilizer(L, n, i, j)))

    return CodeInstance(
        family="floquet-tc-2d", L=L, n_qubits=n, coords=coords, tags=tags,
        checks=checks, boundary="torus",
        declared_schedules=dict(SCHEDULES_2D), named_stabilizers=named,
    )


def square_stabilizer(L: int, n: int, i: int, j: int) -> PauliOp:
    """YYYY on the four corners of square (i, j)."""
    return PauliOp.from_sparse(
        n, {qubit_index(L, i, j, c): "Y" for c in (E, N, W, S)}
    )


def octagon_stabilizer(L: int, n: int, i: int, j: int) -> PauliOp:
    """Weight-8 product of checks around the octagon at (i+1/2, j+1/2).

    Pure Z when i+j is even (red inner edges), pure X when odd.
    """
    p = "Z" if (i + j) % 2 == 0 else "X"
    qs = octagon_qubits(L, i, j)
    return PauliOp.from_sparse(n, {q: p for q in qs})


def octagon_qubits(L: int, i: int, j: int) -> list[int]:
    return [
        qubit_index(L, i, j, E), qubit_index(L, i, j, N),
        qubit_index(L, i + 1, j, N), qubit_index(L, i + 1, j, W),
        qubit_index(L, i, j + 1, E), qubit_index(L, i, j + 1, S),
        qubit_index(L, i + 1, j + 1, W), qubit_index(L, i + 1, j + 1, S),
    ]


def octagon_green_loop(L: int, n: int, i: int, j: int) -> PauliOp:
    """Product of the four green checks on the octagon boundary: Y^8."""
    return PauliOp.from_sparse(n, {q: "Y" for q in octagon_qubits(L, i, j)})


def square_red_product(L: int, n: int, i: int, j: int) -> PauliOp:
    """Product of the two red edges of square (i, j): X^4 on its corners."""
    return PauliOp.from_sparse(
        n, {qubit_index(L, i, j, c): "X" for c in (E, N, W, S)}
    )


def parent_generators_tc2d(code: CodeInstance) -> list[tuple[str, PauliOp]]:
    """Closed-loop check products beyond the check-group center.

    Green loops around octagons and red-pair products on squares; together
    with squares and octagons these generate a color-code-like commuting
    group on the 4.8.8 lattice.
    """
    L, n = code.L, code.n_qubits
    gens = []
    for i in range(L):
        for j in range(L):
            gens.append((f"green-loop({i},{j})",
                         octagon_green_loop(L, n, i, j)))
            gens.append((f"red-pair({i},{j})",
                         square_red_product(L, n, i, j)))
    return gens


def build_tc2d_planar(L: int) -> CodeInstance:
    """Open-boundary variant: green cuts left/right, square cuts top/bottom.

    Derived from the torus instance: the wrap-around horizontal green edges
    are severed (single-qubit Y restrictions on both endpoints) and the two
    red/blue edges on one half of the j=0 squares are severed (single-qubit
    restrictions on both sides), detaching each N corner so it becomes the
    boundary stub below row 1.  This half is the one for which the 3-round
    GBR schedule measures the logical exactly at its second G-round.
    """
    torus = build_tc2d(L)
    n = torus.n_qubits
    checks: list[Check] = []
    for c in torus.checks:
        kind = c.where[0]
        if kind == "green-h" and c.where[1] == L - 1:
            # cut: Y restriction on each endpoint
            for q in c.op.support():
                checks.append(Check(
                    PauliOp.from_sparse(n, {q: "Y"}), "G", "green",
                    ("cut-green", c.where[1], c.where[2], q),
                ))
            continue
        if kind == "sq-edge" and c.where[2] == 0 and N in (c.where[3], c.where[4]):
            i = c.where[1]
            for q in c.op.support():
                checks.append(Check(
                    PauliOp.from_sparse(n, {q: c.op.pauli_at(q)}),
                    c.round_label, c.color,
                    ("cut-sq-edge", i, 0, q),
                ))
            continue
        checks.append(c)

    named = []
    for i in range(L - 1):
        for j in range(1, L - 1):
            named.append(
                (f"octagon({i},{j})",
                 octagon_stabilizer(L, n, i, j))
            )
    for i in range(L):
        for j in range(1, L):
            named.append((f"square({i},{j})",
                          square_stabilizer(L, n, i, j)))

    return CodeInstance(
        family="floquet-tc-2d", L=L, n_qubits=n, coords=dict(torus.coords),
        tags=dict(torus.tags), checks=checks, boundary="planar",
        declared_schedules=dict(SCHEDULES_2D), named_stabilizers=named,
        params={"truncation": "green-x, half-squares-y"},
    )
