"""Floquet color code on the ruby lattice.

Hexagons sit on an L x L triangular lattice (L = 0 mod 3 so the three-
coloring closes), six qubits per hexagon.  Hexagon edges alternate XX and
YY checks; every edge connecting different hexagons is a ZZ check, and
those z-edges form triangles with one vertex from each of three mutually
adjacent hexagons.

Check-group stabilizers per hexagon: the Z^6 product of its six hexagon
edges, and the weight-12 ring of X/Y around the inflated hexagon (product
of the six far z-edges of the surrounding triangles with the six facing
edges of the neighboring hexagons).

The x/y alternation offset depends on the hexagon color so that the edges
facing each other across green-blue squares carry XX on both sides and
across green-red squares YY on both sides; red-blue squares face mixed
labels.  Round labels: 0 = all XX, 1 = all YY, 2 = all ZZ (every triangle
edge), plus the six rounds of the alternative schedule.
"""

from __future__ import annotations

from ..errors import UnsupportedSizeError
from ..pauli import PauliOp
from .base import Check, CodeInstance

# vertex k sits at angle 30 + 60k degrees; edge k joins vertices k, k+1
_VERTEX_OFFSETS = ((2, 1), (0, 2), (-2, 1), (-2, -1), (0, -2), (2, -1))

# neighbor direction faced by edge k (lattice steps of the hexagon grid)
_EDGE_FACES = ((0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0))

COLOR_NAMES = ("red", "green", "blue")
# x/y alternation offset per color: edge k is x iff (k + offset) is even
_LABEL_OFFSET = {"red": 0, "green": 1, "blue": 0}

SCHEDULES_COLOR = {
    "012": {"init": [], "period": ["0", "1", "2"]},
    "012102": {"init": [], "period": ["0", "1", "2", "1", "0", "2"]},
    "alt6": {"init": [], "period": ["a0", "a1", "a2", "a3", "a4", "a5"]},
}


def hex_color(i: int, j: int) -> str:
    return COLOR_NAMES[(i - j) % 3]


def qubit_index(L: int, i: int, j: int, k: int) -> int:
    return ((i % L) * L + (j % L)) * 6 + k


def edge_label(color: str, k: int) -> str:
    return "x" if (k + _LABEL_OFFSET[color]) % 2 == 0 else "y"


def _up_triangle(L: int, i: int, j: int) -> tuple[int, int, int]:
    return (qubit_index(L, i, j, 0), qubit_index(L, i + 1, j, 2),
            qubit_index(L, i, j + 1, 4))


def _down_triangle(L: int, i: int, j: int) -> tuple[int, int, int]:
    return (qubit_index(L, i + 1, j, 1), qubit_index(L, i, j + 1, 5),
            qubit_index(L, i + 1, j + 1, 3))


def _colors_of(L: int, q: int) -> str:
    cell = q // 6
    return hex_color(cell // L, cell % L)


def build_color_code(L: int) -> CodeInstance:
    """Torus ruby-lattice instance; L must be a positive multiple of 3."""
    if L < 3 or L % 3:
        raise UnsupportedSizeError(
            f"floquet-color needs L = 0 mod 3, L >= 3, got {L}"
        )
    n = 6 * L * L
    coords: dict[int, tuple[int, ...]] = {}
    tags: dict[int, tuple] = {}
    for i in range(L):
        for j in range(L):
            cx, cy = 6 * i + 3 * j, 5 * j
            for k in range(6):
                q = qubit_index(L, i, j, k)
                dx, dy = _VERTEX_OFFSETS[k]
                coords[q] = (cx + dx, cy + dy)
                tags[q] = (hex_color(i, j), i, j, k)

    checks: list[Check] = []
    for i in range(L):
        for j in range(L):
            color = hex_color(i, j)
            for k in range(6):
                lab = edge_label(color, k)
                p = lab.upper()
                op = PauliOp.from_sparse(n, {
                    qubit_index(L, i, j, k): p,
                    qubit_index(L, i, j, (k + 1) % 6): p,
                })
                checks.append(Check(op, {"x": "0", "y": "1"}[lab], lab,
                                    ("hex-edge", i, j, k)))
            for tri, kind in ((_up_triangle(L, i, j), "up"),
                              (_down_triangle(L, i, j), "down")):
                a, b, c = tri
                for q1, q2 in ((a, b), (b, c), (a, c)):
                    op = PauliOp.from_sparse(n, {q1: "Z", q2: "Z"})
                    pair = "".join(sorted(
                        (_colors_of(L, q1)[0], _colors_of(L, q2)[0])))
                    checks.append(Check(op, "2", "z",
                                        ("tri-edge", kind, i, j, pair)))

    named = []
    for i in range(L):
        for j in range(L):
            named.append((f"hexagon({i},{j})", hexagon_stabilizer(L, n, i, j)))
            named.append((f"inflated({i},{j})",
                          inflated_hexagon_stabilizer(L, n, i, j)))

    code = CodeInstance(
        family="floquet-color", L=L, n_qubits=n, coords=coords, tags=tags,
        checks=checks, boundary="torus",
        declared_schedules=dict(SCHEDULES_COLOR), named_stabilizers=named,
    )
    _attach_alt6_labels(code)
    return code


def hexagon_stabilizer(L: int, n: int, i: int, j: int) -> PauliOp:
    """Z^6 around hexagon (i, j): the product of its six edge checks."""
    return PauliOp.from_sparse(
        n, {qubit_index(L, i, j, k): "Z" for k in range(6)}
    )


def inflated_hexagon_stabilizer(L: int, n: int, i: int, j: int) -> PauliOp:
    """Weight-18 X/Y operator on the inflated hexagon of (i, j).

    Product of the hexagon's own x-edges, the far z-edges of the six
    surrounding triangles, and the facing edge checks of the six neighbors.
    Each z-spoke then meets the support twice, so the whole ring commutes
    with every check.
    """
    op = PauliOp.identity(n)
    own = {qubit_index(L, i, j, k) for k in range(6)}
    color = hex_color(i, j)
    for k in range(6):
        if edge_label(color, k) != "x":
            continue
        op = op * PauliOp.from_sparse(n, {
            qubit_index(L, i, j, k): "X",
            qubit_index(L, i, j, (k + 1) % 6): "X",
        })
    # far z-edge of each surrounding triangle: the edge avoiding our vertex
    tris = [_up_triangle(L, i, j), _up_triangle(L, i - 1, j),
            _up_triangle(L, i, j - 1), _down_triangle(L, i - 1, j),
            _down_triangle(L, i, j - 1), _down_triangle(L, i - 1, j - 1)]
    for tri in tris:
        far = [q for q in tri if q not in own]
        assert len(far) == 2
        op = op * PauliOp.from_sparse(n, {far[0]: "Z", far[1]: "Z"})
    # facing edge of each neighbor: the neighbor's edge opposite ours
    for k in range(6):
        di, dj = _EDGE_FACES[k]
        ni, nj = i + di, j + dj
        nk = (k + 3) % 6
        p = edge_label(hex_color(ni % L, nj % L), nk).upper()
        op = op * PauliOp.from_sparse(n, {
            qubit_index(L, ni, nj, nk): p,
            qubit_index(L, ni, nj, (nk + 1) % 6): p,
        })
    return op


def _attach_alt6_labels(code: CodeInstance) -> None:
    """Bind the six alternative-schedule rounds.

    Rounds (2c, 2c+1) infer the hexagon and inflated stabilizers of color c
    (order blue, green, red): round 2c measures one half of the color-c
    hexagon edges (x for blue and red, y for green) plus the z-edges not
    touching color c; round 2c+1 measures the other half plus every facing
    edge of the inflated c-hexagons, which are whole x/y classes of the
    other two colors.  With green's halves taken in this order the period
    automorphism of the six-round schedule is the identity.
    """
    rounds_of = {
        ("blue", "x"): ("a0", "a3"), ("blue", "y"): ("a1", "a5"),
        ("green", "x"): ("a3", "a1"), ("green", "y"): ("a2", "a5"),
        ("red", "x"): ("a1", "a4"), ("red", "y"): ("a3", "a5"),
    }
    extra: list[Check] = []
    for c in code.checks:
        kind = c.where[0]
        if kind == "hex-edge":
            i, j = c.where[1], c.where[2]
            for slot in rounds_of[(hex_color(i, j), c.color)]:
                extra.append(Check(c.op, slot, c.color, c.where))
        elif kind == "tri-edge":
            pair = c.where[4]
            missing = ({"r", "g", "b"} - set(pair)).pop()
            slot = {"b": "a0", "g": "a2", "r": "a4"}[missing]
            extra.append(Check(c.op, slot, c.color, c.where))
    code.checks.extend(extra)


def parent_generators_ruby(code: CodeInstance) -> list[tuple[str, PauliOp]]:
    """Closed-loop check products generating the parent code with the center.

    The z-pair product on every square (the two z-checks joining its facing
    edges) plus the same-label X^6 products around the red and the blue
    hexagons.  Together with the hexagon and inflated stabilizers this gives
    a commuting group of rank n - 8: eight logical qubits, the count of two
    color-code copies.  Adding the green hexagon products as well would
    over-condense to k = 6, so exactly two hexagon colors participate.
    """
    L, n = code.L, code.n_qubits
    gens: list[tuple[str, PauliOp]] = []
    for i in range(L):
        for j in range(L):
            color = hex_color(i, j)
            if color == "green":
                continue
            qs: set[int] = set()
            for k in range(6):
                if edge_label(color, k) == "x":
                    qs.add(qubit_index(L, i, j, k))
                    qs.add(qubit_index(L, i, j, (k + 1) % 6))
            gens.append((f"hex-x6({i},{j})",
                         PauliOp.from_sparse(n, {q: "X" for q in qs})))
    for i in range(L):
        for j in range(L):
            for k in range(6):
                di, dj = _EDGE_FACES[k]
                ni, nj = (i + di) % L, (j + dj) % L
                nk = (k + 3) % 6
                mine = (qubit_index(L, i, j, k),
                        qubit_index(L, i, j, (k + 1) % 6))
                theirs = (qubit_index(L, ni, nj, nk),
                          qubit_index(L, ni, nj, (nk + 1) % 6))
                if mine[0] > theirs[0]:
                    continue
                sq_z = _square_z_pair(code, mine, theirs)
                if sq_z is not None:
                    gens.append((f"square-z({i},{j},{k})", sq_z))
    return gens


def _square_z_pair(code: CodeInstance, mine, theirs) -> PauliOp | None:
    """Product of the two z-checks joining the facing edges of a square."""
    zs = []
    for c in code.checks:
        if c.where[0] != "tri-edge" or c.round_label != "2":
            continue
        sup = set(c.op.support())
        if len(sup & set(mine)) == 1 and len(sup & set(theirs)) == 1:
            zs.append(c.op)
    if len(zs) != 2:
        return None
    return zs[0] * zs[1]
