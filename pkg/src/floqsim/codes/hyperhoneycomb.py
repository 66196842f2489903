"""3D Floquet fermionic toric code on the hyperhoneycomb lattice.

The lattice comes from the honeycomb by cell replacement: a two-vertex cell
(one z-edge) sits at every site of a diamond lattice and the four diamond
bonds carry the cells' x- and y-legs, so every vertex has exactly one x-,
one y- and one z-labeled edge (checks XX, YY, ZZ).

Cells form A/B pairs indexed by an fcc anchor (i, j, k); per anchor the six
edge classes are

    z_A, z_B          cell-internal z edges
    x1                a2(c) - b1(c)
    y2                a2(c) - b1(c - t1)
    x3                a1(c) - b2(c - t2)
    y4                a1(c) - b2(c - t3)

The weight-10 armchair stabilizers (products of the ten checks around the
elementary rings) come in four orientation classes, one ring of each class
per 3-cell multiplying to the identity.  Three classes are scheduled as the
front, back and right orientations; the left class is inferred through the
local relation.

Each orientation block is five rounds 0,1,2,3,0 of edge matchings, graded
modulo four over the anchor lattice so that each armchair of the block's
orientation is a product of checks from two consecutive rounds (labels
A,B,C,D by grading).  The gradings

    front: 2j + k      back: i + 2j      right: i + 2k   (mod 4)

close on anchor tori with dims = (multiple of 4, even, multiple of 4); the
smallest closed lattice is (4, 2, 4) with 128 qubits.

The 16-round period F B F R (second F contracted to its single 0-round)
keeps one dynamically generated logical qubit whose Z representative is the
string of checks winding in the (0,1,0) direction of the embedding; the
plain 15-round F B R period measures out every winding string and keeps
nothing.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import StructureMismatchError, UnsupportedSizeError
from ..pauli import PauliOp
from .base import Check, CodeInstance

A1, A2, B1, B2 = 0, 1, 2, 3

# ring edge lists per orientation role: (edge class, anchor offset in
# (t1, t2, t3) steps), cyclic order; alternate positions form the two halves
RING_F = (  # omits the y4 bond direction... (front)
    ("z_A", (0, 0, 0)), ("x1", (0, 0, 0)), ("z_B", (0, 0, 0)),
    ("x3", (0, 1, 0)), ("y4", (0, 1, 0)), ("z_B", (0, 1, -1)),
    ("x1", (0, 1, -1)), ("z_A", (0, 1, -1)), ("x3", (0, 1, -1)),
    ("y4", (0, 0, 0)),
)
RING_B = (  # back
    ("z_A", (0, 0, 0)), ("x1", (0, 0, 0)), ("y2", (1, 0, 0)),
    ("z_A", (1, 0, 0)), ("x3", (1, 0, 0)), ("z_B", (1, -1, 0)),
    ("x1", (1, -1, 0)), ("y2", (1, -1, 0)), ("z_B", (0, -1, 0)),
    ("x3", (0, 0, 0)),
)
RING_R = (  # right
    ("z_A", (0, 0, 0)), ("x1", (0, 0, 0)), ("y2", (1, 0, 0)),
    ("z_A", (1, 0, 0)), ("y4", (1, 0, 0)), ("z_B", (1, 0, -1)),
    ("x1", (1, 0, -1)), ("y2", (1, 0, -1)), ("z_B", (0, 0, -1)),
    ("y4", (0, 0, 0)),
)
RING_L = (  # left: unscheduled, closes the 3-cell relation
    ("z_A", (0, 0, 0)), ("y2", (0, 0, 0)), ("z_B", (-1, 0, 0)),
    ("x3", (-1, 1, 0)), ("y4", (-1, 1, 0)), ("z_B", (-1, 1, -1)),
    ("y2", (0, 1, -1)), ("z_A", (0, 1, -1)), ("x3", (0, 1, -1)),
    ("y4", (0, 0, 0)),
)
RINGS = {"F": RING_F, "B": RING_B, "R": RING_R, "L": RING_L}

# mod-4 round grading per scheduled orientation (coefficients of (i, j, k))
_GRADING = {"F": (0, 2, 1), "B": (1, 2, 0), "R": (1, 0, 2)}

# round offsets of each edge class relative to the anchor grading, from the
# alternating halves of the rings above
_ROUND_OFFSETS = {
    "F": {"z_A": (0,), "x1": (1, 3), "z_B": (0,), "x3": (3,),
          "y4": (2, 1), "y2": ()},
    "B": {"z_A": (0,), "x1": (1,), "y2": (3, 2), "x3": (3, 1),
          "z_B": (2,), "y4": ()},
    "R": {"z_A": (0,), "x1": (1,), "y2": (3, 2), "y4": (3, 1),
          "z_B": (2,), "x3": ()},
}

_BLOCK = {o: [f"{o}0", f"{o}1", f"{o}2", f"{o}3", f"{o}0"] for o in "FBR"}

SCHEDULES_FTC = {
    "fbfr": {"init": [],
             "period": _BLOCK["F"] + _BLOCK["B"] + ["F0"] + _BLOCK["R"]},
    "fbr": {"init": [],
            "period": _BLOCK["F"] + _BLOCK["B"] + _BLOCK["R"]},
}

_PAULI_OF = {"z_A": "Z", "z_B": "Z", "x1": "X", "y2": "Y", "x3": "X",
             "y4": "Y"}
EDGE_CLASSES = ("z_A", "z_B", "x1", "y2", "x3", "y4")

# embedding: anchor steps and cell offsets chosen so the surviving logical
# string (the x3-chain class) winds along (0, 1, 0)
_T1 = np.array((-2, 2, 2))
_T2 = np.array((0, 4, 0))
_T3 = np.array((2, 2, 2))
_B_OFF = np.array((0, 2, 1))
_Q_OFF = np.array((1, 1, 0))


class _HhLayout:
    def __init__(self, dims: tuple[int, int, int]):
        self.dims = dims
        self.n = 4 * dims[0] * dims[1] * dims[2]

    def cell(self, i: int, j: int, k: int) -> int:
        L1, L2, L3 = self.dims
        return ((i % L1) * L2 + (j % L2)) * L3 + (k % L3)

    def qubit(self, i: int, j: int, k: int, which: int) -> int:
        return self.cell(i, j, k) * 4 + which

    def edge_qubits(self, cls: str, c: tuple[int, int, int]):
        i, j, k = c
        if cls == "z_A":
            return (self.qubit(i, j, k, A1), self.qubit(i, j, k, A2))
        if cls == "z_B":
            return (self.qubit(i, j, k, B1), self.qubit(i, j, k, B2))
        if cls == "x1":
            return (self.qubit(i, j, k, A2), self.qubit(i, j, k, B1))
        if cls == "y2":
            return (self.qubit(i, j, k, A2), self.qubit(i - 1, j, k, B1))
        if cls == "x3":
            return (self.qubit(i, j, k, A1), self.qubit(i, j - 1, k, B2))
        return (self.qubit(i, j, k, A1), self.qubit(i, j, k - 1, B2))  # y4

    def coords(self, i: int, j: int, k: int, which: int):
        L1, L2, L3 = self.dims
        base = _T1 * (i % L1) + _T2 * (j % L2) + _T3 * (k % L3)
        if which in (B1, B2):
            base = base + _B_OFF
        if which in (A2, B2):
            base = base + _Q_OFF
        return tuple(int(v) for v in base)


def build_ftc3d(L: int = 4, dims: tuple[int, int, int] | None = None
                ) -> CodeInstance:
    """Hyperhoneycomb instance on an (L1, L2, L3) anchor torus.

    dims defaults to (L, L, L); the round gradings need L1 and L3 to be
    multiples of 4 and L2 even.  The smallest closed lattice is (4, 2, 4).
    """
    if dims is None:
        dims = (L, L, L)
    dims = tuple(int(d) for d in dims)
    L1, L2, L3 = dims
    if L1 % 4 or L3 % 4 or L2 % 2 or min(dims) < 2:
        raise UnsupportedSizeError(
            f"ftc-3d needs dims (4m, even, 4m), got {dims}"
        )
    lay = _HhLayout(dims)
    n = lay.n

    coords = {}
    tags = {}
    for i in range(L1):
        for j in range(L2):
            for k in range(L3):
                for which, wn in zip((A1, A2, B1, B2),
                                     ("a1", "a2", "b1", "b2")):
                    q = lay.qubit(i, j, k, which)
                    coords[q] = lay.coords(i, j, k, which)
                    tags[q] = (i, j, k, wn)

    checks: list[Check] = []
    for i in range(L1):
        for j in range(L2):
            for k in range(L3):
                for cls in EDGE_CLASSES:
                    q1, q2 = lay.edge_qubits(cls, (i, j, k))
                    p = _PAULI_OF[cls]
                    op = PauliOp.from_sparse(n, {q1: p, q2: p})
                    for orient, offsets in _ROUND_OFFSETS.items():
                        ci, cj, ck = _GRADING[orient]
                        g = (ci * i + cj * j + ck * k) % 4
                        for off in offsets[cls]:
                            checks.append(Check(
                                op, f"{orient}{(g + off) % 4}",
                                p.lower(), ("edge", cls, i, j, k)))

    named = []
    for i in range(L1):
        for j in range(L2):
            for k in range(L3):
                for orient in ("F", "B", "R", "L"):
                    named.append((
                        f"armchair-{orient}({i},{j},{k})",
                        armchair_op(lay, orient, (i, j, k)),
                    ))

    code = CodeInstance(
        family="ftc-3d", L=L, n_qubits=n, coords=coords, tags=tags,
        checks=checks, boundary="torus",
        declared_schedules=dict(SCHEDULES_FTC), named_stabilizers=named,
        params={"dims": list(dims)},
    )
    _verify_vertex_coloring(code, lay)
    _verify_armchair_relation(code, lay)
    return code


def armchair_op(lay: _HhLayout, orient: str,
                anchor: tuple[int, int, int]) -> PauliOp:
    """Product of the ten checks around one armchair ring."""
    i, j, k = anchor
    op = PauliOp.identity(lay.n)
    for cls, (dt1, dt2, dt3) in RINGS[orient]:
        q1, q2 = lay.edge_qubits(cls, (i + dt1, j + dt2, k + dt3))
        p = _PAULI_OF[cls]
        op = op * PauliOp.from_sparse(lay.n, {q1: p, q2: p})
    return op


def winding_string(lay: _HhLayout, direction: str) -> PauliOp:
    """Product of checks along one nontrivial cycle of the anchor torus.

    direction "t1": alternating x1/y2 checks; "t2": the z_A-x1-z_B-x3
    chain (the (0,1,0) class in embedding coordinates); "t3": the
    z_A-x1-z_B-y4 chain.
    """
    op = PauliOp.identity(lay.n)
    if direction == "t1":
        for i in range(lay.dims[0]):
            for cls in ("x1", "y2"):
                q1, q2 = lay.edge_qubits(cls, (i, 0, 0))
                op = op * PauliOp.from_sparse(
                    lay.n, {q1: _PAULI_OF[cls], q2: _PAULI_OF[cls]})
        return op
    axis = 1 if direction == "t2" else 2
    hop = "x3" if direction == "t2" else "y4"
    for s in range(lay.dims[axis]):
        c = (0, s, 0) if direction == "t2" else (0, 0, s)
        for cls in ("z_A", "x1", "z_B", hop):
            cc = c
            if cls == hop:
                cc = (0, s + 1, 0) if direction == "t2" else (0, 0, s + 1)
            q1, q2 = lay.edge_qubits(cls, cc)
            op = op * PauliOp.from_sparse(
                lay.n, {q1: _PAULI_OF[cls], q2: _PAULI_OF[cls]})
    return op


def logical_z_string(code: CodeInstance) -> PauliOp:
    """The check-product string along (0,1,0) preserved by the fbfr period."""
    return winding_string(layout_of(code), "t2")


def _verify_vertex_coloring(code: CodeInstance, lay: _HhLayout) -> None:
    """Every vertex must carry exactly one x-, y- and z-labeled edge."""
    seen: dict[int, set[str]] = {q: set() for q in range(lay.n)}
    for cls in EDGE_CLASSES:
        for i in range(lay.dims[0]):
            for j in range(lay.dims[1]):
                for k in range(lay.dims[2]):
                    p = _PAULI_OF[cls]
                    for q in lay.edge_qubits(cls, (i, j, k)):
                        if p in seen[q]:
                            raise StructureMismatchError(
                                f"vertex {q} has two {p}-edges"
                            )
                        seen[q].add(p)
    for q, labels in seen.items():
        if labels != {"X", "Y", "Z"}:
            raise StructureMismatchError(
                f"vertex {q} has labels {labels}, not one of each"
            )


# relative ring anchors whose four orientations multiply to the identity;
# filled by the first relation search and reused afterwards
_RELATION_OFFSETS: dict[str, tuple[int, int, int]] | None = None


def relation_offsets(lay: _HhLayout) -> dict[str, tuple[int, int, int]]:
    """Anchor offsets making the F, B, R, L armchair product the identity."""
    global _RELATION_OFFSETS
    if _RELATION_OFFSETS is not None:
        return _RELATION_OFFSETS
    base = armchair_op(lay, "F", (0, 0, 0))
    rng = range(-1, 2)
    for ob in itertools.product(rng, repeat=3):
        pb = base * armchair_op(lay, "B", ob)
        for orr in itertools.product(rng, repeat=3):
            pr = pb * armchair_op(lay, "R", orr)
            for ol in itertools.product(rng, repeat=3):
                if (pr * armchair_op(lay, "L", ol)).is_identity():
                    _RELATION_OFFSETS = {"F": (0, 0, 0), "B": ob,
                                         "R": orr, "L": ol}
                    return _RELATION_OFFSETS
    raise StructureMismatchError("no armchair 3-cell relation found")


def _verify_armchair_relation(code: CodeInstance, lay: _HhLayout) -> None:
    offs = relation_offsets(lay)
    for i in range(lay.dims[0]):
        for j in range(lay.dims[1]):
            for k in range(lay.dims[2]):
                prod = PauliOp.identity(lay.n)
                for orient, (di, dj, dk) in offs.items():
                    prod = prod * armchair_op(
                        lay, orient, (i + di, j + dj, k + dk))
                if not prod.is_identity():
                    raise StructureMismatchError(
                        f"armchair relation fails at cell {(i, j, k)}"
                    )


def layout_of(code: CodeInstance) -> _HhLayout:
    return _HhLayout(tuple(code.params["dims"]))
