"""Coupled-layer 3D Floquet codes on stacked square-octagon layers.

Three orthogonal stacks of 2D square-octagon layers (orientations XY, YZ,
XZ) share a cubic lattice of vertices: the small squares of the three
layers through a vertex form the octahedron cluster of the truncated cubic
lattice, with two qubits at each octahedron vertex (one from each of the
two layers meeting there).

Both families keep the full 2D layer check sets (red XX, green YY, blue ZZ
per layer) and differ only in which pairs of qubits the three interlayer YY
checks of each octahedron couple:

* floquet-tc-3d pairs green edges of perpendicular cubic edges meeting at
  the octahedron so that, for every cube, the product of the three octagons
  on its corner faces commutes with all checks.  The G-round ISG is then a
  single 3D toric code (three logical qubits on a torus).
* xcube-floquet connects one qubit at each positive octahedron vertex into
  a triangle of YY checks.  No octagon product stays in the check-group
  center; the squares survive as the planar vertex crosses of the X-cube
  model and the G-round ISG carries 6L-3 logical qubits.

Check-group stabilizers: every small square (YYYY) in both families, plus
the corner octagon triples for floquet-tc-3d.
"""

from __future__ import annotations

import numpy as np

from .. import gf2
from ..errors import StructureMismatchError, UnsupportedSizeError
from ..pauli import PauliOp, pack_paulis
from .base import Check, CodeInstance
from .square_octagon import E, N, W, S, _SQUARE_EDGES, edge_color

XY, YZ, XZ = 0, 1, 2
_ORIENT_NAMES = ("xy", "yz", "xz")

_PAULI_OF_COLOR = {"red": "X", "green": "Y", "blue": "Z"}
_LABEL_OF_COLOR = {"red": "R", "green": "G", "blue": "B"}

# init measures the layer checks only (label "g" binds the plain green
# checks without the interlayer couplings), preparing the stacks before the
# first full G round; the conserved nonlocal check products fixed by this
# prefix persist through every later round.
SCHEDULES_3D = {
    "gbrbgr": {"init": ["R", "B", "g", "R"],
               "period": ["G", "B", "R", "B", "G", "R"]},
    "gbr": {"init": ["R", "B", "g", "R"], "period": ["G", "B", "R"]},
}

# in-plane corner offsets, unit = quarter cell
_OFFSETS = {E: (1, 0), N: (0, 1), W: (-1, 0), S: (0, -1)}


class _Layout:
    """Index arithmetic for the three foliations of square-octagon layers."""

    def __init__(self, L: int):
        self.L = L
        self.per_layer = 4 * L * L
        self.per_orient = L * self.per_layer
        self.n = 3 * self.per_orient

    def qubit(self, orient: int, layer: int, u: int, v: int, corner: int) -> int:
        L = self.L
        return (
            orient * self.per_orient
            + (layer % L) * self.per_layer
            + ((u % L) * L + (v % L)) * 4
            + corner
        )

    def coords(self, orient: int, layer: int, u: int, v: int,
               corner: int) -> tuple[int, int, int]:
        du, dv = _OFFSETS[corner]
        L4 = 4 * self.L
        cu, cv, cl = (4 * u + du) % L4, (4 * v + dv) % L4, (4 * layer) % L4
        if orient == XY:
            return (cu, cv, cl)
        if orient == YZ:
            return (cl, cu, cv)
        return (cu, cl, cv)


def _layer_checks(lay: _Layout, orient: int, layer: int) -> list[Check]:
    """Red/green/blue checks of one square-octagon layer."""
    L, n = lay.L, lay.n
    out = []
    for u in range(L):
        for v in range(L):
            for a, b in _SQUARE_EDGES:
                color = edge_color(u, v, a, b)
                p = _PAULI_OF_COLOR[color]
                op = PauliOp.from_sparse(n, {
                    lay.qubit(orient, layer, u, v, a): p,
                    lay.qubit(orient, layer, u, v, b): p,
                })
                out.append(Check(op, _LABEL_OF_COLOR[color], color,
                                 ("sq-edge", orient, layer, u, v, a, b)))
            out.append(Check(
                PauliOp.from_sparse(n, {
                    lay.qubit(orient, layer, u, v, E): "Y",
                    lay.qubit(orient, layer, u + 1, v, W): "Y",
                }), "G", "green", ("green-u", orient, layer, u, v)))
            out.append(Check(
                PauliOp.from_sparse(n, {
                    lay.qubit(orient, layer, u, v, N): "Y",
                    lay.qubit(orient, layer, u, v + 1, S): "Y",
                }), "G", "green", ("green-v", orient, layer, u, v)))
    return out


def _corner_pairs(lay: _Layout, wx: int, wy: int, wz: int,
                  pairing: str) -> tuple[int, int]:
    """Qubits for the interlayer YY check at octahedron (vertex) w.

    Each of the three checks couples one green edge from each of two layer
    orientations, taken from perpendicular cubic edges leaving w; this is
    the arrangement for which one product of three octagons per cube (the
    faces meeting at a cube corner) commutes with every check.
    """
    if pairing == "xy-yz":
        # x-direction green of the XY layer with z-direction green of YZ
        return (lay.qubit(XY, wz, wx, wy, E), lay.qubit(YZ, wx, wy, wz, N))
    if pairing == "xy-xz":
        # y-direction green of XY with z-direction green of XZ
        return (lay.qubit(XY, wz, wx, wy, N), lay.qubit(XZ, wy, wx, wz, N))
    # yz-xz: y-direction green of YZ with x-direction green of XZ
    return (lay.qubit(YZ, wx, wy, wz, E), lay.qubit(XZ, wy, wx, wz, E))


def _condensation_checks(lay: _Layout, family: str) -> list[Check]:
    L, n = lay.L, lay.n
    out = []
    for wx in range(L):
        for wy in range(L):
            for wz in range(L):
                for pairing in ("xy-yz", "xy-xz", "yz-xz"):
                    if family == "floquet-tc-3d":
                        a, b = _corner_pairs(lay, wx, wy, wz, pairing)
                        op = PauliOp.from_sparse(n, {a: "Y", b: "Y"})
                        color = "interlayer"
                    else:
                        a, b = _xcube_pairs(lay, wx, wy, wz, pairing)
                        op = PauliOp.from_sparse(n, {a: "Y", b: "Y"})
                        color = "interlayer"
                    out.append(Check(op, "G", color,
                                     ("cond", wx, wy, wz, pairing)))
    return out


def _xcube_pairs(lay: _Layout, wx: int, wy: int, wz: int,
                 pairing: str) -> tuple[int, int]:
    """Interlayer YY pairing used by the X-cube family.

    One qubit per positive octahedron vertex (+x: XY east corner, +y: YZ
    east, +z: XZ north) connected pairwise into a triangle; the product of
    the three checks of one octahedron is the identity.  This coupling keeps
    every square static and yields 6L-3 logical qubits, the X-cube count.
    """
    qx = lay.qubit(XY, wz, wx, wy, E)
    qy = lay.qubit(YZ, wx, wy, wz, E)
    qz = lay.qubit(XZ, wy, wx, wz, N)
    if pairing == "xy-yz":
        return (qx, qy)
    if pairing == "xy-xz":
        return (qx, qz)
    return (qy, qz)


def _square_stabilizer(lay: _Layout, orient: int, layer: int, u: int,
                       v: int) -> PauliOp:
    return PauliOp.from_sparse(lay.n, {
        lay.qubit(orient, layer, u, v, c): "Y" for c in (E, N, W, S)
    })


def octagon_op(lay: _Layout, orient: int, layer: int, i: int, j: int) -> PauliOp:
    """Octagon stabilizer of one layer at in-plane position (i+1/2, j+1/2)."""
    p = "Z" if (i + j) % 2 == 0 else "X"
    qs = [
        lay.qubit(orient, layer, i, j, E), lay.qubit(orient, layer, i, j, N),
        lay.qubit(orient, layer, i + 1, j, N), lay.qubit(orient, layer, i + 1, j, W),
        lay.qubit(orient, layer, i, j + 1, E), lay.qubit(orient, layer, i, j + 1, S),
        lay.qubit(orient, layer, i + 1, j + 1, W), lay.qubit(orient, layer, i + 1, j + 1, S),
    ]
    return PauliOp.from_sparse(lay.n, {q: p for q in qs})


def _cube_face_octagons(lay: _Layout, cx: int, cy: int, cz: int) -> dict:
    """The six octagonal faces of the cube at (cx+1/2, cy+1/2, cz+1/2).

    Octagon of an XY layer at z=k sits at (i+1/2, j+1/2, k); the cube's two
    XY faces are at z=cz and z=cz+1, and similarly for the other orientations.
    """
    L = lay.L
    return {
        (XY, 0): octagon_op(lay, XY, cz % L, cx, cy),
        (XY, 1): octagon_op(lay, XY, (cz + 1) % L, cx, cy),
        (YZ, 0): octagon_op(lay, YZ, cx % L, cy, cz),
        (YZ, 1): octagon_op(lay, YZ, (cx + 1) % L, cy, cz),
        (XZ, 0): octagon_op(lay, XZ, cy % L, cx, cz),
        (XZ, 1): octagon_op(lay, XZ, (cy + 1) % L, cx, cz),
    }


def _triple_octagon_stabilizers(
    lay: _Layout, cond: list[Check]
) -> list[tuple[str, PauliOp]]:
    """One commuting product of three orthogonal octagons per cube.

    Single octagons anticommute with nearby condensation checks; for each
    cube exactly some of the 8 face triples cancel those anticommutations.
    Found by testing the XOR of per-octagon anticommutation patterns.
    """
    L = lay.L
    cond_x, cond_z = pack_paulis([c.op for c in cond])
    named = []
    for cx in range(L):
        for cy in range(L):
            for cz in range(L):
                faces = _cube_face_octagons(lay, cx, cy, cz)
                patt = {}
                for key, op in faces.items():
                    patt[key] = gf2.symplectic_parity_rows(
                        cond_x, cond_z, op.x, op.z
                    )
                found = None
                for a in range(2):
                    for b in range(2):
                        for c in range(2):
                            total = patt[(XY, a)] ^ patt[(YZ, b)] ^ patt[(XZ, c)]
                            if not total.any():
                                found = (a, b, c)
                                break
                        if found:
                            break
                    if found:
                        break
                if found is None:
                    raise StructureMismatchError(
                        f"no commuting octagon triple on cube {(cx, cy, cz)}"
                    )
                a, b, c = found
                op = faces[(XY, a)] * faces[(YZ, b)] * faces[(XZ, c)]
                named.append((f"octagon-triple({cx},{cy},{cz})", op))
    return named


def build_coupled(family: str, L: int) -> CodeInstance:
    """Torus instance of floquet-tc-3d or xcube-floquet."""
    if L < 2 or L % 2:
        raise UnsupportedSizeError(f"{family} needs even L >= 2, got {L}")
    lay = _Layout(L)
    checks: list[Check] = []
    for orient in (XY, YZ, XZ):
        for layer in range(L):
            checks.extend(_layer_checks(lay, orient, layer))
    cond = _condensation_checks(lay, family)
    checks.extend(cond)

    coords = {}
    tags = {}
    for orient in (XY, YZ, XZ):
        for layer in range(L):
            for u in range(L):
                for v in range(L):
                    for c in (E, N, W, S):
                        q = lay.qubit(orient, layer, u, v, c)
                        coords[q] = lay.coords(orient, layer, u, v, c)
                        tags[q] = (_ORIENT_NAMES[orient], layer, u, v, "ENWS"[c])

    named = []
    for orient in (XY, YZ, XZ):
        for layer in range(L):
            for u in range(L):
                for v in range(L):
                    named.append((
                        f"square({_ORIENT_NAMES[orient]},{layer},{u},{v})",
                        _square_stabilizer(lay, orient, layer, u, v),
                    ))
    if family == "floquet-tc-3d":
        # the X-cube coupling leaves no local octagon products in the
        # center: its local check-group stabilizers are the squares alone
        named.extend(_triple_octagon_stabilizers(lay, cond))

    return CodeInstance(
        family=family, L=L, n_qubits=lay.n, coords=coords, tags=tags,
        checks=checks, boundary="torus",
        declared_schedules=dict(SCHEDULES_3D), named_stabilizers=named,
        params={"layout": "three square-octagon foliations"},
        aux_labels={"g": "green"},
    )


def truncate_coupled_planar(code: CodeInstance) -> CodeInstance:
    """Open-boundary box for the 3D Floquet TC.

    The torus is opened with green cuts on the two x-faces (wrap-around
    x-direction green edges of the XY and XZ layers become single-qubit Y
    checks on both endpoints) and red/blue square cuts on the four y- and
    z-faces (one corner row of each affected layer orientation is detached,
    its two severed square edges kept as single-qubit checks on each side).
    The two-qubit interlayer checks are never severed; the builder verifies
    that every one survives at full weight.
    """
    L = code.L
    lay = _Layout(L)
    n = lay.n
    # square edges severed per orientation: (in-plane axis, row, corner set).
    # A v-row cut detaches the N corner (still green-linked to the next row);
    # a u-row cut detaches the W corner (wrap-linked to the previous row).
    cut_sq = {
        XY: [("v", 0, {(E, N), (N, W)})],          # y-faces
        YZ: [("u", 0, {(N, W), (W, S)}),           # y-faces (u = y)
             ("v", 0, {(E, N), (N, W)})],          # z-faces
        XZ: [("v", 0, {(E, N), (N, W)})],          # z-faces
    }
    checks: list[Check] = []
    for c in code.checks:
        kind = c.where[0]
        if kind == "green-u":
            orient, layer, u, v = c.where[1], c.where[2], c.where[3], c.where[4]
            if orient in (XY, XZ) and u == L - 1:
                # x-face green cut
                for q in c.op.support():
                    checks.append(Check(
                        PauliOp.from_sparse(n, {q: "Y"}), "G", "green",
                        ("cut-green", orient, layer, q)))
                continue
        if kind == "sq-edge":
            orient, layer, u, v, a, b = c.where[1:]
            severed = False
            for axis, row, edges in cut_sq[orient]:
                pos = v if axis == "v" else u
                if pos == row and (a, b) in edges:
                    severed = True
                    break
            if severed:
                for q in c.op.support():
                    checks.append(Check(
                        PauliOp.from_sparse(n, {q: c.op.pauli_at(q)}),
                        c.round_label, c.color,
                        ("cut-sq-edge", orient, layer, u, v, q)))
                continue
        checks.append(c)

    out = CodeInstance(
        family=code.family, L=L, n_qubits=n, coords=dict(code.coords),
        tags=dict(code.tags), checks=checks, boundary="planar",
        declared_schedules=dict(SCHEDULES_3D),
        named_stabilizers=[],
        params={"truncation": "green-x, half-squares-yz"},
        aux_labels={"g": "green"},
    )
    _verify_interlayer_uncut(code, out)
    return out


def _verify_interlayer_uncut(torus: CodeInstance, planar: CodeInstance) -> None:
    before = [c.op for c in torus.checks if c.where[0] == "cond"]
    after = {c.op for c in planar.checks if c.where[0] == "cond"}
    missing = [op for op in before if op not in after]
    if missing or any(op.weight() != 2 for op in after):
        raise StructureMismatchError(
            "a two-qubit interlayer check was truncated by the planar cut"
        )


def parent_generators_coupled(code: CodeInstance) -> list[tuple[str, PauliOp]]:
    """Per-layer color-code loop products: stacks of 4.8.8 parent codes."""
    lay = _Layout(code.L)
    L, n = code.L, code.n_qubits
    gens: list[tuple[str, PauliOp]] = []
    for orient in (XY, YZ, XZ):
        oname = _ORIENT_NAMES[orient]
        for layer in range(L):
            for i in range(L):
                for j in range(L):
                    gens.append((
                        f"green-loop({oname},{layer},{i},{j})",
                        PauliOp.from_sparse(n, {
                            q: "Y" for q in octagon_op(
                                lay, orient, layer, i, j).support()
                        }),
                    ))
                    gens.append((
                        f"red-pair({oname},{layer},{i},{j})",
                        PauliOp.from_sparse(n, {
                            lay.qubit(orient, layer, i, j, c): "X"
                            for c in (E, N, W, S)
                        }),
                    ))
                    gens.append((
                        f"octagon({oname},{layer},{i},{j})",
                        octagon_op(lay, orient, layer, i, j),
                    ))
    return gens
