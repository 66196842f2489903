"""Logical operators: frames, round-to-round evolution, period automorphisms,
reversibility, nonlocal-stabilizer counting and condensation-check survival."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .codes.base import CodeInstance
from .errors import DimensionMismatchError
from .pauli import PauliOp, pack_paulis, symplectic_product
from .stabilizer import StabilizerGroup, centralizer_within, restrict_to_region
from .schedule import IsgHistory


class LogicalMeasured:
    """Sentinel: the logical class was destroyed by the next round."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "LogicalMeasured"


LOGICAL_MEASURED = LogicalMeasured()


@dataclass
class LogicalFrame:
    """Symplectic basis (X̄_i, Z̄_i) of C(S)/S for a stabilizer group S."""

    base: StabilizerGroup
    pairs: list[tuple[PauliOp, PauliOp]]

    @property
    def k(self) -> int:
        return len(self.pairs)

    def elements(self) -> list[PauliOp]:
        out = []
        for x, z in self.pairs:
            out.extend((x, z))
        return out

    def verify(self) -> None:
        s = self.base
        for idx, (x, z) in enumerate(self.pairs):
            for g in s.generators():
                assert symplectic_product(x, g) == 0
                assert symplectic_product(z, g) == 0
            assert not s.contains(x) and not s.contains(z)
            for jdx, (x2, z2) in enumerate(self.pairs):
                assert symplectic_product(x, z2) == (1 if idx == jdx else 0)
                assert symplectic_product(x, x2) == 0
                assert symplectic_product(z, z2) == 0


def commutant_basis(s: StabilizerGroup) -> np.ndarray:
    """Packed basis of C(S): all Paulis commuting with every generator."""
    n = s.n
    w = gf2.words_for(n)
    if s.rank == 0:
        rows = np.zeros((2 * n, 2 * w), dtype=np.uint64)
        for q in range(n):
            gf2.set_bit(rows[q][:w], q)
            gf2.set_bit(rows[n + q][w:], q)
        return rows
    # symplectic-partner matrix: swap halves, then one kernel problem
    swapped = np.concatenate([s.z_part, s.x_part], axis=1)
    ncols = 64 * w + n
    return gf2.kernel(swapped, ncols)


def logical_basis(s: StabilizerGroup) -> LogicalFrame:
    """Symplectic Gram-Schmidt over the commutant of S.

    Returns k = n - rank(S) anticommuting pairs; every element commutes with
    S and none is in S.
    """
    n = s.n
    w = gf2.words_for(n)
    comm = commutant_basis(s)
    # candidates: commutant reduced modulo S
    cands: list[np.ndarray] = []
    for i in range(comm.shape[0]):
        r = gf2.reduce_row(s.mat, s.pivots, comm[i]) if s.rank else comm[i]
        if r.any():
            cands.append(r)
    pairs: list[tuple[PauliOp, PauliOp]] = []
    # maintain an rref of S plus chosen frame elements to test independence
    span = s.mat.copy() if s.rank else np.zeros((0, 2 * w), dtype=np.uint64)
    ncols = 64 * w + n
    red, rank, piv = gf2.rref(span, ncols) if span.shape[0] else (
        np.zeros((0, 2 * w), dtype=np.uint64), 0, np.zeros(0, dtype=np.int64))

    def in_span(v):
        return not gf2.reduce_row(red, piv, v).any() if rank else not v.any()

    def add_to_span(v):
        nonlocal red, rank, piv
        red, rank, piv = gf2.rref(np.concatenate([red, v[None, :]]), ncols)

    work = list(cands)
    while work:
        v = work.pop(0)
        if in_span(v):
            continue
        partner = None
        for idx, u in enumerate(work):
            if _sp_packed(v, u, w):
                partner = work.pop(idx)
                break
        if partner is None:
            # v commutes with everything left: defer (its partner was used)
            continue
        # symplectic reduction: strip v/partner components from the rest
        for idx, u in enumerate(work):
            if _sp_packed(u, partner, w):
                work[idx] = u ^ v
            if _sp_packed(work[idx], v, w):
                work[idx] = work[idx] ^ partner
        pairs.append((PauliOp.from_packed_row(n, v),
                      PauliOp.from_packed_row(n, partner)))
        add_to_span(v)
        add_to_span(partner)

    frame = LogicalFrame(s, pairs)
    if frame.k != s.n - s.rank:
        raise AssertionError(
            f"frame size {frame.k} != n - rank = {s.n - s.rank}"
        )
    return frame


def _sp_packed(a: np.ndarray, b: np.ndarray, w: int) -> int:
    acc = (a[:w] & b[w:]) ^ (a[w:] & b[:w])
    return int(np.bitwise_count(acc).sum() & 1)


def evolve_logical(
    lop: PauliOp, s_curr: StabilizerGroup, next_checks: list[PauliOp]
):
    """Multiply stabilizers of the current round into lop so the result
    commutes with every next-round check; LOGICAL_MEASURED if infeasible."""
    if not next_checks:
        return lop
    w = gf2.words_for(s_curr.n)
    cx, cz = pack_paulis(next_checks)
    b_bits = gf2.symplectic_parity_rows(cx, cz, lop.x, lop.z)
    if s_curr.rank == 0:
        if b_bits.any():
            return LOGICAL_MEASURED
        return lop
    a = gf2.symplectic_parity_pairs(cx, cz, s_curr.x_part, s_curr.z_part)
    sol = gf2.solve(gf2.pack_rows(a), s_curr.rank, gf2.pack_rows(b_bits)[0])
    if sol is None:
        return LOGICAL_MEASURED
    out = lop.packed_row()
    for i in range(s_curr.rank):
        if gf2.get_bit(sol, i):
            out = out ^ s_curr.mat[i]
    return PauliOp.from_packed_row(s_curr.n, out)


@dataclass
class AutomorphismReport:
    """End-of-period logical classes expressed in the start frame."""

    matrix: np.ndarray  # (2k, 2k) uint8; column c = image of frame element c
    order: int  # smallest m >= 1 with matrix^m = identity (0 if > cap)
    measured_logicals: list[int] = field(default_factory=list)
    k: int = 0

    def is_identity(self) -> bool:
        return bool(
            not self.measured_logicals
            and np.array_equal(self.matrix, np.eye(self.matrix.shape[0],
                                                   dtype=np.uint8))
        )

    def is_symplectic(self) -> bool:
        m = self.matrix
        two_k = m.shape[0]
        lam = np.zeros((two_k, two_k), dtype=np.uint8)
        for i in range(0, two_k, 2):
            lam[i, i + 1] = lam[i + 1, i] = 1
        return bool(np.array_equal((m.T @ lam @ m) % 2, lam))

    def to_json_dict(self) -> dict:
        return {
            "matrix": ["".join(str(int(b)) for b in row)
                       for row in self.matrix],
            "order": self.order,
            "measured_logicals": list(self.measured_logicals),
            "k": self.k,
        }


def class_coordinates(
    frame: LogicalFrame, op: PauliOp
) -> np.ndarray | None:
    """Coordinates of op's logical class over the frame, or None if op is
    not in <S, frame> (it must commute with S to have a class at all)."""
    s = frame.base
    rows = [s.mat[i] for i in range(s.rank)]
    elems = frame.elements()
    rows.extend(e.packed_row() for e in elems)
    mat = np.stack(rows)
    w = gf2.words_for(s.n)
    ncols = 64 * w + s.n
    # membership with a witness over the original rows: augmented rref whose
    # pivots stay in the operator columns, witness read from the tail
    aug = np.concatenate([mat, _unit_rows(len(rows))], axis=1)
    red2, _, piv2 = gf2.rref(aug, ncols)
    v = np.concatenate([op.packed_row(),
                        np.zeros(_unit_words(len(rows)), dtype=np.uint64)])
    rem, used = gf2.reduce_row_with_witness(red2, piv2, v)
    if rem[: mat.shape[1]].any():
        return None
    # read off which original rows were used from the witness tail
    tail = rem[mat.shape[1]:]
    coords = np.zeros(2 * frame.k, dtype=np.uint8)
    for idx in range(len(rows)):
        if gf2.get_bit(tail, idx) and idx >= s.rank:
            coords[idx - s.rank] = 1
    return coords


def _unit_words(count: int) -> int:
    return gf2.words_for(count)


def _unit_rows(count: int) -> np.ndarray:
    rows = np.zeros((count, _unit_words(count)), dtype=np.uint64)
    for i in range(count):
        gf2.set_bit(rows[i], i)
    return rows


def period_automorphism(
    code: CodeInstance, schedule, history: IsgHistory | None = None,
    periods: int = 1,
) -> AutomorphismReport:
    """Evolve a start frame through one period and express the end classes.

    The start group is the last snapshot of the supplied history (or a fresh
    warmed-up run); period snapshots must return to the same group, which
    the rewinding schedules guarantee.
    """
    from .schedule import parse_schedule, run as run_schedule

    if isinstance(schedule, str):
        schedule = parse_schedule(schedule, code)
    if history is None:
        history = run_schedule(code, schedule, periods=1)
    s_start = history.snapshots[-1][2]
    frame = logical_basis(s_start)
    by_label = {lab: code.checks_for(lab) for lab in code.round_labels()}

    evolved: list = list(frame.elements())
    measured: list[int] = []
    s = s_start
    for _ in range(periods):
        for lab in schedule.period:
            checks = by_label[lab]
            for idx, op in enumerate(evolved):
                if op is LOGICAL_MEASURED:
                    continue
                new = evolve_logical(op, s, checks)
                evolved[idx] = new
                if new is LOGICAL_MEASURED and idx not in measured:
                    measured.append(idx)
            s = s.measure_round(checks, validated=True)
    if s != s_start:
        raise AssertionError(
            "ISG did not return to the start group after the period"
        )

    two_k = 2 * frame.k
    matrix = np.zeros((two_k, two_k), dtype=np.uint8)
    for idx, op in enumerate(evolved):
        if op is LOGICAL_MEASURED:
            continue
        coords = class_coordinates(frame, op)
        if coords is None:
            raise AssertionError("evolved logical left the frame span")
        matrix[:, idx] = coords
    keep = [i for i in range(two_k) if i not in measured]
    order = _matrix_order(matrix[np.ix_(keep, keep)]) if keep else 1
    return AutomorphismReport(matrix=matrix, order=order,
                              measured_logicals=measured, k=frame.k)


def _matrix_order(m: np.ndarray, cap: int = 4096) -> int:
    eye = np.eye(m.shape[0], dtype=np.uint8)
    acc = m.copy()
    for power in range(1, cap + 1):
        if np.array_equal(acc, eye):
            return power
        acc = (acc @ m) % 2
    return 0


def reversibility_check(s_i: StabilizerGroup, s_next: StabilizerGroup) -> bool:
    """True iff operators commuting with both groups cover the full logical
    space of each (2k classes on both sides)."""
    if s_i.n != s_next.n:
        raise DimensionMismatchError("qubit count mismatch")
    k1, k2 = s_i.n - s_i.rank, s_next.n - s_next.rank
    if k1 != k2:
        return False
    if k1 == 0:
        return True
    n = s_i.n
    w = gf2.words_for(n)
    ncols = 64 * w + n
    stacked = np.concatenate(
        [np.concatenate([s_i.z_part, s_i.x_part], axis=1),
         np.concatenate([s_next.z_part, s_next.x_part], axis=1)], axis=0)
    joint = gf2.kernel(stacked, ncols)  # commutant of both groups
    for s in (s_i, s_next):
        combined = np.concatenate([s.mat, joint], axis=0)
        extra = gf2.rank(combined, ncols) - s.rank
        if extra < 2 * k1:
            return False
    return True


def nonlocal_count(
    s: StabilizerGroup, layout: dict[int, tuple], diameter: int = 4
) -> int:
    """rank(S) minus the rank of the box-local subgroup of S.

    The local subgroup is generated by every restriction of S to an
    axis-aligned coordinate box of side <= diameter (periodic wrap over the
    coordinate ranges).  Stabilizers that no collection of such boxes can
    produce are counted as nonlocal.
    """
    if s.rank == 0:
        return 0
    n = s.n
    w = gf2.words_for(n)
    ncols = 64 * w + n
    coords = np.array([layout[q] for q in range(n)], dtype=np.int64)
    ndim = coords.shape[1]
    spans = coords.max(axis=0) + 1

    red = np.zeros((0, 2 * w), dtype=np.uint64)
    rank = 0
    piv = np.zeros(0, dtype=np.int64)
    anchors_per_axis = [sorted(set(coords[:, d])) for d in range(ndim)]

    import itertools as _it

    seen_boxes: set[bytes] = set()
    for anchor in _it.product(*anchors_per_axis):
        inside = np.ones(n, dtype=bool)
        for d in range(ndim):
            rel = (coords[:, d] - anchor[d]) % spans[d]
            inside &= rel <= diameter
        if inside.all():
            continue  # box covers everything; not a locality constraint
        key = np.packbits(inside).tobytes()
        if key in seen_boxes:
            continue
        seen_boxes.add(key)
        sub = restrict_to_region(s, np.nonzero(inside)[0])
        for i in range(sub.rank):
            row = gf2.reduce_row(red, piv, sub.mat[i]) if rank else sub.mat[i]
            if row.any():
                red, rank, piv = gf2.rref(
                    np.concatenate([red, row[None, :]]) if rank else
                    row[None, :], ncols)
        if rank == s.rank:
            break
    return s.rank - rank


def surviving_subgroup(
    s_curr: StabilizerGroup, next_checks: list[PauliOp]
) -> StabilizerGroup:
    """Elements of the current ISG that stay stabilizers after the next
    round (they commute with all of its checks)."""
    return centralizer_within(s_curr, next_checks)


def surviving_beyond(
    s_curr: StabilizerGroup,
    next_checks: list[PauliOp],
    modulo: list[PauliOp],
) -> int:
    """Rank of surviving_subgroup modulo a reference group (static
    stabilizers and the next checks themselves): the evolved condensation
    content of the transition."""
    surv = surviving_subgroup(s_curr, next_checks)
    if surv.rank == 0:
        return 0
    n = s_curr.n
    w = gf2.words_for(n)
    ncols = 64 * w + n
    ref_rows = np.stack([op.packed_row() for op in modulo + next_checks])
    ref_red, ref_rank, _ = gf2.rref(ref_rows, ncols)
    joint = gf2.rank(np.concatenate([ref_red, surv.mat]), ncols)
    return joint - ref_rank


def minimal_weight_in_region(
    s: StabilizerGroup,
    region: list[int],
    exclude: np.ndarray | None = None,
) -> PauliOp | None:
    """Lightest element of S supported in the region, optionally outside the
    row space `exclude`; exhaustive over the restricted subgroup (meant for
    small geometrically motivated regions only)."""
    sub = restrict_to_region(s, region)
    if sub.rank == 0 or sub.rank > 16:
        return None
    best = None
    n = s.n
    w = gf2.words_for(n)
    ncols = 64 * w + n
    if exclude is not None:
        ex_red, ex_rank, ex_piv = gf2.rref(exclude, ncols)
    for mask in range(1, 2 ** sub.rank):
        row = np.zeros(sub.mat.shape[1], dtype=np.uint64)
        m = mask
        i = 0
        while m:
            if m & 1:
                row ^= sub.mat[i]
            m >>= 1
            i += 1
        if exclude is not None and not gf2.reduce_row(
                ex_red, ex_piv, row).any():
            continue
        op = PauliOp.from_packed_row(n, row)
        if best is None or op.weight() < best.weight():
            best = op
    return best


@dataclass(frozen=True)
class EffectiveQubitMap:
    """A block of qubits with stabilizers defining one effective qubit."""

    block: tuple[int, ...]
    block_stabilizers: tuple[PauliOp, ...]
    x_eff: PauliOp
    z_eff: PauliOp


def validate_effective_map(m: EffectiveQubitMap, s: StabilizerGroup) -> bool:
    """All invariants: anticommuting pair, commuting with block stabilizers,
    supported inside the block, stabilizers in S."""
    block = set(m.block)
    for stab in m.block_stabilizers:
        if not s.contains(stab):
            return False
    if symplectic_product(m.x_eff, m.z_eff) != 1:
        return False
    for op in (m.x_eff, m.z_eff):
        if not set(op.support()) <= block:
            return False
        for stab in m.block_stabilizers:
            if symplectic_product(op, stab) != 0:
                return False
    return True
