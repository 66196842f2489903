"""Shared lattice-code plumbing: checks, code instances, boundary specs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..errors import NonCommutingRoundError, StructureMismatchError
from ..pauli import PauliOp
from ..stabilizer import (
    StabilizerGroup,
    center_of_group,
    check_mutually_commuting,
)

CODE_SCHEMA = "floqsim-code/1"


@dataclass(frozen=True)
class Check:
    """One measured check: operator, schedule round label, color, placement."""

    op: PauliOp
    round_label: str
    color: str
    where: tuple


@dataclass
class CodeInstance:
    """A concrete lattice code: qubits, colored checks, declared schedules.

    coords maps qubit index -> integer coordinates; tags carries sublattice
    annotations (layer orientation, corner name, ...) per qubit.  Instances
    are immutable by convention once built.
    """

    family: str
    L: int
    n_qubits: int
    coords: dict[int, tuple[int, ...]]
    tags: dict[int, tuple]
    checks: list[Check]
    boundary: str  # "torus" or a planar spec name
    declared_schedules: dict[str, dict[str, list[str]]]
    named_stabilizers: list[tuple[str, PauliOp]] = field(default_factory=list)
    params: dict[str, Any] = field(default_factory=dict)
    # extra round labels binding a color subset (e.g. plain greens during init)
    aux_labels: dict[str, str] = field(default_factory=dict)

    def round_labels(self) -> list[str]:
        seen: list[str] = []
        for c in self.checks:
            if c.round_label not in seen:
                seen.append(c.round_label)
        seen.extend(self.aux_labels)
        return seen

    def checks_for(self, label: str) -> list[PauliOp]:
        if label in self.aux_labels:
            color = self.aux_labels[label]
            return [c.op for c in self.checks if c.color == color]
        return [c.op for c in self.checks if c.round_label == label]

    def all_check_ops(self) -> list[PauliOp]:
        return [c.op for c in self.checks]

    def validate_rounds(self) -> None:
        """Every check of a round must commute with every other of the round."""
        for label in self.round_labels():
            ops = self.checks_for(label)
            bad = check_mutually_commuting(ops)
            if bad is not None:
                raise NonCommutingRoundError(
                    *bad, message=f"round {label}: checks {bad} anticommute"
                )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": CODE_SCHEMA,
            "family": self.family,
            "L": self.L,
            "boundary": self.boundary,
            "n_qubits": self.n_qubits,
            "qubits": [
                {
                    "index": q,
                    "coords": list(self.coords[q]),
                    "tags": list(self.tags.get(q, ())),
                }
                for q in sorted(self.coords)
            ],
            "checks": [
                {
                    "pauli": {str(q): p for q, p in c.op.to_sparse().items()},
                    "round": c.round_label,
                    "color": c.color,
                    "where": list(c.where),
                }
                for c in self.checks
            ],
            "schedules": self.declared_schedules,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=False)


def stabilizers_of_check_group(code: CodeInstance) -> StabilizerGroup:
    """Center of the check group, with the lattice's named generators verified.

    Raises StructureMismatch if a named local stabilizer is not a member;
    that always signals a lattice-construction bug, never a schedule issue.
    """
    center = center_of_group(code.all_check_ops())
    for name, op in code.named_stabilizers:
        if not center.contains(op):
            raise StructureMismatchError(
                f"{code.family}: named stabilizer {name} not in check-group center"
            )
    return center


def restrict_check(op: PauliOp, keep: Sequence[bool], new_index: dict[int, int],
                   new_n: int) -> PauliOp | None:
    """Restrict a check to the kept qubits; None if support vanishes."""
    terms = {}
    for q, p in op.to_sparse().items():
        if keep[q]:
            terms[new_index[q]] = p
    if not terms:
        return None
    return PauliOp.from_sparse(new_n, terms)
