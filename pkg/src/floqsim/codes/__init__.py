"""Code library: builders, check-group stabilizers, truncations, parents."""

from __future__ import annotations

import numpy as np

from .. import gf2
from ..errors import InvalidSpecError, UnsupportedSizeError, ValidationFailedError
from ..pauli import PauliOp
from ..stabilizer import StabilizerGroup, check_mutually_commuting
from .base import Check, CodeInstance, stabilizers_of_check_group
from . import coupled_layers, hyperhoneycomb, ruby, square_octagon

FAMILIES = (
    "floquet-tc-2d",
    "floquet-color",
    "floquet-tc-3d",
    "xcube-floquet",
    "ftc-3d",
)


def build_code(family: str, L: int, boundary: str = "torus",
               **options) -> CodeInstance:
    """Construct a code instance of one of the five families."""
    if family not in FAMILIES:
        raise UnsupportedSizeError(
            f"unknown family {family!r}; choose from {FAMILIES}"
        )
    if boundary not in ("torus", "planar"):
        raise InvalidSpecError(f"boundary must be torus or planar, got {boundary!r}")
    if boundary == "planar":
        return truncate_planar(build_code(family, L), "standard")
    if family == "floquet-tc-2d":
        return square_octagon.build_tc2d(L)
    if family == "floquet-color":
        return ruby.build_color_code(L)
    if family in ("floquet-tc-3d", "xcube-floquet"):
        return coupled_layers.build_coupled(family, L)
    return hyperhoneycomb.build_ftc3d(L, **options)


def truncate_planar(code: CodeInstance, spec: str = "standard") -> CodeInstance:
    """Open-boundary variant of a torus code via the documented truncation.

    Each family supports exactly one cut pattern ("standard"); "none"
    returns the code unchanged.
    """
    if spec == "none":
        return code
    if spec != "standard":
        raise InvalidSpecError(f"unknown boundary spec {spec!r}")
    if code.boundary != "torus":
        raise InvalidSpecError("truncate_planar needs a torus instance")
    if code.family == "floquet-tc-2d":
        return square_octagon.build_tc2d_planar(code.L)
    if code.family == "floquet-tc-3d":
        return coupled_layers.truncate_coupled_planar(code)
    raise InvalidSpecError(
        f"no documented planar truncation for {code.family}"
    )


def parent_code(code: CodeInstance) -> StabilizerGroup:
    """Parent stabilizer code: check-group center plus closed-loop products.

    Validates that the generators mutually commute, that every generator is
    a product of checks, and that the group contains the whole center.
    """
    family = code.family
    if family == "floquet-tc-2d":
        extra = square_octagon.parent_generators_tc2d(code)
    elif family == "floquet-color":
        extra = ruby.parent_generators_ruby(code)
    elif family in ("floquet-tc-3d", "xcube-floquet"):
        extra = coupled_layers.parent_generators_coupled(code)
    else:
        raise UnsupportedSizeError(
            f"no parent code construction for {family}"
        )
    center = stabilizers_of_check_group(code)
    gens = center.generators() + [op for _, op in extra]
    bad = check_mutually_commuting(gens)
    if bad is not None:
        i, j = bad
        raise ValidationFailedError(
            f"parent generators {i} and {j} anticommute"
        )
    parent = StabilizerGroup.from_generators(gens, validate=False)

    rows = np.stack([c.op.packed_row() for c in code.checks])
    w = gf2.words_for(code.n_qubits)
    red, _, piv = gf2.rref(rows, 64 * w + code.n_qubits)
    for name, op in extra:
        if not gf2.in_span(red, piv, op.packed_row()):
            raise ValidationFailedError(
                f"parent generator {name} is not a product of checks"
            )
    for i in range(center.rank):
        if not parent.contains(PauliOp.from_packed_row(code.n_qubits,
                                                       center.mat[i])):
            raise ValidationFailedError(
                "parent code does not contain the check-group center"
            )
    return parent


__all__ = [
    "FAMILIES",
    "Check",
    "CodeInstance",
    "build_code",
    "parent_code",
    "stabilizers_of_check_group",
    "truncate_planar",
]
