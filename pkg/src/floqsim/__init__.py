"""floqsim: exact stabilizer dynamics for Floquet codes.

Builds the square-octagon, coupled-layer 3D, ruby-lattice and hyperhoneycomb
check groups, runs their periodic measurement schedules with bit-packed GF(2)
linear algebra, and verifies the structural invariants (per-round logical
counts, rewinding, period automorphisms, nonlocal-stabilizer counts,
condensation-check evolution, boundary behavior).
"""

from .backend import BACKEND
from .pauli import PauliOp, multiply, symplectic_product
from .stabilizer import (
    StabilizerGroup,
    center_of_group,
    centralizer_within,
    intersect,
    restrict_to_region,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "PauliOp",
    "StabilizerGroup",
    "__version__",
    "center_of_group",
    "centralizer_within",
    "intersect",
    "multiply",
    "restrict_to_region",
    "symplectic_product",
]
