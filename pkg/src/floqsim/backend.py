"""Kernel backend selection.

The GF(2) row-reduction kernels exist twice: a numba @njit version and a
pure-numpy version.  The active backend is chosen once at import time from
the FLOQSIM_BACKEND environment variable ("numba" or "numpy").  Default is
numba when importable, numpy otherwise.
"""

from __future__ import annotations

import os

_VALID = ("numba", "numpy")


def _resolve() -> str:
    requested = os.environ.get("FLOQSIM_BACKEND", "").strip().lower()
    if requested and requested not in _VALID:
        raise ValueError(
            f"FLOQSIM_BACKEND must be one of {_VALID}, got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if requested == "numba":
            raise
        return "numpy"
    return "numba"


BACKEND: str = _resolve()
