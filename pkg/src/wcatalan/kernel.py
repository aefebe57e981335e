"""Kernel selection: compiled DP extension when available, pure Python otherwise.

The environment variable WCATALAN_PURE=1 forces the pure backend (used by
the benchmark and to exercise the fallback in tests).
"""

from __future__ import annotations

import os

from . import _dyck_py
from .errors import DomainError

try:
    from . import _dyck_cy  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _dyck_cy = None

if os.environ.get("WCATALAN_PURE") == "1":
    _dyck_cy = None

BACKEND = "cython" if _dyck_cy is not None else "pure"

_COMPILED_MOD_LIMIT = 1 << 62


def dyck_dp_mod(bvals, n_max: int, modulus: int, height_cap: int | None = None) -> list[int]:
    """Weighted Catalan residues mod `modulus` for n = 0..n_max."""
    try:
        if _dyck_cy is not None and 2 <= modulus < _COMPILED_MOD_LIMIT:
            return _dyck_cy.dyck_dp_mod(bvals, n_max, modulus, height_cap)
        return _dyck_py.dyck_dp_mod(bvals, n_max, modulus, height_cap)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def dyck_dp_exact(bvals, n_max: int, height_cap: int | None = None) -> list[int]:
    """Exact weighted Catalan numbers for n = 0..n_max."""
    try:
        return _dyck_py.dyck_dp_exact(bvals, n_max, height_cap)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
