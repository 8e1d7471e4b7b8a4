"""Input coercion helpers shared by the estimators and the CLI."""

from __future__ import annotations

from typing import Any

from .fpmodule import FpModule
from .genvec import GenVector, normalize_group
from .matrix import ExactMatrix
from .rings import RingHandle, ring_from_json


def check_ring(ring: Any) -> RingHandle:
    if isinstance(ring, RingHandle):
        return ring
    return ring_from_json(ring)


def check_matrix(A: Any, ring: Any = None) -> ExactMatrix:
    """Accept an ExactMatrix or nested rows of element values."""
    if isinstance(A, ExactMatrix):
        if ring is not None and check_ring(ring) != A.owner:
            raise ValueError(f"matrix over {A.owner}, expected {check_ring(ring)}")
        return A
    if ring is None:
        raise ValueError("a ring is required to interpret a nested-list matrix")
    R = check_ring(ring)
    rows = [list(r) for r in A]
    if not rows:
        raise ValueError("empty matrix needs an explicit ExactMatrix with a column count")
    return ExactMatrix(R, [[R.element_from_json(x) if isinstance(x, (str, list)) else R(x).payload
                            for x in r] for r in rows])


def check_module(M: Any) -> FpModule:
    if isinstance(M, FpModule):
        return M
    if isinstance(M, dict):
        return FpModule.from_json(M)
    raise TypeError(f"expected an FpModule or module JSON, got {type(M).__name__}")


def check_group(group: str) -> str:
    return normalize_group(group)


def check_generating_vector(M: FpModule, v: Any) -> GenVector:
    """Certify a GenVector or a list of coordinate columns."""
    if isinstance(v, GenVector):
        if v.module != M:
            raise ValueError("vector belongs to a different module")
        return v if v.certified else GenVector.certify(M, v.entries)
    R = M.owner
    cols = [[R.element_from_json(x) if isinstance(x, (str, list)) else R(x).payload for x in c] for c in v]
    return GenVector.certify(M, cols)
