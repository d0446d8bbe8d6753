"""Brute-force satisfiability oracle for desk-scale instances.

Everything here enumerates assignments exhaustively; it is the independent
anchor the rest of the package is verified against, not a solver.  The
variable-count guard (default 24, env SPECCOVER_MAX_N, hard cap 63 from the
bit-packed kernels) keeps enumeration bounded.
"""

from __future__ import annotations

import os

import numpy as np

from .core import BoolTuple, CnfMatrix
from .errors import DimensionMismatch, TooLarge
from . import kernels

__all__ = ["evaluate", "satisfying_assignments", "common_satisfying", "max_enum_vars"]

_DEFAULT_MAX_N = 24
_HARD_CAP = 63


def max_enum_vars() -> int:
    """Current enumeration guard (SPECCOVER_MAX_N, default 24, capped at 63)."""
    raw = os.environ.get("SPECCOVER_MAX_N", "")
    try:
        limit = int(raw) if raw else _DEFAULT_MAX_N
    except ValueError:
        raise ValueError(f"SPECCOVER_MAX_N must be an integer, got {raw!r}") from None
    return min(limit, _HARD_CAP)


def _check_guard(n: int) -> None:
    limit = max_enum_vars()
    if n > limit:
        raise TooLarge(n, limit)


def evaluate(f: CnfMatrix, t: BoolTuple) -> bool:
    """True iff every clause holds a literal made true by the assignment."""
    if len(t) != f.n:
        raise DimensionMismatch(f"assignment has {len(t)} bits, function has {f.n} variables")
    bits = np.fromiter(t, dtype=np.int8, count=f.n)
    hit = ((f.cells == 1) & (bits == 1)) | ((f.cells == -1) & (bits == 0))
    return bool(hit.any(axis=1).all())


def satisfying_assignments(f: CnfMatrix) -> list[BoolTuple]:
    """All satisfying assignments in ascending numeric order."""
    _check_guard(f.n)
    pos, neg = kernels.clause_masks(f.cells)
    found: list[BoolTuple] = []
    for block in kernels.candidate_chunks(1 << f.n):
        flags = kernels.cnf_scan(pos, neg, block)
        for idx in block[flags]:
            found.append(BoolTuple.from_index(int(idx), f.n))
    return found


def common_satisfying(f: CnfMatrix, h: CnfMatrix) -> BoolTuple | None:
    """Smallest assignment satisfying both functions, or None."""
    if f.n != h.n:
        raise DimensionMismatch(f"variable counts differ: {f.n} vs {h.n}")
    _check_guard(f.n)
    pf = kernels.clause_masks(f.cells)
    ph = kernels.clause_masks(h.cells)
    for block in kernels.candidate_chunks(1 << f.n):
        flags = kernels.cnf_scan(*pf, block) & kernels.cnf_scan(*ph, block)
        hits = np.flatnonzero(flags)
        if hits.size:
            return BoolTuple.from_index(int(block[hits[0]]), f.n)
    return None
