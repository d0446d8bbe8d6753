"""Covering decision and search over subset-pair decompositions.

A selector tuple covers when the union of its chosen components spans every
element.  The search enumerates tuples in ascending numeric order and
returns the first hit, so the reported witness is the numerically smallest
one.  Forced-choice analysis can prune the enumeration: a component owning
an element that occurs in no other pair must be selected, and a pair whose
both components are forced rules out any covering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoolTuple, CoveringWitness, Decomposition, validate_decomposition
from .errors import DimensionMismatch, NotACovering
from . import kernels

__all__ = [
    "ForcedReport",
    "is_covering",
    "find_covering",
    "all_coverings",
    "forced_subsets",
    "i_transform",
    "normalize_covering",
]


@dataclass(frozen=True)
class ForcedReport:
    """Pairs whose components must appear in every covering.

    ``forced`` lists (pair, component) with 1-based pair indices, ordered;
    ``contradiction`` is the smallest pair index with both components
    forced, or None.  A contradiction implies no covering exists.
    """

    forced: tuple[tuple[int, int], ...]
    contradiction: int | None

    def fixed_bits(self) -> dict[int, int]:
        """pair index -> forced component, for pruning."""
        return {i: a for i, a in self.forced}


def is_covering(d: Decomposition, t: BoolTuple) -> bool:
    """True iff the components selected by t jointly contain every element."""
    if len(t) != d.n:
        raise DimensionMismatch(f"tuple has {len(t)} bits, decomposition has {d.n} pairs")
    bits = np.fromiter(t, dtype=np.intp, count=d.n)
    chosen = np.where(bits[:, None] == 1, d.sm1, d.sm0)
    return bool(chosen.any(axis=0).all())


def forced_subsets(d: Decomposition) -> ForcedReport:
    """Detect components forced into every covering.

    Component (i, a) is forced when it owns an element no other pair
    touches; with both components of one pair forced, no covering exists.
    """
    occupied = (d.sm0 == 1) | (d.sm1 == 1)
    owners = occupied.sum(axis=0)  # pairs touching each element
    exclusive = owners == 1
    forced: list[tuple[int, int]] = []
    contradiction: int | None = None
    for i in range(d.n):
        f0 = bool(((d.sm0[i] == 1) & exclusive).any())
        f1 = bool(((d.sm1[i] == 1) & exclusive).any())
        if f0:
            forced.append((i + 1, 0))
        if f1:
            forced.append((i + 1, 1))
        if f0 and f1 and contradiction is None:
            contradiction = i + 1
    return ForcedReport(tuple(forced), contradiction)


def _scan_candidates(d: Decomposition, candidates: np.ndarray) -> np.ndarray:
    masks, full = kernels.pack_rows(d.sm0, d.sm1)
    return kernels.cover_scan(masks, full, d.n, candidates)


def _pruned_candidates(n: int, fixed: dict[int, int]):
    """Ascending tuple indices honoring the fixed bits."""
    free = [i for i in range(1, n + 1) if i not in fixed]
    base = 0
    for i, a in fixed.items():
        base |= a << (n - i)
    k = len(free)
    shifts = np.array([n - i for i in free], dtype=np.uint64)
    for block in kernels.candidate_chunks(1 << k):
        out = np.full(block.shape, base, dtype=np.uint64)
        for pos in range(k):
            bit = (block >> np.uint64(k - 1 - pos)) & np.uint64(1)
            out |= bit << shifts[pos]
        yield out


def find_covering(d: Decomposition, prune: bool = False) -> CoveringWitness | None:
    """Numerically smallest covering witness, or None.

    With prune=True the forced-choice analysis runs first: a contradiction
    aborts immediately, and forced bits are fixed so fewer tuples are
    enumerated.  Every covering honors the forced bits, so the result is
    identical either way.
    """
    masks, full = kernels.pack_rows(d.sm0, d.sm1)
    if prune:
        report = forced_subsets(d)
        if report.contradiction is not None:
            return None
        blocks = _pruned_candidates(d.n, report.fixed_bits())
    else:
        blocks = kernels.candidate_chunks(1 << d.n)
    for block in blocks:
        flags = kernels.cover_scan(masks, full, d.n, block)
        hits = np.flatnonzero(flags)
        if hits.size:
            return CoveringWitness(BoolTuple.from_index(int(block[hits[0]]), d.n))
    return None


def all_coverings(d: Decomposition) -> list[CoveringWitness]:
    """Every covering witness, ascending."""
    found: list[CoveringWitness] = []
    for block in kernels.candidate_chunks(1 << d.n):
        flags = _scan_candidates(d, block)
        for idx in block[flags]:
            found.append(CoveringWitness(BoolTuple.from_index(int(idx), d.n)))
    return found


def i_transform(d: Decomposition, indices: set[int]) -> Decomposition:
    """Swap the two components of each listed pair (1-based indices).

    A pure reorder: contents never change, so validity and the existence of
    a covering are preserved, and applying the same indices twice is the
    identity.
    """
    for i in indices:
        if not 1 <= i <= d.n:
            raise DimensionMismatch(f"pair index {i} out of range 1..{d.n}")
    rows = [i - 1 for i in sorted(indices)]
    sm0 = d.sm0.copy()
    sm1 = d.sm1.copy()
    sm0[rows], sm1[rows] = d.sm1[rows], d.sm0[rows]
    return validate_decomposition(sm0, sm1)


def normalize_covering(d: Decomposition, w: CoveringWitness,
                       target: int) -> tuple[Decomposition, CoveringWitness]:
    """Turn a covering into a constant-component covering.

    Swaps exactly the pairs where the witness differs from ``target``; the
    returned witness selects component ``target`` everywhere and covers the
    returned decomposition.
    """
    if target not in (0, 1):
        raise ValueError(f"target component must be 0 or 1, got {target}")
    if not is_covering(d, w.tuple):
        raise NotACovering("the given tuple does not cover the decomposition")
    flip = {i for i in range(1, d.n + 1) if w.tuple.bit(i) != target}
    nd = i_transform(d, flip)
    nw = CoveringWitness(BoolTuple([target] * d.n))
    return nd, nw
