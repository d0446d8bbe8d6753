"""Conversion between clause matrices and subset-pair decompositions.

The cell maps are mutual inverses: a -1 at clause j, variable i puts
element j into the first component of pair i, a +1 puts it into the second,
and back again.  Clause j corresponds to element j positionally, never
reordered.  Both directions are total on validated inputs.

Each direction exists twice: a vectorized fast path, and an instrumented
cell-by-cell loop that tallies elementary operations to certify the linear
cost bound (at most 4 operations per cell, see :mod:`speccover.counting`).
"""

from __future__ import annotations

import numpy as np

from .core import CnfMatrix, Decomposition, validate_cnf, validate_decomposition
from .counting import OpCounter

__all__ = [
    "cnf_to_decomposition",
    "decomposition_to_cnf",
    "cnf_to_decomposition_counted",
    "decomposition_to_cnf_counted",
]


def cnf_to_decomposition(f: CnfMatrix) -> Decomposition:
    """Derive the subset-pair decomposition of a clause matrix.

    Pair i collects the clauses mentioning variable i: negative occurrences
    in the first component, positive in the second.  Validity of the result
    follows from validity of the input (disjointness because one cell holds
    one sign, nonempty pairs because no column is all zero, full coverage
    because no row is all zero).
    """
    sm0 = (f.cells.T == -1).astype(np.uint8)
    sm1 = (f.cells.T == 1).astype(np.uint8)
    return validate_decomposition(sm0, sm1)


def decomposition_to_cnf(d: Decomposition) -> CnfMatrix:
    """Derive the clause matrix generated by a decomposition.

    Clause j collects one literal per pair containing element j, with the
    component picking the polarity.  Validity follows from the
    decomposition invariants (no empty clause because every element is in
    some subset, no unused variable because no pair is empty).
    """
    cells = np.zeros((d.m, d.n), dtype=np.int8)
    cells[d.sm0.T == 1] = -1
    cells[d.sm1.T == 1] = 1
    return validate_cnf(cells)


def cnf_to_decomposition_counted(f: CnfMatrix) -> tuple[Decomposition, OpCounter]:
    """Cell-by-cell conversion with an elementary-operation tally."""
    n, m = f.n, f.m
    cells = f.cells
    sm0 = np.zeros((n, m), dtype=np.uint8)
    sm1 = np.zeros((n, m), dtype=np.uint8)
    ops = OpCounter()
    for i in range(n):
        for j in range(m):
            ops.loop()
            v = cells[j, i]
            ops.recognitions += 1
            if v == 1:
                sm1[i, j] = 1
                ops.assignments += 1
            elif v == -1:
                sm0[i, j] = 1
                ops.assignments += 1
    return validate_decomposition(sm0, sm1), ops


def decomposition_to_cnf_counted(d: Decomposition) -> tuple[CnfMatrix, OpCounter]:
    """Cell-by-cell generation with an elementary-operation tally."""
    n, m = d.n, d.m
    sm0, sm1 = d.sm0, d.sm1
    cells = np.zeros((m, n), dtype=np.int8)
    ops = OpCounter()
    for j in range(m):
        for i in range(n):
            ops.loop()
            # one recognition inspects the (sm0, sm1) bit pair at this position
            ops.recognitions += 1
            if sm0[i, j] == 1:
                cells[j, i] = -1
                ops.assignments += 1
            elif sm1[i, j] == 1:
                cells[j, i] = 1
                ops.assignments += 1
    return validate_cnf(cells), ops
