"""Domain types: signed clause matrices, subset-pair decompositions, bit tuples.

Two interchangeable concrete views of the same combinatorial object live
here.  A CNF function over n variables with m clauses is an m-by-n matrix
over {-1, 0, +1} (row = clause, column = variable, sign = polarity).  A
decomposition of an m-element set into n ordered subset pairs is a pair of
n-by-m 0/1 matrices: row i of ``sm0`` is the membership vector of the first
component of pair i, row i of ``sm1`` that of the second.

All values are immutable after construction and all operations on them are
pure, so they are safe to share across threads.  Indices in error messages
and public fields are 1-based; array access is plain 0-based numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    BadEntry,
    DimensionMismatch,
    EmptyClause,
    EmptyPair,
    Overlap,
    UncoveredElement,
    UnusedVariable,
    ValidationError,
)

__all__ = [
    "Universe",
    "BoolTuple",
    "CnfMatrix",
    "Decomposition",
    "CoveringWitness",
    "validate_cnf",
    "validate_decomposition",
    "data_length",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Universe:
    """The ground set: m elements identified by indices 1..m."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"universe must have at least one element, got m={self.m}")

    def indices(self) -> range:
        return range(1, self.m + 1)


class BoolTuple:
    """An immutable 0/1 tuple; doubles as a variable assignment and as the
    selector choosing one component from each subset pair.

    Ordering follows the numeric value with position 1 as the most
    significant bit, so ``BoolTuple.from_index(k, n)`` enumerates tuples in
    ascending order as k runs over 0..2**n - 1.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bt = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bt):
            raise ValidationError(f"tuple entries must be 0 or 1, got {bt}")
        object.__setattr__(self, "bits", bt)

    @classmethod
    def from_index(cls, index: int, n: int) -> "BoolTuple":
        if not 0 <= index < (1 << n):
            raise ValueError(f"index {index} out of range for {n} bits")
        return cls((index >> (n - 1 - i)) & 1 for i in range(n))

    @classmethod
    def from_string(cls, s: str) -> "BoolTuple":
        if not s or any(c not in "01" for c in s):
            raise ValidationError(f"expected a nonempty string of 0/1 characters, got {s!r}")
        return cls(int(c) for c in s)

    def to_index(self) -> int:
        k = 0
        for b in self.bits:
            k = (k << 1) | b
        return k

    def bit(self, i: int) -> int:
        """Bit at 1-based position i."""
        return self.bits[i - 1]

    def with_flipped(self, i: int) -> "BoolTuple":
        """Copy with the 1-based position i complemented."""
        return BoolTuple(b ^ 1 if k == i - 1 else b for k, b in enumerate(self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolTuple) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __repr__(self) -> str:
        return f"BoolTuple({str(self)!r})"


@dataclass(frozen=True, eq=False)
class CnfMatrix:
    """A CNF function as an m-by-n signed matrix.

    cells[j, i] is -1 / 0 / +1 when clause j+1 contains the negative
    literal of variable i+1, neither literal, or the positive literal.
    A clause cannot hold both polarities of one variable: one cell stores
    one value.  Construct through :func:`validate_cnf`.
    """

    cells: np.ndarray

    @property
    def m(self) -> int:
        """Clause count."""
        return self.cells.shape[0]

    @property
    def n(self) -> int:
        """Variable count."""
        return self.cells.shape[1]

    def clause_literals(self, j: int) -> list[int]:
        """Signed DIMACS-style literals of 1-based clause j, ascending by variable."""
        row = self.cells[j - 1]
        return [int(sgn) * (i + 1) for i, sgn in enumerate(row) if sgn != 0]

    def __eq__(self, other) -> bool:
        return isinstance(other, CnfMatrix) and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash(self.cells.tobytes() + bytes(self.cells.shape))

    def __repr__(self) -> str:
        return f"CnfMatrix({self.cells.tolist()!r})"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """An ordered list of n subset pairs over an m-element set, as two
    n-by-m 0/1 membership matrices.

    Validity means: the two components of each pair are disjoint (no column
    set in both rows i), no pair is empty on both sides, and every element
    appears somewhere.  Construct through :func:`validate_decomposition`.
    """

    sm0: np.ndarray
    sm1: np.ndarray

    @property
    def n(self) -> int:
        """Pair count."""
        return self.sm0.shape[0]

    @property
    def m(self) -> int:
        """Element count."""
        return self.sm0.shape[1]

    @property
    def universe(self) -> Universe:
        return Universe(self.m)

    def side(self, alpha: int) -> np.ndarray:
        """The full membership matrix of the alpha components, alpha in {0, 1}."""
        return self.sm1 if alpha else self.sm0

    def row(self, i: int, alpha: int) -> np.ndarray:
        """Membership vector of component alpha of 1-based pair i."""
        return self.side(alpha)[i - 1]

    def members(self, i: int, alpha: int) -> list[int]:
        """1-based element indices of component alpha of pair i."""
        return [int(j) + 1 for j in np.flatnonzero(self.row(i, alpha))]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Decomposition)
                and np.array_equal(self.sm0, other.sm0)
                and np.array_equal(self.sm1, other.sm1))

    def __hash__(self) -> int:
        return hash(self.sm0.tobytes() + self.sm1.tobytes() + bytes(self.sm0.shape))

    def __repr__(self) -> str:
        return f"Decomposition(sm0={self.sm0.tolist()!r}, sm1={self.sm1.tolist()!r})"


@dataclass(frozen=True)
class CoveringWitness:
    """A selector tuple whose chosen components jointly cover the set.

    Only stores the tuple; whether it actually covers a given decomposition
    is checked where the pairing matters (see :func:`covering.is_covering`
    and the factories that hand witnesses out).
    """

    tuple: BoolTuple = field()

    def selected_row(self, d: Decomposition, i: int) -> np.ndarray:
        return d.row(i, self.tuple.bit(i))

    def __len__(self) -> int:
        return len(self.tuple)


def _as_matrix(cells, dtype) -> np.ndarray:
    a = np.asarray(cells)
    if a.ndim != 2 or a.size == 0:
        raise ValidationError(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    return a.astype(dtype)


def validate_cnf(cells) -> CnfMatrix:
    """Check a signed integer matrix and wrap it as a CnfMatrix.

    Raises BadEntry for a value outside {-1, 0, +1}, EmptyClause for an
    all-zero row and UnusedVariable for an all-zero column, reporting the
    first offending 1-based position.
    """
    a = _as_matrix(cells, np.int8)
    raw = np.asarray(cells)
    bad = (raw != -1) & (raw != 0) & (raw != 1)
    if bad.any():
        j, i = np.argwhere(bad)[0]
        raise BadEntry(int(j) + 1, int(i) + 1, int(raw[j, i]))
    nonzero = a != 0
    row_ok = nonzero.any(axis=1)
    if not row_ok.all():
        raise EmptyClause(int(np.flatnonzero(~row_ok)[0]) + 1)
    col_ok = nonzero.any(axis=0)
    if not col_ok.all():
        raise UnusedVariable(int(np.flatnonzero(~col_ok)[0]) + 1)
    return CnfMatrix(_frozen(a))


def validate_decomposition(sm0, sm1) -> Decomposition:
    """Check a pair of 0/1 matrices and wrap them as a Decomposition.

    Raises Overlap when an element sits in both components of a pair,
    EmptyPair when a pair has no elements at all, and UncoveredElement when
    an element belongs to no component, reporting 1-based positions.
    """
    a0 = _as_matrix(sm0, np.uint8)
    a1 = _as_matrix(sm1, np.uint8)
    if a0.shape != a1.shape:
        raise DimensionMismatch(
            f"component matrices differ in shape: {a0.shape} vs {a1.shape}")
    for name, raw in (("sm0", np.asarray(sm0)), ("sm1", np.asarray(sm1))):
        if ((raw != 0) & (raw != 1)).any():
            raise ValidationError(f"{name} must be a 0/1 matrix")
    both = (a0 == 1) & (a1 == 1)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise Overlap(int(i) + 1, int(j) + 1)
    occupied = (a0 == 1) | (a1 == 1)
    pair_ok = occupied.any(axis=1)
    if not pair_ok.all():
        raise EmptyPair(int(np.flatnonzero(~pair_ok)[0]) + 1)
    elem_ok = occupied.any(axis=0)
    if not elem_ok.all():
        raise UncoveredElement(int(np.flatnonzero(~elem_ok)[0]) + 1)
    return Decomposition(_frozen(a0), _frozen(a1))


def data_length(x: CnfMatrix | Decomposition) -> int:
    """Input-data size: literal occurrences of a CNF matrix, or total
    membership count of a decomposition.  The two agree for a matrix and
    its derived decomposition, since each literal maps to exactly one 1."""
    if isinstance(x, CnfMatrix):
        return int(np.count_nonzero(x.cells))
    if isinstance(x, Decomposition):
        return int(x.sm0.sum()) + int(x.sm1.sum())
    raise TypeError(f"expected CnfMatrix or Decomposition, got {type(x).__name__}")
