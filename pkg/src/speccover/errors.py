"""Exception hierarchy shared by all speccover modules.

Positions in error messages and attributes are 1-based throughout: rows,
columns, pair indices and element indices are reported the way the file
formats and the CLI print them.
"""

from __future__ import annotations


class SpecCoverError(Exception):
    """Base class for all speccover errors."""


class ValidationError(SpecCoverError):
    """A matrix or matrix pair violates a structural invariant."""


class BadEntry(ValidationError):
    def __init__(self, row: int, col: int, value: int):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry at row {row}, column {col} is {value}, expected -1, 0 or +1")


class EmptyClause(ValidationError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row} is all zeros (empty clause)")


class UnusedVariable(ValidationError):
    def __init__(self, col: int):
        self.col = col
        super().__init__(f"column {col} is all zeros (variable occurs in no clause)")


class Overlap(ValidationError):
    def __init__(self, pair: int, elem: int):
        self.pair, self.elem = pair, elem
        super().__init__(f"element {elem} is in both components of pair {pair}")


class EmptyPair(ValidationError):
    def __init__(self, pair: int):
        self.pair = pair
        super().__init__(f"both components of pair {pair} are empty")


class UncoveredElement(ValidationError):
    def __init__(self, elem: int):
        self.elem = elem
        super().__init__(f"element {elem} belongs to no subset")


class DimensionMismatch(SpecCoverError):
    """Operands do not share the dimensions an operation requires."""


class TooLarge(SpecCoverError):
    """Exhaustive enumeration was requested beyond the variable-count guard."""

    def __init__(self, n: int, limit: int):
        self.n, self.limit = n, limit
        super().__init__(f"n={n} exceeds the enumeration guard of {limit} variables "
                         f"(override with SPECCOVER_MAX_N)")


class NotACovering(SpecCoverError):
    """A tuple claimed to be a covering does not cover every element."""


class ParseError(SpecCoverError):
    """A text document could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class Tautology(ParseError):
    """A clause contains a variable in both polarities, which the signed
    clause matrix cannot represent."""

    def __init__(self, clause: int, var: int, line: int | None = None):
        self.clause, self.var = clause, var
        super().__init__(f"clause {clause} contains variable {var} in both polarities", line)


class InadmissibleChange(SpecCoverError):
    """A rewrite step violates one of its admissibility preconditions."""

    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(condition)


class InadmissibleStep(SpecCoverError):
    """Replay hit a step whose preconditions do not hold; carries the
    1-based step number and the violated condition."""

    def __init__(self, step: int, condition: str):
        self.step, self.condition = step, condition
        super().__init__(f"step {step}: {condition}")


class NotSatisfiedBy(SpecCoverError):
    """A function required to evaluate to 1 at a given tuple does not."""

    def __init__(self, which: str):
        self.which = which
        super().__init__(f"{which} is not satisfied by the given tuple")


class GenerationDeadlock(SpecCoverError):
    """A rewrite sequence between the two functions does not exist under
    the plain (non-extended) change rules.

    Only reachable for single-element sets: a pair whose selected subset is
    empty while the other component holds the whole set admits no legal
    repair, because removing its last element would empty the pair and no
    fresh element exists to add first.
    """
