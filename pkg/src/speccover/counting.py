"""Elementary-operation accounting for the linear-time bounds.

Four operation categories are tallied: assignments (stores into an output
cell or scalar), additions/subtractions, comparisons, and literal
recognitions (one inspection of the literal content at a clause/variable
position, whether it is stored as one signed cell or as the 0/1 bit pair of
a decomposition).

Convention used by every counted routine in this package:

* innermost per-cell loop control costs 1 addition + 1 comparison per
  iteration; enclosing loop bookkeeping is not charged;
* inspecting one cell (or one membership bit pair) costs 1 recognition;
* each executed store costs 1 assignment; outputs are zero-initialized, so
  writing the default never costs anything;
* swapping the two components of a pair is a constant-cost reorder of row
  references (3 assignments), never an element-by-element copy.

Under this convention each conversion direction costs at most 4*n*m and a
full rewrite-generation pass at most 16*n*m; both bounds are asserted by
the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["OpCounter"]


@dataclass
class OpCounter:
    """Mutable tally of the four elementary-operation categories."""

    assignments: int = 0
    additions: int = 0
    comparisons: int = 0
    recognitions: int = 0

    @property
    def total(self) -> int:
        return self.assignments + self.additions + self.comparisons + self.recognitions

    def loop(self, iterations: int = 1) -> None:
        """Charge innermost loop control for the given iteration count."""
        self.additions += iterations
        self.comparisons += iterations

    def merge(self, other: "OpCounter") -> None:
        self.assignments += other.assignments
        self.additions += other.additions
        self.comparisons += other.comparisons
        self.recognitions += other.recognitions

    def as_dict(self) -> dict[str, int]:
        return {
            "assignments": self.assignments,
            "additions": self.additions,
            "comparisons": self.comparisons,
            "recognitions": self.recognitions,
            "total": self.total,
        }
