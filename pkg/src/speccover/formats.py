"""Text formats (DIMACS CNF, decomposition, trace) and random instances.

All three formats round-trip bit-exactly: emit produces the canonical form
and parse inverts it.  Canonical DIMACS lists one clause per line with
literals in ascending variable order; a decomposition file is the two 0/1
matrices as character rows separated by a blank line; a trace file is a
header with the start tuple followed by one step per line.
"""

from __future__ import annotations

import numpy as np

from .core import BoolTuple, CnfMatrix, Decomposition, validate_cnf, validate_decomposition
from .errors import ParseError, Tautology, TooLarge
from .transform import AddElem, ChangeOp, FlipPair, MoveElem, RemoveElem, Trace
from . import sat

__all__ = [
    "parse_dimacs",
    "emit_dimacs",
    "parse_decomposition",
    "emit_decomposition",
    "parse_trace",
    "emit_trace",
    "random_instance",
]


def parse_dimacs(text: str) -> CnfMatrix:
    """Parse DIMACS CNF text into a validated clause matrix.

    Comment lines are skipped, duplicate literals inside a clause collapse
    to one, and a clause holding both polarities of a variable is rejected
    (the signed matrix has one cell per clause/variable slot).  Clauses may
    span lines; each ends at its 0 terminator.
    """
    n = m = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed problem line {stripped!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {stripped!r}", lineno) from None
            if n < 1 or m < 1:
                raise ParseError(f"problem line needs n >= 1 and m >= 1, got {n}, {m}", lineno)
            continue
        if n is None:
            raise ParseError("clause data before the problem line", lineno)
        try:
            tokens = [int(tok) for tok in stripped.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {stripped!r}", lineno) from None
        for lit in tokens:
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > n:
                    raise ParseError(f"literal {lit} exceeds variable count {n}", lineno)
                current.append(lit)
    if n is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("last clause is not 0-terminated")
    if len(clauses) != m:
        raise ParseError(f"problem line declares {m} clauses, found {len(clauses)}")

    cells = np.zeros((m, n), dtype=np.int8)
    for j, clause in enumerate(clauses):
        seen: dict[int, int] = {}
        for lit in clause:
            var, sign = abs(lit), (1 if lit > 0 else -1)
            if seen.get(var, sign) != sign:
                raise Tautology(j + 1, var)
            seen[var] = sign
            cells[j, var - 1] = sign
    return validate_cnf(cells)


def emit_dimacs(f: CnfMatrix) -> str:
    """Canonical DIMACS text: header, then clauses in row order with
    literals ascending by variable."""
    lines = [f"p cnf {f.n} {f.m}"]
    for j in range(1, f.m + 1):
        lines.append(" ".join(str(lit) for lit in f.clause_literals(j)) + " 0")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> Decomposition:
    """Parse a decomposition file: ``p sdec n m`` and two character-matrix
    blocks separated by a blank line."""
    lines = text.splitlines()
    idx = 0
    header = None
    while idx < len(lines):
        stripped = lines[idx].strip()
        idx += 1
        if not stripped or stripped.startswith("c"):
            continue
        header = stripped
        break
    if header is None or not header.startswith("p"):
        raise ParseError("missing problem line")
    parts = header.split()
    if len(parts) != 4 or parts[1] != "sdec":
        raise ParseError(f"malformed problem line {header!r}")
    try:
        n, m = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError(f"malformed problem line {header!r}") from None
    if n < 1 or m < 1:
        raise ParseError(f"problem line needs n >= 1 and m >= 1, got {n}, {m}")

    rows = [ln.strip() for ln in lines[idx:]]
    blocks: list[list[str]] = [[]]
    for row in rows:
        if row == "":
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append(row)
    if blocks and not blocks[-1]:
        blocks.pop()
    if len(blocks) != 2:
        raise ParseError(f"expected two matrix blocks, found {len(blocks)}")

    def block_to_matrix(block: list[str], name: str) -> np.ndarray:
        if len(block) != n:
            raise ParseError(f"{name} has {len(block)} rows, expected {n}")
        out = np.zeros((n, m), dtype=np.uint8)
        for i, row in enumerate(block):
            if len(row) != m or any(ch not in "01" for ch in row):
                raise ParseError(f"{name} row {i + 1} must be {m} characters of 0/1, "
                                 f"got {row!r}")
            out[i] = [int(ch) for ch in row]
        return out

    return validate_decomposition(block_to_matrix(blocks[0], "sm0"),
                                  block_to_matrix(blocks[1], "sm1"))


def emit_decomposition(d: Decomposition) -> str:
    """Canonical decomposition text, inverse of :func:`parse_decomposition`."""
    lines = [f"p sdec {d.n} {d.m}"]
    lines += ["".join(str(int(v)) for v in row) for row in d.sm0]
    lines.append("")
    lines += ["".join(str(int(v)) for v in row) for row in d.sm1]
    return "\n".join(lines) + "\n"


_STEP_ARITY = {"RM": 3, "ADD": 3, "MV": 5, "FLIP": 1}


def parse_trace(text: str) -> Trace:
    """Parse a trace file: header ``p trace n m sigma=BITS`` plus one step
    per line (``RM i d e`` / ``ADD i d e`` / ``MV j g i d e`` / ``FLIP i``,
    1-based indices)."""
    n = m = None
    sigma = None
    steps: list[ChangeOp] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            parts = stripped.split()
            if len(parts) != 5 or parts[1] != "trace" or not parts[4].startswith("sigma="):
                raise ParseError(f"malformed problem line {stripped!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
                sigma = BoolTuple.from_string(parts[4][len("sigma="):])
            except Exception:
                raise ParseError(f"malformed problem line {stripped!r}", lineno) from None
            if len(sigma) != n:
                raise ParseError(f"sigma has {len(sigma)} bits, expected {n}", lineno)
            continue
        if n is None:
            raise ParseError("step data before the problem line", lineno)
        parts = stripped.split()
        kind, args = parts[0], parts[1:]
        if kind not in _STEP_ARITY:
            raise ParseError(f"unknown step kind {kind!r}", lineno)
        if len(args) != _STEP_ARITY[kind]:
            raise ParseError(f"{kind} expects {_STEP_ARITY[kind]} fields, "
                             f"got {len(args)}", lineno)
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"non-integer field in {stripped!r}", lineno) from None
        if kind == "RM":
            steps.append(RemoveElem(*nums))
        elif kind == "ADD":
            steps.append(AddElem(*nums))
        elif kind == "MV":
            steps.append(MoveElem(*nums))
        else:
            steps.append(FlipPair(nums[0]))
        op = steps[-1]
        pairs = [op.pair] if hasattr(op, "pair") else [op.src_pair, op.dst_pair]
        comps = [getattr(op, a) for a in ("comp", "src_comp", "dst_comp") if hasattr(op, a)]
        elems = [op.elem] if hasattr(op, "elem") else []
        if any(not 1 <= p <= n for p in pairs):
            raise ParseError(f"pair index out of range 1..{n} in {stripped!r}", lineno)
        if any(c not in (0, 1) for c in comps):
            raise ParseError(f"component selector must be 0 or 1 in {stripped!r}", lineno)
        if any(not 1 <= e <= m for e in elems):
            raise ParseError(f"element index out of range 1..{m} in {stripped!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    return Trace(n, m, sigma, tuple(steps))


def emit_trace(tr: Trace) -> str:
    """Canonical trace text, inverse of :func:`parse_trace`."""
    lines = [f"p trace {tr.n} {tr.m} sigma={tr.sigma}"]
    for op in tr.steps:
        if isinstance(op, RemoveElem):
            lines.append(f"RM {op.pair} {op.comp} {op.elem}")
        elif isinstance(op, AddElem):
            lines.append(f"ADD {op.pair} {op.comp} {op.elem}")
        elif isinstance(op, MoveElem):
            lines.append(f"MV {op.src_pair} {op.src_comp} {op.dst_pair} "
                         f"{op.dst_comp} {op.elem}")
        else:
            lines.append(f"FLIP {op.pair}")
    return "\n".join(lines) + "\n"


def random_instance(n: int, m: int, seed: int,
                    require_satisfiable: bool = False) -> CnfMatrix:
    """Deterministic random clause matrix with cells drawn from {-1, 0, +1}.

    All-zero rows and columns are redrawn until the matrix validates.  With
    ``require_satisfiable`` the whole matrix is redrawn until the oracle
    finds a satisfying assignment, so n must stay within the enumeration
    guard.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if require_satisfiable and n > sat.max_enum_vars():
        raise TooLarge(n, sat.max_enum_vars())
    rng = np.random.default_rng(seed)
    while True:
        cells = rng.integers(-1, 2, size=(m, n), dtype=np.int8)
        for _ in range(10_000):
            zero_rows = np.flatnonzero((cells != 0).sum(axis=1) == 0)
            for j in zero_rows:
                cells[j] = rng.integers(-1, 2, size=n, dtype=np.int8)
            zero_cols = np.flatnonzero((cells != 0).sum(axis=0) == 0)
            for i in zero_cols:
                cells[:, i] = rng.integers(-1, 2, size=m, dtype=np.int8)
            if not zero_rows.size and not zero_cols.size:
                break
        f = validate_cnf(cells)
        if not require_satisfiable or sat.satisfying_assignments(f):
            return f
