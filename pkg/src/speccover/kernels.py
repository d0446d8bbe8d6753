"""Hot enumeration kernels with numba and pure-numpy backends.

The only operations that scale with 2**n live here: scanning a block of
candidate assignments against a clause matrix, and scanning candidate
selector tuples against a decomposition.  Both exist twice, as an njit
loop and as a vectorized numpy fallback; ``SPECCOVER_BACKEND`` picks one
("numba", "numpy", or "auto" / unset for numba-when-available).  The two
backends are bit-for-bit equivalent and the benchmark under benchmarks/
compares their throughput.

Encoding: an assignment (or selector tuple) of width n is the integer with
position 1 as the most significant bit.  Clause j is condensed into a
positive-literal mask and a negative-literal mask; a decomposition row is
packed into ceil(m/64) words, element j at bit (j-1) % 64 of word
(j-1) // 64.  Packing caps the usable width at 64 variables, far above the
enumeration guard.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but stay importable
    _HAVE_NUMBA = False

__all__ = [
    "active_backend",
    "clause_masks",
    "pack_rows",
    "cnf_scan",
    "cover_scan",
    "candidate_chunks",
]

_CHUNK = 1 << 16


def active_backend() -> str:
    """Resolve the backend name from SPECCOVER_BACKEND."""
    choice = os.environ.get("SPECCOVER_BACKEND", "auto").strip().lower() or "auto"
    if choice == "auto":
        return "numba" if _HAVE_NUMBA else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("SPECCOVER_BACKEND=numba but numba is not importable")
        return "numba"
    raise ValueError(f"SPECCOVER_BACKEND must be 'numba', 'numpy' or 'auto', got {choice!r}")


def clause_masks(cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-clause bit masks of positive and negative literals.

    Bit (n-1-i) of the masks corresponds to variable i+1, matching the
    integer encoding of assignments.
    """
    m, n = cells.shape
    if n > 64:
        raise ValueError(f"mask kernels support at most 64 variables, got {n}")
    weights = (np.uint64(1) << np.arange(n - 1, -1, -1, dtype=np.uint64))
    pos = ((cells == 1) * weights).sum(axis=1, dtype=np.uint64)
    neg = ((cells == -1) * weights).sum(axis=1, dtype=np.uint64)
    return pos, neg


def pack_rows(sm0: np.ndarray, sm1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pack both membership matrices into (n, 2, words) uint64 rows plus the
    all-elements mask per word."""
    n, m = sm0.shape
    words = (m + 63) // 64
    masks = np.zeros((n, 2, words), dtype=np.uint64)
    for j in range(m):
        w, b = divmod(j, 64)
        bit = np.uint64(1) << np.uint64(b)
        masks[:, 0, w] |= np.where(sm0[:, j] == 1, bit, np.uint64(0))
        masks[:, 1, w] |= np.where(sm1[:, j] == 1, bit, np.uint64(0))
    full = np.zeros(words, dtype=np.uint64)
    for j in range(m):
        w, b = divmod(j, 64)
        full[w] |= np.uint64(1) << np.uint64(b)
    return masks, full


def candidate_chunks(total: int, chunk: int = _CHUNK):
    """Yield ascending uint64 index blocks covering range(total)."""
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        yield np.arange(start, stop, dtype=np.uint64)
        start = stop


def _cnf_scan_numpy(pos: np.ndarray, neg: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    ok = np.ones(candidates.shape, dtype=np.bool_)
    for j in range(pos.size):
        p, q = pos[j], neg[j]
        # clause falsified iff no positive bit set and every negative bit set
        ok &= ((candidates & p) != 0) | ((candidates & q) != q)
    return ok


def _cover_scan_numpy(masks: np.ndarray, full: np.ndarray, n: int,
                      candidates: np.ndarray) -> np.ndarray:
    acc = np.zeros((candidates.size, full.size), dtype=np.uint64)
    for i in range(n):
        bits = ((candidates >> np.uint64(n - 1 - i)) & np.uint64(1)).astype(np.intp)
        acc |= masks[i, bits, :]
    return (acc == full).all(axis=1)


if _HAVE_NUMBA:

    @njit(cache=True)
    def _cnf_scan_numba(pos, neg, candidates, out):  # pragma: no cover - compiled
        for k in range(candidates.size):
            a = candidates[k]
            sat = True
            for j in range(pos.size):
                if (a & pos[j]) == 0 and (a & neg[j]) == neg[j]:
                    sat = False
                    break
            out[k] = sat

    @njit(cache=True)
    def _cover_scan_numba(masks, full, n, candidates, out):  # pragma: no cover - compiled
        words = full.size
        for k in range(candidates.size):
            t = candidates[k]
            covered = True
            for w in range(words):
                acc = np.uint64(0)
                for i in range(n):
                    bit = (t >> np.uint64(n - 1 - i)) & np.uint64(1)
                    acc |= masks[i, np.intp(bit), w]
                if acc != full[w]:
                    covered = False
                    break
            out[k] = covered


def cnf_scan(pos: np.ndarray, neg: np.ndarray, candidates: np.ndarray,
             backend: str | None = None) -> np.ndarray:
    """Boolean satisfaction flags for each candidate assignment."""
    backend = backend or active_backend()
    if backend == "numpy":
        return _cnf_scan_numpy(pos, neg, candidates)
    out = np.empty(candidates.size, dtype=np.bool_)
    _cnf_scan_numba(pos, neg, candidates, out)
    return out


def cover_scan(masks: np.ndarray, full: np.ndarray, n: int, candidates: np.ndarray,
               backend: str | None = None) -> np.ndarray:
    """Boolean covering flags for each candidate selector tuple."""
    backend = backend or active_backend()
    if backend == "numpy":
        return _cover_scan_numpy(masks, full, n, candidates)
    out = np.empty(candidates.size, dtype=np.bool_)
    _cover_scan_numba(masks, full, n, candidates, out)
    return out
