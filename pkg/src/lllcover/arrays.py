"""Covering-array data model, text format, and the t-coverage verifier.

File format (UTF-8, LF line endings, trailing newline required)::

    q k n
    <row 1>
    ...
    <row k>

For ``q <= 10`` a row is a string of n digits; otherwise n space-separated
decimal symbols.

A word read from columns ``c_1 < ... < c_t`` is indexed as
``sum(s_i * q**(t - i))``; deficiencies are reported in lexicographic order of
the column tuple, then of the word index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from . import _kernels
from .combinatorics import binomial

__all__ = [
    "ArrayFormatError",
    "CoveringArray",
    "ColumnWeights",
    "DeficiencyWitness",
    "MAX_WORDS",
    "parse_array",
    "serialize_array",
    "read_array",
    "write_array",
    "column_weights",
    "verify_covering",
    "coverage_deficiencies",
    "iter_deficiencies",
    "scan_first_deficient",
]

MAX_WORDS = 1 << 31


class ArrayFormatError(ValueError):
    """Malformed array text; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def _cell_dtype(q: int):
    return np.uint8 if q <= 256 else np.int64


class CoveringArray:
    """Immutable k x n grid over the alphabet ``{0, ..., q-1}``."""

    __slots__ = ("_q", "_cells")

    def __init__(self, q: int, cells):
        if q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {q}")
        grid = np.asarray(cells)
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ValueError(f"cells must be a non-empty 2-d grid, got shape {grid.shape}")
        if grid.size and (grid.min() < 0 or grid.max() >= q):
            raise ValueError(f"cell values must lie in [0, {q})")
        grid = np.array(grid, dtype=_cell_dtype(q), order="C")
        grid.flags.writeable = False
        self._q = int(q)
        self._cells = grid

    @property
    def q(self) -> int:
        return self._q

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def k(self) -> int:
        return self._cells.shape[0]

    @property
    def n(self) -> int:
        return self._cells.shape[1]

    def __eq__(self, other):
        if not isinstance(other, CoveringArray):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.q, self.cells.shape, self.cells.tobytes()))

    def __repr__(self):
        return f"CoveringArray(q={self.q}, k={self.k}, n={self.n})"


@dataclass(frozen=True)
class DeficiencyWitness:
    columns: Tuple[int, ...]
    word: Tuple[int, ...]


@dataclass(frozen=True)
class ColumnWeights:
    counts: np.ndarray  # shape (n, q)
    equal_weight: bool


# --- text format -----------------------------------------------------------


def parse_array(text: Union[str, bytes]) -> CoveringArray:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ArrayFormatError(f"not valid UTF-8: {exc}") from None
    if not text.endswith("\n"):
        raise ArrayFormatError("missing trailing newline")
    lines = text[:-1].split("\n")

    header = lines[0].split(" ")
    if len(header) != 3 or not all(tok.isdigit() for tok in header):
        raise ArrayFormatError("header must be three integers 'q k n'", line=1)
    q, k, n = (int(tok) for tok in header)
    if q < 2:
        raise ArrayFormatError(f"alphabet size must be >= 2, got {q}", line=1)
    if k < 1 or n < 1:
        raise ArrayFormatError("k and n must be positive", line=1)
    if len(lines) - 1 != k:
        raise ArrayFormatError(
            f"header declares {k} rows, found {len(lines) - 1}", line=len(lines)
        )

    cells = np.empty((k, n), dtype=_cell_dtype(q))
    for r, row in enumerate(lines[1:]):
        lineno = r + 2
        tokens = list(row) if q <= 10 else row.split(" ")
        if len(tokens) != n:
            raise ArrayFormatError(f"expected {n} symbols, found {len(tokens)}", line=lineno)
        for c, tok in enumerate(tokens):
            if not tok.isdigit() or not tok.isascii():
                raise ArrayFormatError(f"invalid symbol {tok!r}", line=lineno, column=c + 1)
            value = int(tok)
            if value >= q:
                raise ArrayFormatError(
                    f"symbol {value} out of range for q={q} (row {r + 1}, column {c + 1})",
                    line=lineno,
                    column=c + 1,
                )
            cells[r, c] = value
    return CoveringArray(q, cells)


def serialize_array(arr: CoveringArray) -> str:
    out = [f"{arr.q} {arr.k} {arr.n}"]
    sep = "" if arr.q <= 10 else " "
    for row in arr.cells.tolist():
        out.append(sep.join(map(str, row)))
    return "\n".join(out) + "\n"


def read_array(path) -> CoveringArray:
    with open(path, "rb") as fh:
        return parse_array(fh.read())


def write_array(arr: CoveringArray, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_array(arr))


# --- analysis ---------------------------------------------------------------


def column_weights(arr: CoveringArray) -> ColumnWeights:
    counts = np.stack(
        [np.bincount(col, minlength=arr.q) for col in arr.cells.T.astype(np.int64)]
    )
    equal = arr.k % arr.q == 0 and bool((counts == arr.k // arr.q).all())
    return ColumnWeights(counts=counts, equal_weight=equal)


def _check_strength(arr: CoveringArray, t: int) -> int:
    if t < 1:
        raise ValueError(f"strength must be >= 1, got {t}")
    if t > arr.n:
        raise ValueError(f"strength t={t} exceeds column count n={arr.n}")
    words = arr.q**t
    if words > MAX_WORDS:
        raise ValueError(f"q**t = {words} exceeds the supported 2**31 words")
    return words


def _decode(index: int, q: int, t: int) -> Tuple[int, ...]:
    digits = [0] * t
    for i in range(t - 1, -1, -1):
        index, digits[i] = divmod(index, q)
    return tuple(digits)


def _missing_words(mask: np.ndarray, n_words: int) -> np.ndarray:
    bits = np.unpackbits(mask.view(np.uint8), bitorder="little")[:n_words]
    return np.flatnonzero(bits == 0)


def scan_first_deficient(
    arr: CoveringArray, t: int, start: Optional[Tuple[int, ...]] = None, kernels=None
) -> Tuple[Optional[Tuple[int, ...]], np.ndarray, int]:
    """First deficient subset at or after ``start``.

    Returns ``(columns, missing_word_indices, rows_scanned)``; ``columns`` is
    None when every remaining subset is covered. ``rows_scanned`` counts row
    visits and is at most ``C(n, t) * k``.
    """
    n_words = _check_strength(arr, t)
    kern = kernels or _kernels.backend
    combo = np.arange(t, dtype=np.int64) if start is None else np.array(start, dtype=np.int64)
    mask = np.zeros((n_words + 63) // 64, dtype=np.uint64)
    found, ops = kern.first_deficient(arr.cells, arr.q, t, combo, mask)
    if not found:
        return None, np.empty(0, dtype=np.int64), ops
    return tuple(int(c) for c in combo), _missing_words(mask, n_words), ops


def _next_combination(combo: Tuple[int, ...], n: int) -> Optional[Tuple[int, ...]]:
    c = list(combo)
    t = len(c)
    i = t - 1
    while i >= 0 and c[i] == n - t + i:
        i -= 1
    if i < 0:
        return None
    c[i] += 1
    for j in range(i + 1, t):
        c[j] = c[j - 1] + 1
    return tuple(c)


def iter_deficiencies(arr: CoveringArray, t: int, kernels=None) -> Iterator[DeficiencyWitness]:
    """Every (subset, missing word) pair, lexicographically."""
    start: Optional[Tuple[int, ...]] = None
    while True:
        cols, missing, _ = scan_first_deficient(arr, t, start, kernels)
        if cols is None:
            return
        for w in missing.tolist():
            yield DeficiencyWitness(cols, _decode(w, arr.q, t))
        start = _next_combination(cols, arr.n)
        if start is None:
            return


def verify_covering(arr: CoveringArray, t: int, kernels=None) -> Optional[DeficiencyWitness]:
    """None if every t-subset of columns shows all q**t words, else the first gap."""
    return next(iter_deficiencies(arr, t, kernels), None)


def coverage_deficiencies(
    arr: CoveringArray, t: int, limit: Optional[int] = None, kernels=None
) -> List[DeficiencyWitness]:
    """Up to ``limit`` witnesses (all of them when ``limit`` is None)."""
    if limit is not None and limit < 0:
        raise ValueError("limit must be non-negative")
    out: List[DeficiencyWitness] = []
    if limit == 0:
        _check_strength(arr, t)
        return out
    for w in iter_deficiencies(arr, t, kernels):
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


def worst_case_ops(arr: CoveringArray, t: int) -> int:
    return binomial(arr.n, t) * arr.k
