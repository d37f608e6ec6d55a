"""Toeplitz first rows and their nonzero-offset abstraction.

A symmetric Toeplitz matrix of order ``n`` is fully described by its first
row ``[a_0, ..., a_{n-1}]``: entry ``(i, j)`` equals ``a_{|i-j|}``.  Whether
two positions interact depends only on which offsets ``i >= 1`` carry a
nonzero value, so the fast path converts a row to its :class:`OffsetSet`
up front and never materialises the matrix.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FirstRow",
    "OffsetSet",
    "offsets_from_row",
    "row_from_offsets",
    "toeplitz_entry",
]


class FirstRow:
    """First row of a symmetric Toeplitz matrix of order ``n >= 1``.

    Entries are held as a read-only float64 vector; index ``i`` is the
    constant value of the ``i``-th diagonal.  Zero tests are exact float
    comparison; callers that want a tolerance should clean their input
    before constructing the row.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[float] | np.ndarray) -> None:
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"first row must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("first row must contain at least one entry")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def n(self) -> int:
        return self.entries.size

    def __len__(self) -> int:
        return self.entries.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FirstRow):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"FirstRow({self.entries.tolist()!r})"


class OffsetSet:
    """Strictly increasing offsets in ``[1, n-1]``, possibly empty.

    For a row this is the set of diagonals ``i >= 1`` with a nonzero entry.
    The diagonal ``a_0`` never appears: loops do not affect which vertices
    of the associated graph are connected.
    """

    __slots__ = ("n", "offsets")

    def __init__(self, n: int, offsets: Iterable[int] | np.ndarray) -> None:
        if n < 1:
            raise ValueError(f"order must be at least 1, got {n}")
        arr = np.array(list(offsets) if not isinstance(offsets, np.ndarray) else offsets,
                       dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("offsets must be one-dimensional")
        if arr.size:
            if arr[0] < 1 or arr[-1] > n - 1:
                raise ValueError(f"offsets must lie in [1, {n - 1}], got {arr.tolist()}")
            if np.any(np.diff(arr) <= 0):
                raise ValueError("offsets must be strictly increasing")
        arr.setflags(write=False)
        self.n = int(n)
        self.offsets = arr

    def __len__(self) -> int:
        return self.offsets.size

    def __iter__(self):
        return iter(self.offsets.tolist())

    def __contains__(self, s: int) -> bool:
        i = int(np.searchsorted(self.offsets, s))
        return i < self.offsets.size and self.offsets[i] == s

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OffsetSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.offsets, other.offsets)

    def __repr__(self) -> str:
        return f"OffsetSet(n={self.n}, offsets={self.offsets.tolist()!r})"


def offsets_from_row(row: FirstRow) -> OffsetSet:
    """Extract the nonzero offsets ``{i >= 1 : a_i != 0}`` of a first row.

    ``a_0`` is excluded regardless of its value.
    """
    offsets = np.flatnonzero(row.entries[1:] != 0.0).astype(np.int64) + 1
    return OffsetSet(row.n, offsets)


def row_from_offsets(n: int, offsets: Iterable[int], value: float = 1.0,
                     diagonal: float = 0.0) -> FirstRow:
    """Build the boolean-style first row with ``value`` at each offset."""
    entries = np.zeros(n, dtype=np.float64)
    entries[0] = diagonal
    idx = np.asarray(list(offsets), dtype=np.int64)
    if idx.size:
        if idx.min() < 1 or idx.max() > n - 1:
            raise ValueError(f"offsets must lie in [1, {n - 1}]")
        entries[idx] = value
    return FirstRow(entries)


def toeplitz_entry(row: FirstRow, i: int, j: int) -> float:
    """Entry ``(i, j)`` of the matrix described by ``row``, 1-based indices."""
    n = row.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"indices ({i}, {j}) out of range for order {n}")
    return float(row.entries[abs(i - j)])
