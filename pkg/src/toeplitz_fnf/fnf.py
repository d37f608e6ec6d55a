"""Assemble the Frobenius normal form from a component labelling.

Each component of the graph attached to a symmetric Toeplitz first row is,
after relabelling its vertices ``n_1 < ... < n_k`` as ``1..k``, again the
graph of a symmetric Toeplitz matrix whose first row reads off the original
one at offsets ``n_l - n_1``.  Gathering those rows per component and
listing the vertices block by block yields a permutation under which the
full matrix becomes the direct sum of irreducible symmetric Toeplitz
blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FirstRow, offsets_from_row
from .recovery import ComponentIndexSequence, recover_cis
from .reduction import ReductionTrace, reduce

__all__ = [
    "BLOCK_ORDERS",
    "FnfBlock",
    "FnfResult",
    "extract_blocks",
    "permutation_from_cis",
    "compute_fnf",
]

#: Supported block orderings: ``canonical`` sorts blocks by decreasing size
#: (ties broken by smallest vertex label); ``discovered`` keeps the order in
#: which the labelling numbers the components.
BLOCK_ORDERS = ("canonical", "discovered")


@dataclass(frozen=True, eq=False)
class FnfBlock:
    """One irreducible diagonal block and the vertices it came from."""

    size: int
    first_row: np.ndarray
    vertices: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "first_row", np.asarray(self.first_row, dtype=np.float64))
        object.__setattr__(self, "vertices", np.asarray(self.vertices))
        if self.size < 1 or self.first_row.size != self.size or self.vertices.size != self.size:
            raise ValueError("block row and vertex list must both have the block size")
        self.first_row.setflags(write=False)
        self.vertices.setflags(write=False)

    @property
    def offsets(self) -> np.ndarray:
        """Nonzero offsets of the block's own first row."""
        return np.flatnonzero(self.first_row[1:] != 0.0).astype(np.int64) + 1


@dataclass(frozen=True, eq=False)
class FnfResult:
    """Full decomposition: labelling, blocks in output order, permutation.

    ``permutation[p]`` is the original (1-based) vertex placed at position
    ``p + 1``; gathering the original matrix at those indices on both axes
    produces the direct sum of the blocks, in order.  ``cis`` keeps the
    labels produced by the trace replay and is not renumbered when blocks
    are reordered.
    """

    n: int
    component_count: int
    cis: ComponentIndexSequence
    blocks: tuple[FnfBlock, ...]
    permutation: np.ndarray
    trace: ReductionTrace

    def __post_init__(self) -> None:
        if sum(b.size for b in self.blocks) != self.n:
            raise ValueError("block sizes must sum to the order")
        if len(self.blocks) != self.component_count:
            raise ValueError("one block per component expected")
        if self.permutation.size != self.n:
            raise ValueError("permutation must have length n")
        self.permutation.setflags(write=False)


def _group_by_label(cis: ComponentIndexSequence) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vertex positions grouped by label.

    Returns ``(order, bounds, anchors)``: ``order`` holds the 0-based
    positions sorted by label then by position, ``bounds`` delimits label
    ``k`` as ``order[bounds[k]:bounds[k+1]]``, and ``anchors[k]`` is the
    smallest position carrying label ``k + 1``.
    """
    dtype = cis.rho.dtype
    if cis.c == 1:
        return (np.arange(cis.n, dtype=dtype), np.array([0, cis.n]),
                np.zeros(1, dtype=dtype))
    counts = np.bincount(cis.rho, minlength=cis.c + 1)[1:]
    order = np.argsort(cis.rho, kind="stable").astype(dtype, copy=False)
    bounds = np.concatenate(([0], np.cumsum(counts)))
    anchors = order[bounds[:-1]]
    return order, bounds, anchors


def extract_blocks(cis: ComponentIndexSequence, row: FirstRow) -> list[FnfBlock]:
    """Read off each component's first row from the original one.

    Blocks come out in label order ``1..c``.  Within a component with
    vertices ``n_1 < ... < n_k``, position ``l`` of the block row holds the
    original entry at offset ``n_{l+1} - n_1``; in particular position 0
    carries the diagonal value ``a_0``.
    """
    if cis.n != row.n:
        raise ValueError(f"labelling order {cis.n} does not match row order {row.n}")
    order, bounds, anchors = _group_by_label(cis)
    counts = np.diff(bounds)
    rel = order - np.repeat(anchors, counts)
    values = row.entries[rel]
    blocks = []
    for k in range(cis.c):
        lo, hi = bounds[k], bounds[k + 1]
        blocks.append(FnfBlock(size=int(counts[k]),
                               first_row=values[lo:hi].copy(),
                               vertices=order[lo:hi] + 1))
    return blocks


def _block_sequence(cis: ComponentIndexSequence, bounds: np.ndarray, anchors: np.ndarray,
                    block_order: str) -> np.ndarray:
    if block_order == "discovered":
        return np.arange(cis.c)
    if block_order == "canonical":
        sizes = np.diff(bounds)
        return np.lexsort((anchors, -sizes))
    raise ValueError(f"unknown block order {block_order!r}; expected one of {BLOCK_ORDERS}")


def permutation_from_cis(cis: ComponentIndexSequence,
                         block_order: str = "canonical") -> np.ndarray:
    """Vertex sequence realising the block-diagonal permutation.

    Lists every block's vertices in increasing label order, block after
    block in the requested ordering.  Entry ``p`` is the original 1-based
    vertex placed at position ``p + 1``.
    """
    order, bounds, anchors = _group_by_label(cis)
    seq = _block_sequence(cis, bounds, anchors, block_order)
    parts = [order[bounds[k]:bounds[k + 1]] for k in seq]
    return np.concatenate(parts) + 1


def compute_fnf(row: FirstRow, block_order: str = "canonical") -> FnfResult:
    """Full pipeline from a first row to its Frobenius normal form.

    Runs offset extraction, the reduction loop, the trace replay, and block
    assembly; total work is linear in the order of the matrix.
    """
    offset_set = offsets_from_row(row)
    trace, count = reduce(offset_set.n, offset_set.offsets)
    cis = recover_cis(trace)

    if count == 1:
        # single block: the general grouping below degenerates to identity,
        # and the (read-only) input row doubles as the block row
        vertices = np.arange(1, row.n + 1, dtype=cis.rho.dtype)
        block = FnfBlock(size=row.n, first_row=row.entries, vertices=vertices)
        return FnfResult(n=row.n, component_count=1, cis=cis, blocks=(block,),
                         permutation=vertices, trace=trace)

    order, bounds, anchors = _group_by_label(cis)
    seq = _block_sequence(cis, bounds, anchors, block_order)

    counts = np.diff(bounds)
    rel = order - np.repeat(anchors, counts)
    values = row.entries[rel]

    blocks = []
    parts = []
    for k in seq:
        lo, hi = bounds[k], bounds[k + 1]
        vertices = order[lo:hi] + 1
        blocks.append(FnfBlock(size=int(counts[k]),
                               first_row=values[lo:hi].copy(),
                               vertices=vertices))
        parts.append(vertices)
    permutation = np.concatenate(parts)

    return FnfResult(n=row.n, component_count=count, cis=cis,
                     blocks=tuple(blocks), permutation=permutation, trace=trace)
