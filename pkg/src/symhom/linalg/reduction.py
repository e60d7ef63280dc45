"""Homology by eliminating unit pairs across a whole chain complex.

A unit entry ``d_k[r, c]`` (``c`` in ``C_{k+1}``, ``r`` in ``C_k``) can be
cancelled: the complex without ``c`` and ``r``, with ``d_k`` replaced by its
Schur complement, is chain homotopy equivalent to the original.  Row ``c``
leaves the map out of ``C_{k+2}`` and column ``r`` leaves the map into
``C_{k-1}``.  Working on every differential in turn keeps each one small,
which bounds fill-in far better than finishing one matrix at a time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .elimination import divisor_chain, eliminate
from .snf import _csc
from .sparse import SparseIntMatrix

log = logging.getLogger(__name__)

# first budget, as a multiple of a differential's current entry count
START_FACTOR = 2
# budgets never go below this many live entries
MIN_BUDGET = 1 << 16
# a map whose active block is at least this full is finished densely ...
DENSE_FILL = 0.02
# ... provided the block fits in this many bytes
DENSE_MAX_BYTES = 1 << 30
# largest non-unit remainder handed to the Python-integer engine
EXACT_MAX_ENTRIES = 1 << 20


class ReductionTooLarge(MemoryError):
    """The exact remainder of a map is beyond what Python integers can finish."""


@dataclass
class _Map:
    rows: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    done: bool = False
    exact: bool = False  # kernel overflowed; finish with Python integers

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    @classmethod
    def of(cls, m: SparseIntMatrix) -> "_Map":
        return cls(m.rows, *_csc(m))

    def drop_rows(self, dead: np.ndarray) -> None:
        if not dead.any() or not self.nnz:
            return
        keep = ~dead[self.indices]
        self._filter(keep)

    def drop_cols(self, dead: np.ndarray) -> None:
        if not dead.any() or not self.nnz:
            return
        self._filter(~dead[self._col_of()])

    def _col_of(self) -> np.ndarray:
        return np.repeat(np.arange(self.indptr.size - 1), np.diff(self.indptr))

    def _filter(self, keep: np.ndarray) -> None:
        col_of = self._col_of()
        counts = np.bincount(col_of[keep], minlength=self.indptr.size - 1)
        self.indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.indices = self.indices[keep]
        self.data = self.data[keep]

    def active(self) -> tuple[np.ndarray, np.ndarray]:
        rows = np.unique(self.indices)
        cols = np.flatnonzero(np.diff(self.indptr))
        return rows, cols

    def to_dense(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        out = np.zeros((rows.size, cols.size), np.int64)
        where = np.searchsorted(rows, self.indices)
        col_pos = np.searchsorted(cols, self._col_of())
        out[where, col_pos] = self.data
        return out

    def set_dense(self, rows: np.ndarray, cols: np.ndarray, block: np.ndarray) -> None:
        r, c = np.nonzero(block.T)  # column-major order
        counts = np.bincount(cols[r], minlength=self.indptr.size - 1)
        self.indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.indices = rows[c].astype(np.int64)
        self.data = block.T[r, c].astype(np.int64)

    def columns(self) -> list[list[tuple[int, int]]]:
        out = []
        for j in range(self.indptr.size - 1):
            a, b = int(self.indptr[j]), int(self.indptr[j + 1])
            if a < b:
                out.append(list(zip(self.indices[a:b].tolist(), self.data[a:b].tolist())))
        return out


def interleaved_diagonals(
    differentials: Sequence[SparseIntMatrix], *, kernel: str | None = None,
    start_factor: float = START_FACTOR, required: Sequence[int] | None = None,
) -> list[list[int] | None]:
    """Invariant factors of every differential, cancelled units included.

    ``differentials[i]`` maps ``C_{i+1}`` to ``C_i``.  The result is the
    nonzero Smith diagonal of each map, found without ever finishing one map
    on its own.  With ``required`` only those maps are finished; the others
    still shed unit pairs that help, and come back as ``None``.
    """
    maps = [_Map.of(d) for d in differentials]
    need = set(range(len(maps)) if required is None else required)
    dims = [maps[0].rows] + [m.indptr.size - 1 for m in maps] if maps else []
    units = [0] * len(maps)
    extra: list[list[int]] = [[] for _ in maps]
    factor = start_factor
    while not all(maps[k].done for k in need):
        progress = False
        for k in reversed(range(len(maps))):
            m = maps[k]
            if m.done:
                continue
            if not m.nnz:
                m.done = True
                continue
            rows, cols = m.active()
            if (k in need and m.nnz >= DENSE_FILL * rows.size * cols.size
                    and 8 * rows.size * cols.size <= DENSE_MAX_BYTES):
                status, prow, pcol, diag, block = _kernels.dense_reduce(
                    m.to_dense(rows, cols), kernel=kernel)
                m.set_dense(rows[np.setdiff1d(np.arange(rows.size), prow)],
                            cols[np.setdiff1d(np.arange(cols.size), pcol)], block)
                extra[k] = diag.tolist()
                m.done = True
                # a dense stop means entry growth: finish with Python integers
                m.exact = status != _kernels.OK
                piv_rows, piv_cols = rows[prow], cols[pcol]
                log.debug("map %d dense %dx%d, status %d", k, rows.size, cols.size, status)
            else:
                budget = 0 if factor is None else max(int(factor * m.nnz), MIN_BUDGET)
                res = _kernels.unit_reduce(m.rows, m.indptr, m.indices, m.data,
                                           kernel=kernel, max_live=budget)
                if res.status == _kernels.OVERFLOW:
                    log.info("int64 kernel overflowed on map %d; using exact arithmetic", k)
                    m.done = m.exact = True
                    continue
                m.done = res.status == _kernels.OK
                piv_rows, piv_cols = res.pivot_rows, res.pivot_cols
                if piv_rows.size:
                    m.indptr, m.indices, m.data = res.csc
            if not piv_rows.size:
                continue
            progress = True
            units[k] += piv_rows.size
            dead_rows = np.zeros(dims[k], np.bool_)
            dead_rows[piv_rows] = True
            dead_cols = np.zeros(dims[k + 1], np.bool_)
            dead_cols[piv_cols] = True
            if k > 0:
                maps[k - 1].drop_cols(dead_rows)
            if k + 1 < len(maps):
                maps[k + 1].drop_rows(dead_cols)
            log.debug("map %d: %d unit pairs, %d entries left", k, piv_rows.size, m.nnz)
        if not progress and factor is not None:
            factor *= 2
            if factor > 1 << 12:
                factor = None
    diags: list[list[int] | None] = []
    for k, m in enumerate(maps):
        if k not in need:
            diags.append(None)
            continue
        if m.nnz > EXACT_MAX_ENTRIES:
            raise ReductionTooLarge(
                f"map {k}: {m.nnz} entries left after unit elimination, with values up to "
                f"{int(np.abs(m.data).max())}; exact finishing is out of reach"
            )
        rest = eliminate(m.rows, m.columns()) if m.nnz else []
        diags.append(divisor_chain([1] * units[k] + extra[k] + rest))
    return diags
