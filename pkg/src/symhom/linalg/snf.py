"""Smith normal form and rank of sparse integer matrices."""

from __future__ import annotations

import logging

import numpy as np

from . import _kernels
from .elimination import divisor_chain, eliminate
from .sparse import SparseIntMatrix

log = logging.getLogger(__name__)


def _csc(m: SparseIntMatrix):
    lengths = [len(c) for c in m.columns]
    indptr = np.zeros(m.cols + 1, np.int64)
    np.cumsum(lengths, out=indptr[1:])
    indices = np.fromiter((r for col in m.columns for r, _ in col), np.int64, indptr[-1])
    data = np.fromiter((v for col in m.columns for _, v in col), np.int64, indptr[-1])
    return indptr, indices, data


def _fits_int64(m: SparseIntMatrix) -> bool:
    lim = _kernels.DEFAULT_LIMIT
    return all(-lim <= v <= lim for col in m.columns for _, v in col)


def _stage_one(m: SparseIntMatrix, kernel: str | None) -> _kernels.Reduction | None:
    """Unit pivots in int64, or None when the kernel cannot be used."""
    if m.nnz == 0 or not _fits_int64(m):
        return None
    indptr, indices, data = _csc(m)
    res = _kernels.unit_reduce(m.rows, indptr, indices, data,
                               limit=_kernels.DEFAULT_LIMIT, kernel=kernel)
    if res.status != _kernels.OK:
        log.info("int64 kernel overflowed on %r; using exact arithmetic", m)
        return None
    return res


def smith_reduction(
    m: SparseIntMatrix, *, rank_only: bool = False, kernel: str | None = None,
    exact_only: bool = False,
) -> tuple[list[int], list[int]]:
    """Invariant factors plus the rows of a unimodular pivot block.

    The second value lists rows ``R`` for which some column set ``C`` makes
    ``m[R, C]`` invertible over the integers (empty when only the exact engine
    ran).
    """
    staged = None if exact_only else _stage_one(m, kernel)
    if staged is None:
        diag = eliminate(m.rows, m.columns, rank_only=rank_only)
        return ([1] * len(diag) if rank_only else divisor_chain(diag)), []
    rest = eliminate(m.rows, staged.residual, rank_only=rank_only) if staged.residual else []
    head = [1] * staged.pivots
    diag = head + ([1] * len(rest) if rank_only else divisor_chain(rest))
    return diag, staged.pivot_rows.tolist()


def smith_diagonal(
    m: SparseIntMatrix, *, rank_only: bool = False, kernel: str | None = None,
    exact_only: bool = False,
) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r`` of ``m``.

    With ``rank_only`` only the length of the result is meaningful.
    ``exact_only`` bypasses the int64 kernel.
    """
    return smith_reduction(m, rank_only=rank_only, kernel=kernel, exact_only=exact_only)[0]


def rank(m: SparseIntMatrix, **kw) -> int:
    return len(smith_diagonal(m, rank_only=True, **kw))


def smith_form(m: SparseIntMatrix, **kw) -> list[int]:
    """Full diagonal of the Smith form, padded with zeros to ``min(rows, cols)``."""
    d = smith_diagonal(m, **kw)
    return d + [0] * (min(m.rows, m.cols) - len(d))


def snf(m: SparseIntMatrix, **kw) -> tuple[list[int], int]:
    """``(diagonal, rank)``: nonzero invariant factors and their count."""
    d = smith_diagonal(m, **kw)
    return d, len(d)
