"""Unit-pivot sparse elimination in int64, the hot loop of the Smith-form engine.

Right-looking Gaussian elimination restricted to pivots equal to ``+-1``.
Pivots are picked among the lowest-count columns by Markowitz cost
``(row_count - 1) * (col_count - 1)``, ties to the lowest row, then the lowest
column.  Columns left without any unit entry are parked until an update
touches them again.  When no unit pivot remains, the surviving submatrix is
the residual:

    SNF(M) = 1 ^ (#pivots)  +  SNF(residual)

because every pivot is a unit and only integral row operations are used.
Entries are bounded by ``limit``; crossing it aborts with ``OVERFLOW`` so the
caller can redo the work with Python integers.

The same source runs compiled (``SYMHOM_KERNEL=numba``, the default) or
interpreted over numpy arrays (``SYMHOM_KERNEL=numpy``).
"""

from __future__ import annotations

import os
import types
from dataclasses import dataclass

import numpy as np

OK = 0
OVERFLOW = 1
# stopped early at the live-entry budget; the residual is still exact
PARTIAL = 2
# keeps every product f * value below 2**63
DEFAULT_LIMIT = (1 << 31) - 1
# columns examined per pivot search
SEARCH_WIDTH = 4

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@dataclass
class Reduction:
    status: int
    pivot_rows: np.ndarray  # row of each unit pivot, in elimination order
    pivot_cols: np.ndarray
    csc: tuple | None  # surviving entries (indptr, indices, data), original numbering

    @property
    def pivots(self) -> int:
        return int(self.pivot_rows.size)

    @property
    def residual(self) -> list | None:
        """Non-empty residual columns as sorted ``(row, value)`` lists."""
        if self.csc is None:
            return None
        indptr, indices, data = self.csc
        out = []
        for j in range(indptr.size - 1):
            a, b = int(indptr[j]), int(indptr[j + 1])
            if a < b:
                out.append(list(zip(indices[a:b].tolist(), data[a:b].tolist())))
        return out


def kernel_name() -> str:
    name = os.environ.get("SYMHOM_KERNEL", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"SYMHOM_KERNEL must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


@njit(cache=True)
def _grow(arr, need):
    if need <= arr.size:
        return arr
    cap = max(arr.size * 2, 16)
    while cap < need:
        cap *= 2
    out = np.empty(cap, arr.dtype)
    out[: arr.size] = arr
    return out


@njit(cache=True)
def _heap_push(hk, hc, n, key, col):
    i = n
    hk[i] = key
    hc[i] = col
    while i > 0:
        p = (i - 1) >> 1
        if hk[p] < hk[i] or (hk[p] == hk[i] and hc[p] <= hc[i]):
            break
        hk[p], hk[i] = hk[i], hk[p]
        hc[p], hc[i] = hc[i], hc[p]
        i = p
    return n + 1


@njit(cache=True)
def _heap_pop(hk, hc, n):
    key = hk[0]
    col = hc[0]
    n -= 1
    hk[0] = hk[n]
    hc[0] = hc[n]
    i = 0
    while True:
        a = 2 * i + 1
        if a >= n:
            break
        m = a
        b = a + 1
        if b < n and (hk[b] < hk[a] or (hk[b] == hk[a] and hc[b] < hc[a])):
            m = b
        if hk[i] < hk[m] or (hk[i] == hk[m] and hc[i] <= hc[m]):
            break
        hk[i], hk[m] = hk[m], hk[i]
        hc[i], hc[m] = hc[m], hc[i]
        i = m
    return key, col, n


@njit(cache=True)
def _compact(start, length, cap, alive, pool, end):
    """Slide live slots down over garbage; capacities are kept."""
    order = np.argsort(start)
    pos = 0
    for q in range(order.size):
        i = order[q]
        if not alive[i] or start[i] >= end:
            continue
        s = start[i]
        if s != pos:
            for k in range(length[i]):
                pool[pos + k] = pool[s + k]
        start[i] = pos
        pos += cap[i]
    return pos


@njit(cache=True)
def _compact_pair(start, length, cap, alive, pool_a, pool_b, end):
    order = np.argsort(start)
    pos = 0
    for q in range(order.size):
        i = order[q]
        if not alive[i] or start[i] >= end:
            continue
        s = start[i]
        if s != pos:
            for k in range(length[i]):
                pool_a[pos + k] = pool_a[s + k]
                pool_b[pos + k] = pool_b[s + k]
        start[i] = pos
        pos += cap[i]
    return pos


@njit(cache=True)
def _eliminate(n_rows, n_cols, indptr, indices, data, limit, width, max_live):
    nnz = indices.size
    live = nnz
    # row storage: each row owns a slot [row_start, row_start + row_cap)
    row_len = np.zeros(n_rows, np.int64)
    for e in range(nnz):
        row_len[indices[e]] += 1
    row_cap = row_len * 2 + 2
    row_start = np.zeros(n_rows, np.int64)
    acc = 0
    for r in range(n_rows):
        row_start[r] = acc
        acc += row_cap[r]
    rp_end = acc
    rp_col = np.empty(max(acc, 16), np.int32)
    rp_val = np.empty(max(acc, 16), np.int32)
    fill = np.zeros(n_rows, np.int64)
    for c in range(n_cols):
        for e in range(indptr[c], indptr[c + 1]):
            r = indices[e]
            k = row_start[r] + fill[r]
            rp_col[k] = c
            rp_val[k] = data[e]
            fill[r] += 1
    # column lists may hold stale or repeated rows; col_cnt is exact
    col_cnt = np.zeros(n_cols, np.int64)
    col_len = np.zeros(n_cols, np.int64)
    col_cap = np.zeros(n_cols, np.int64)
    col_start = np.zeros(n_cols, np.int64)
    acc = 0
    for c in range(n_cols):
        k = indptr[c + 1] - indptr[c]
        col_cnt[c] = k
        col_len[c] = k
        col_cap[c] = k * 2 + 2
        col_start[c] = acc
        acc += col_cap[c]
    cp_end = acc
    cp_row = np.empty(max(acc, 16), np.int32)
    for c in range(n_cols):
        s = col_start[c]
        for e in range(indptr[c], indptr[c + 1]):
            cp_row[s] = indices[e]
            s += 1
    # slots abandoned by relocation or retirement
    row_garbage = 0
    col_garbage = 0

    row_alive = np.ones(n_rows, np.bool_)
    col_alive = np.ones(n_cols, np.bool_)
    parked = np.zeros(n_cols, np.bool_)
    wmark = np.zeros(n_cols, np.int64)
    wval = np.zeros(n_cols, np.int64)
    seen = np.zeros(n_cols, np.int64)
    visit = np.zeros(n_rows, np.int64)
    stamp = 0

    hk = np.empty(n_cols + 16, np.int64)
    hc = np.empty(n_cols + 16, np.int64)
    hn = 0
    for c in range(n_cols):
        if col_cnt[c] > 0:
            hn = _heap_push(hk, hc, hn, col_cnt[c], c)

    piv_r = np.empty(min(n_rows, n_cols) + 1, np.int64)
    piv_c = np.empty(min(n_rows, n_cols) + 1, np.int64)
    npiv = 0
    status = OK
    targets = np.empty(16, np.int64)
    tcoef = np.empty(16, np.int64)
    cand = np.empty(width + 1, np.int64)
    cand_key = np.empty(width + 1, np.int64)

    while True:
        if max_live > 0 and live > max_live:
            status = PARTIAL
            break
        if hn > 4 * n_cols + 1024:
            # drop stale heap entries
            hn = 0
            for q in range(n_cols):
                if col_alive[q] and col_cnt[q] > 0:
                    hn = _heap_push(hk, hc, hn, col_cnt[q], q)
        # pivot search over the few lowest-count columns
        best_cost = -1
        best_r = -1
        best_c = -1
        ncand = 0
        while hn > 0 and ncand < width:
            key, c, hn = _heap_pop(hk, hc, hn)
            if not col_alive[c] or parked[c] or col_cnt[c] == 0:
                continue
            if key != col_cnt[c]:
                if hn + 1 >= hk.size:
                    hk = _grow(hk, hn + 2)
                    hc = _grow(hc, hn + 2)
                hn = _heap_push(hk, hc, hn, col_cnt[c], c)
                continue
            dup = False
            for q in range(ncand):
                if cand[q] == c:
                    dup = True
            if dup:
                continue
            stamp += 1
            found = False
            s = col_start[c]
            for e in range(s, s + col_len[c]):
                r = cp_row[e]
                if not row_alive[r] or visit[r] == stamp:
                    continue
                visit[r] = stamp
                rs = row_start[r]
                for k in range(rs, rs + row_len[r]):
                    if rp_col[k] == c:
                        v = rp_val[k]
                        if v == 1 or v == -1:
                            found = True
                            cost = (row_len[r] - 1) * (col_cnt[c] - 1)
                            if (best_cost < 0 or cost < best_cost
                                    or (cost == best_cost and (r < best_r
                                        or (r == best_r and c < best_c)))):
                                best_cost = cost
                                best_r = r
                                best_c = c
                        break
            if found:
                cand[ncand] = c
                cand_key[ncand] = col_cnt[c]
                ncand += 1
                if best_cost == 0:
                    break
            else:
                parked[c] = True
        for q in range(ncand):
            if cand[q] != best_c:
                if hn + 1 >= hk.size:
                    hk = _grow(hk, hn + 2)
                    hc = _grow(hc, hn + 2)
                hn = _heap_push(hk, hc, hn, cand_key[q], cand[q])
        if best_r < 0:
            break
        r = best_r
        c = best_c
        piv_r[npiv] = r
        piv_c[npiv] = c
        npiv += 1

        # scatter the pivot row
        stamp += 1
        rstamp = stamp
        pv = 0
        rs = row_start[r]
        for k in range(rs, rs + row_len[r]):
            j = rp_col[k]
            wmark[j] = rstamp
            wval[j] = rp_val[k]
            if j == c:
                pv = rp_val[k]

        # rows meeting the pivot column
        stamp += 1
        nt = 0
        s = col_start[c]
        for e in range(s, s + col_len[c]):
            i = cp_row[e]
            if i == r or not row_alive[i] or visit[i] == stamp:
                continue
            visit[i] = stamp
            ist = row_start[i]
            for k in range(ist, ist + row_len[i]):
                if rp_col[k] == c:
                    if nt >= targets.size:
                        targets = _grow(targets, nt + 1)
                        tcoef = _grow(tcoef, nt + 1)
                    targets[nt] = i
                    tcoef[nt] = rp_val[k] * pv
                    nt += 1
                    break

        for t in range(nt):
            i = targets[t]
            f = tcoef[t]
            stamp += 1
            istamp = stamp
            ist = row_start[i]
            w = ist
            for k in range(ist, ist + row_len[i]):
                j = rp_col[k]
                v = np.int64(rp_val[k])
                if wmark[j] == rstamp:
                    seen[j] = istamp
                    v = v - f * wval[j]
                    if v > limit or v < -limit:
                        return (OVERFLOW, piv_r[:0].copy(), piv_c[:0].copy(), row_alive,
                                rp_col, rp_val, row_start, row_len)
                    if v == 0:
                        live -= 1
                        col_cnt[j] -= 1
                        if hn + 1 >= hk.size:
                            hk = _grow(hk, hn + 2)
                            hc = _grow(hc, hn + 2)
                        hn = _heap_push(hk, hc, hn, col_cnt[j], j)
                        continue
                rp_col[w] = j
                rp_val[w] = v
                w += 1
            new_len = w - ist
            row_len[i] = new_len
            extra = 0
            for k in range(rs, rs + row_len[r]):
                if seen[rp_col[k]] != istamp:
                    extra += 1
            if new_len + extra > row_cap[i]:
                ncap = 2 * (new_len + extra) + 2
                if rp_end + ncap > rp_col.size and 2 * row_garbage > rp_end:
                    rp_end = _compact_pair(row_start, row_len, row_cap, row_alive,
                                           rp_col, rp_val, rp_end)
                    row_garbage = 0
                    rs = row_start[r]
                    ist = row_start[i]
                row_garbage += row_cap[i]
                rp_col = _grow(rp_col, rp_end + ncap)
                rp_val = _grow(rp_val, rp_end + ncap)
                for k in range(new_len):
                    rp_col[rp_end + k] = rp_col[ist + k]
                    rp_val[rp_end + k] = rp_val[ist + k]
                row_start[i] = rp_end
                row_cap[i] = ncap
                ist = rp_end
                rp_end += ncap
            w = ist + new_len
            # fill-in from the pivot row
            for k in range(rs, rs + row_len[r]):
                j = rp_col[k]
                if seen[j] == istamp:
                    continue
                v = -f * np.int64(rp_val[k])
                if v > limit or v < -limit:
                    return (OVERFLOW, piv_r[:0].copy(), piv_c[:0].copy(), row_alive,
                            rp_col, rp_val, row_start, row_len)
                rp_col[w] = j
                rp_val[w] = v
                w += 1
                live += 1
                col_cnt[j] += 1
                if col_len[j] >= col_cap[j]:
                    ncap = 2 * col_len[j] + 2
                    if cp_end + ncap > cp_row.size and 2 * col_garbage > cp_end:
                        cp_end = _compact(col_start, col_len, col_cap, col_alive, cp_row, cp_end)
                        col_garbage = 0
                    col_garbage += col_cap[j]
                    cp_row = _grow(cp_row, cp_end + ncap)
                    cs = col_start[j]
                    for q in range(col_len[j]):
                        cp_row[cp_end + q] = cp_row[cs + q]
                    col_start[j] = cp_end
                    col_cap[j] = ncap
                    cp_end += ncap
                cp_row[col_start[j] + col_len[j]] = i
                col_len[j] += 1
            row_len[i] = w - ist

        # retire the pivot row and column
        row_alive[r] = False
        col_alive[c] = False
        row_garbage += row_cap[r]
        col_garbage += col_cap[c]
        live -= row_len[r]
        for k in range(rs, rs + row_len[r]):
            j = rp_col[k]
            col_cnt[j] -= 1
            if j != c and col_alive[j]:
                parked[j] = False
                if hn + 1 >= hk.size:
                    hk = _grow(hk, hn + 2)
                    hc = _grow(hc, hn + 2)
                hn = _heap_push(hk, hc, hn, col_cnt[j], j)
    return (status, piv_r[:npiv].copy(), piv_c[:npiv].copy(), row_alive,
            rp_col, rp_val, row_start, row_len)


@njit(cache=True)
def _residual_csc(n_cols, row_alive, rp_col, rp_val, row_start, row_len):
    """Surviving entries as CSC arrays, rows in original numbering."""
    cnt = np.zeros(n_cols + 1, np.int64)
    for r in range(row_alive.size):
        if row_alive[r]:
            s = row_start[r]
            for k in range(s, s + row_len[r]):
                cnt[rp_col[k] + 1] += 1
    for c in range(n_cols):
        cnt[c + 1] += cnt[c]
    indptr = cnt.copy()
    pos = cnt[:-1].copy()
    indices = np.empty(indptr[-1], np.int64)
    data = np.empty(indptr[-1], np.int64)
    # increasing row order inside every column
    for r in range(row_alive.size):
        if row_alive[r]:
            s = row_start[r]
            for k in range(s, s + row_len[r]):
                c = rp_col[k]
                indices[pos[c]] = r
                data[pos[c]] = rp_val[k]
                pos[c] += 1
    return indptr, indices, data


@njit(cache=True)
def _row_op(a, i, r, q, col_alive, buf, limit, rcnt, ccnt):
    """``a[i] -= q * a[r]`` over live columns, or False (nothing written) on overflow."""
    m = a.shape[1]
    for j in range(m):
        w = a[r, j]
        if w == 0 or not col_alive[j]:
            buf[j] = a[i, j]
            continue
        if abs(w) > limit // abs(q):
            return False
        v = a[i, j] - q * w
        if v > limit or v < -limit:
            return False
        buf[j] = v
    for j in range(m):
        old = a[i, j]
        if (old == 0) != (buf[j] == 0):
            d = 1 if old == 0 else -1
            rcnt[i] += d
            ccnt[j] += d
        a[i, j] = buf[j]
    return True


@njit(cache=True)
def _col_op(a, j, c, q, row_alive, buf, limit, rcnt, ccnt):
    """``a[:, j] -= q * a[:, c]`` over live rows, or False on overflow."""
    n = a.shape[0]
    for i in range(n):
        w = a[i, c]
        if w == 0 or not row_alive[i]:
            buf[i] = a[i, j]
            continue
        if abs(w) > limit // abs(q):
            return False
        v = a[i, j] - q * w
        if v > limit or v < -limit:
            return False
        buf[i] = v
    for i in range(n):
        old = a[i, j]
        if (old == 0) != (buf[i] == 0):
            d = 1 if old == 0 else -1
            rcnt[i] += d
            ccnt[j] += d
        a[i, j] = buf[i]
    return True


@njit(cache=True)
def _dense_eliminate(a, limit):
    """Diagonalise a dense matrix in place by unimodular row and column moves.

    Unit pivots come first (row with fewest entries, then its unit in the
    sparsest column).  Without units the smallest ``|value|`` is the pivot
    and its row and column are cleared by Euclidean steps.  Every committed
    move is unimodular, so on overflow the routine stops between moves and
    the live block is still exact.

    Returns ``(status, unit_rows, unit_cols, other_diagonal, row_alive, col_alive)``.
    """
    n, m = a.shape
    row_alive = np.ones(n, np.bool_)
    col_alive = np.ones(m, np.bool_)
    no_unit = np.zeros(n, np.bool_)  # rows known to hold no unit
    rbuf = np.empty(m, a.dtype)
    cbuf = np.empty(n, a.dtype)
    rcnt = np.zeros(n, np.int64)
    ccnt = np.zeros(m, np.int64)
    for i in range(n):
        for j in range(m):
            if a[i, j] != 0:
                rcnt[i] += 1
                ccnt[j] += 1
    piv_r = np.empty(min(n, m) + 1, np.int64)
    piv_c = np.empty(min(n, m) + 1, np.int64)
    diag = np.empty(min(n, m) + 1, np.int64)
    npiv = 0
    nd = 0
    status = OK
    while True:
        # unit pivot, if any
        r = -1
        c = -1
        while True:
            bi = -1
            for i in range(n):
                if row_alive[i] and rcnt[i] > 0 and not no_unit[i]:
                    if bi < 0 or rcnt[i] < rcnt[bi]:
                        bi = i
            if bi < 0:
                break
            for j in range(m):
                v = a[bi, j]
                if (v == 1 or v == -1) and col_alive[j]:
                    if c < 0 or ccnt[j] < ccnt[c]:
                        c = j
            if c >= 0:
                r = bi
                break
            no_unit[bi] = True
        if r >= 0:
            pv = a[r, c]
            failed = False
            for i in range(n):
                if i == r or not row_alive[i] or a[i, c] == 0:
                    continue
                if not _row_op(a, i, r, a[i, c] * pv, col_alive, rbuf, limit, rcnt, ccnt):
                    failed = True
                    break
                no_unit[i] = False
            if failed:
                status = PARTIAL
                break
            # the rest of row r is cleared by column moves that touch nothing else
            row_alive[r] = False
            col_alive[c] = False
            for j in range(m):
                if a[r, j] != 0:
                    ccnt[j] -= 1
            piv_r[npiv] = r
            piv_c[npiv] = c
            npiv += 1
            continue
        # smallest |value|, ties by Markowitz cost then position
        best = 0
        cost = 0
        for i in range(n):
            if not row_alive[i] or rcnt[i] == 0:
                continue
            for j in range(m):
                v = abs(a[i, j])
                if v == 0 or not col_alive[j]:
                    continue
                k = (rcnt[i] - 1) * (ccnt[j] - 1)
                if best == 0 or v < best or (v == best and k < cost):
                    best = v
                    cost = k
                    r = i
                    c = j
        if r < 0:
            break
        failed = False
        while True:
            pv = a[r, c]
            dirty = False
            for i in range(n):
                if i != r and row_alive[i] and a[i, c] != 0:
                    q = a[i, c] // pv
                    if q != 0 and not _row_op(a, i, r, q, col_alive, rbuf, limit, rcnt, ccnt):
                        failed = True
                        break
                    if a[i, c] != 0:
                        dirty = True
            if failed:
                break
            for j in range(m):
                if j != c and col_alive[j] and a[r, j] != 0:
                    q = a[r, j] // pv
                    if q != 0 and not _col_op(a, j, c, q, row_alive, cbuf, limit, rcnt, ccnt):
                        failed = True
                        break
                    if a[r, j] != 0:
                        dirty = True
            if failed or not dirty:
                break
            # move to the smallest remainder in the pivot row or column
            best = abs(pv)
            nr = r
            nc = c
            for i in range(n):
                if row_alive[i] and a[i, c] != 0 and abs(a[i, c]) < best:
                    best = abs(a[i, c])
                    nr = i
                    nc = c
            for j in range(m):
                if col_alive[j] and a[r, j] != 0 and abs(a[r, j]) < best:
                    best = abs(a[r, j])
                    nr = r
                    nc = j
            r = nr
            c = nc
        if failed:
            status = PARTIAL
            break
        diag[nd] = abs(a[r, c])
        nd += 1
        row_alive[r] = False
        col_alive[c] = False
        for i in range(n):
            no_unit[i] = False
        _recount_all(a, row_alive, col_alive, rcnt, ccnt)
    return (status, piv_r[:npiv].copy(), piv_c[:npiv].copy(), diag[:nd].copy(),
            row_alive, col_alive)


@njit(cache=True)
def _recount_all(a, row_alive, col_alive, rcnt, ccnt):
    n, m = a.shape
    rcnt[:] = 0
    ccnt[:] = 0
    for i in range(n):
        if not row_alive[i]:
            continue
        for j in range(m):
            if col_alive[j] and a[i, j] != 0:
                rcnt[i] += 1
                ccnt[j] += 1


def dense_reduce(a: np.ndarray, kernel=None, limit=(1 << 62) - 1):
    """Run the dense kernel on a copy of ``a``.

    Returns ``(status, unit_rows, unit_cols, other_diagonal, residual)``.
    With status ``OK`` the residual is empty and the Smith diagonal is the
    units plus ``other_diagonal`` (up to divisor-chain normalisation);
    with ``PARTIAL`` the residual block over the surviving rows and columns
    still has to be reduced.
    """
    a = np.array(a, dtype=np.int64, copy=True)
    kernel = kernel or kernel_name()
    fn = _dense_eliminate if kernel == "numba" else _interpreted(_dense_eliminate)
    status, prow, pcol, diag, ralive, calive = fn(a, np.int64(limit))
    residual = a[np.ix_(np.flatnonzero(ralive), np.flatnonzero(calive))]
    return status, prow, pcol, diag, residual


def _plain(f):
    return getattr(f, "py_func", f)


def _interpreted(fn):
    """``fn`` as ordinary Python over numpy arrays, helpers included."""
    env = dict(globals())
    for name, obj in globals().items():
        if hasattr(obj, "py_func"):
            env[name] = obj.py_func
    f = _plain(fn)
    return types.FunctionType(f.__code__, env, f.__name__ + "_py")


def unit_reduce(n_rows, indptr, indices, data, limit=DEFAULT_LIMIT, kernel=None,
                width=SEARCH_WIDTH, max_live=0) -> Reduction:
    """Run the selected kernel on a CSC matrix.

    ``max_live > 0`` stops once the active submatrix holds more entries than
    that; the result is then ``PARTIAL`` but its residual is exact.
    """
    indptr = np.ascontiguousarray(indptr, np.int64)
    indices = np.ascontiguousarray(indices, np.int64)
    data = np.ascontiguousarray(data, np.int64)
    n_cols = indptr.size - 1
    if n_rows >= 2**31 or n_cols >= 2**31:
        raise ValueError("matrix too large for 32-bit indices")
    if data.size and int(np.abs(data).max()) > limit:
        return Reduction(OVERFLOW, np.empty(0, np.int64), np.empty(0, np.int64), None)
    # pools store int32 values
    limit = min(int(limit), (1 << 31) - 1)
    kernel = kernel or kernel_name()
    elim = _eliminate if kernel == "numba" else _interpreted(_eliminate)
    gather = _residual_csc if kernel == "numba" else _interpreted(_residual_csc)
    status, prow, pcol, alive, rp_col, rp_val, row_start, row_len = elim(
        np.int64(n_rows), np.int64(n_cols), indptr, indices, data, np.int64(limit),
        np.int64(width), np.int64(max_live),
    )
    if status == OVERFLOW:
        return Reduction(OVERFLOW, prow, pcol, None)
    csc = gather(np.int64(n_cols), alive, rp_col, rp_val, row_start, row_len)
    return Reduction(status, prow, pcol, csc)
