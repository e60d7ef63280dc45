"""Exact sparse Smith-form elimination over the integers.

Pivots are chosen by smallest absolute value, then smallest Markowitz cost
``(row_count - 1) * (col_count - 1)``, ties broken by lowest row then lowest
column.  The search is restricted to the lowest-count columns (kept in a lazy
heap), which is where low-cost pivots live.  When a pivot fails to divide its
row or column, extended-gcd row/column operations shrink it first.
"""

from __future__ import annotations

import heapq
from math import gcd
from typing import Iterable

# columns inspected per pivot search
_SEARCH_WIDTH = 4


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class _Active:
    """Active submatrix with row dictionaries and column row-sets."""

    def __init__(self, columns: Iterable[Iterable[tuple[int, int]]]):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for c, col in enumerate(columns):
            s = set()
            for r, v in col:
                if v:
                    self.rows.setdefault(r, {})[c] = v
                    s.add(r)
            if s:
                self.cols[c] = s
        self.heap = [(len(s), c) for c, s in self.cols.items()]
        heapq.heapify(self.heap)

    def touch(self, c: int) -> None:
        s = self.cols.get(c)
        if s:
            heapq.heappush(self.heap, (len(s), c))

    def set(self, r: int, c: int, v: int) -> None:
        row = self.rows.get(r)
        if row is None:
            if not v:
                return
            row = self.rows[r] = {}
        if v:
            if c not in row:
                self.cols.setdefault(c, set()).add(r)
            row[c] = v
        elif c in row:
            del row[c]
            s = self.cols[c]
            s.discard(r)
            if not s:
                del self.cols[c]
            if not row:
                del self.rows[r]

    def drop(self, r: int, c: int) -> None:
        """Remove pivot row ``r`` and (now singleton) column ``c``."""
        row = self.rows.pop(r)
        for j in row:
            s = self.cols[j]
            s.discard(r)
            if not s:
                del self.cols[j]
            else:
                self.touch(j)
        self.cols.pop(c, None)

    # -- pivot search -------------------------------------------------------

    def choose_pivot(self) -> tuple[int, int] | None:
        best = None
        seen = 0
        popped = []
        while self.heap and seen < _SEARCH_WIDTH:
            cnt, c = heapq.heappop(self.heap)
            s = self.cols.get(c)
            if not s or len(s) != cnt:
                continue
            popped.append((cnt, c))
            seen += 1
            for r in s:
                v = self.rows[r][c]
                key = (abs(v), (len(self.rows[r]) - 1) * (cnt - 1), r, c)
                if best is None or key < best:
                    best = key
            if best is not None and best[0] == 1 and best[1] == 0:
                break
        for item in popped:
            heapq.heappush(self.heap, item)
        if best is None:
            if not self.cols:
                return None
            # heap exhausted by stale entries: rebuild
            self.heap = [(len(s), c) for c, s in self.cols.items()]
            heapq.heapify(self.heap)
            return self.choose_pivot()
        return best[2], best[3]

    # -- unimodular operations ----------------------------------------------

    def row_combine(self, r: int, i: int, a: int, b: int, c_: int, d: int) -> None:
        """rows (r, i) <- (a*r + b*i, c_*r + d*i); must be unimodular."""
        rr = self.rows.get(r, {})
        ri = self.rows.get(i, {})
        keys = set(rr) | set(ri)
        new_r = {}
        new_i = {}
        for j in keys:
            x = rr.get(j, 0)
            y = ri.get(j, 0)
            new_r[j] = a * x + b * y
            new_i[j] = c_ * x + d * y
        for j in keys:
            self.set(r, j, new_r[j])
            self.set(i, j, new_i[j])
            self.touch(j)

    def col_combine(self, c: int, j: int, a: int, b: int, c_: int, d: int) -> None:
        """cols (c, j) <- (a*c + b*j, c_*c + d*j); must be unimodular."""
        rs = set(self.cols.get(c, ())) | set(self.cols.get(j, ()))
        for r in rs:
            row = self.rows[r]
            x = row.get(c, 0)
            y = row.get(j, 0)
            self.set(r, c, a * x + b * y)
            self.set(r, j, c_ * x + d * y)
        self.touch(c)
        self.touch(j)

    def subtract_row(self, i: int, r: int, f: int) -> None:
        """row_i -= f * row_r."""
        ri = self.rows[i]
        cols = self.cols
        for j, v in self.rows[r].items():
            old = ri.get(j)
            if old is None:
                ri[j] = -f * v
                cols[j].add(i)
            else:
                new = old - f * v
                if new:
                    ri[j] = new
                else:
                    del ri[j]
                    s = cols[j]
                    s.discard(i)
                    if not s:
                        del cols[j]

    def improve(self, r: int, c: int) -> None:
        """Make ``a[r][c]`` divide every entry of its row and column."""
        while True:
            p = self.rows[r][c]
            bad = None
            for i in sorted(self.cols[c]):
                if i != r and self.rows[i][c] % p:
                    bad = ("row", i)
                    break
            if bad is None:
                for j in sorted(self.rows[r]):
                    if j != c and self.rows[r][j] % p:
                        bad = ("col", j)
                        break
            if bad is None:
                return
            kind, k = bad
            if kind == "row":
                q = self.rows[k][c]
                g, x, y = _xgcd(p, q)
                self.row_combine(r, k, x, y, -q // g, p // g)
            else:
                q = self.rows[r][k]
                g, x, y = _xgcd(p, q)
                self.col_combine(c, k, x, y, -q // g, p // g)

    def eliminate(self, r: int, c: int, rank_only: bool = False) -> int:
        p = self.rows[r][c]
        for i in [i for i in self.cols[c] if i != r]:
            a = self.rows[i][c]
            if a % p == 0:
                self.subtract_row(i, r, a // p)
            else:
                # fraction-free step; rank preserving but not unimodular
                assert rank_only
                g = gcd(a, p)
                ri = self.rows[i]
                for j in list(ri):
                    ri[j] *= p // g
                self.subtract_row(i, r, a // g)
            if not self.rows[i]:
                del self.rows[i]
        self.cols[c] = {r}
        self.drop(r, c)
        return abs(p)


def eliminate(
    rows: int, columns: Iterable[Iterable[tuple[int, int]]], rank_only: bool = False
) -> list[int]:
    """Diagonal entries (unnormalized) produced by full sparse elimination.

    With ``rank_only`` the entries are meaningless beyond their count.
    """
    act = _Active(columns)
    diag: list[int] = []
    while True:
        piv = act.choose_pivot()
        if piv is None:
            break
        r, c = piv
        if not rank_only:
            act.improve(r, c)
        diag.append(act.eliminate(r, c, rank_only=rank_only))
    return diag


def divisor_chain(values: Iterable[int]) -> list[int]:
    """Normalize a diagonal to Smith form ``d_1 | d_2 | ...`` (zeros dropped)."""
    ones = 0
    rest = []
    for v in values:
        v = abs(v)
        if v == 1:
            ones += 1
        elif v:
            rest.append(v)
    rest.sort()
    n = len(rest)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    rest.sort()
    k = 0
    while k < len(rest) and rest[k] == 1:
        k += 1
    return [1] * (ones + k) + rest[k:]
