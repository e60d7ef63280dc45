"""Dense integer lattice routines with unimodular transforms.

Matrices are lists of rows of Python ints.  These routines are cubic and meant
for the small presentations that arise when naming homology generators, and
as an independent oracle for the sparse engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b) if b else []
    inner = len(b)
    return [[sum(r[k] * c[k] for k in range(inner)) for c in bt] for r in a]


def matvec(a: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(v * x[k] for k, v in enumerate(r)) for r in a]


def smith_with_transforms(a: Matrix, rows: int | None = None, cols: int | None = None,
                          transforms: bool = True):
    """``(D, U, V, U^-1)`` with ``U a V = D`` diagonal and ``d_1 | d_2 | ...``.

    U and V are unimodular; ``U^-1`` names generators of quotients.  With
    ``transforms=False`` only D is meaningful (the others are empty).
    """
    m = len(a) if rows is None else rows
    n = (len(a[0]) if a else 0) if cols is None else cols
    d = [list(r) for r in a]
    u = identity(m) if transforms else []
    uinv = identity(m) if transforms else []
    v = identity(n) if transforms else []

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if transforms:
            u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        # row_dst += f * row_src
        if f:
            d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
            if transforms:
                u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]
            for r in uinv:
                r[src] -= f * r[dst]

    def add_col(src, dst, f):
        if f:
            for r in d:
                r[dst] += f * r[src]
            for r in v:
                r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                q, r = divmod(d[i][t], p)
                add_row(t, i, -q)
                if r:
                    done = False
            for j in range(t + 1, n):
                q, r = divmod(d[t][j], p)
                add_col(t, j, -q)
                if r:
                    done = False
            if not done:
                # move the smallest remaining entry of row/col t to the pivot
                best = None
                for i in range(t, m):
                    x = d[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, "r")
                for j in range(t, n):
                    x = d[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # pivot must divide the whole remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            if transforms:
                u[t] = [-x for x in u[t]]
            for r in uinv:
                r[t] = -r[t]
        t += 1
    return d, u, v, uinv


def smith_diagonal_dense(a: Matrix) -> list[int]:
    """Nonzero invariant factors via the dense transform algorithm."""
    d, *_ = smith_with_transforms(a, transforms=False)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def kernel_basis(a: Matrix, cols: int) -> Matrix:
    """Columns spanning ``ker a`` (a saturated sublattice), as a cols x k matrix."""
    if not a:
        return identity(cols)
    d, _, v, _ = smith_with_transforms(a, cols=cols)
    r = sum(1 for i in range(min(len(d), cols)) if d[i][i])
    return [row[r:] for row in v]


class Solver:
    """Integer solutions of ``a x = b`` for a fixed ``a`` (transforms cached)."""

    def __init__(self, a: Matrix, cols: int):
        self.m = len(a)
        self.cols = cols
        self.d, self.u, self.v, _ = smith_with_transforms(a, rows=self.m, cols=cols)

    def __call__(self, b: Sequence[int]) -> list[int] | None:
        c = matvec(self.u, b)
        y = [0] * self.cols
        for i in range(self.m):
            di = self.d[i][i] if i < self.cols else 0
            if di:
                if c[i] % di:
                    return None
                y[i] = c[i] // di
            elif c[i]:
                return None
        return matvec(self.v, y)


def solve(a: Matrix, b: Sequence[int], cols: int) -> list[int] | None:
    """Some integer ``x`` with ``a x = b``, or None."""
    return Solver(a, cols)(b)


@dataclass
class Presentation:
    """``W / B`` for lattices ``B <= W <= Z^n``.

    ``generators[k]`` is a vector in ``Z^n`` whose class has order
    ``orders[k]`` (0 for infinite order); ``coordinates`` maps an element of
    ``W`` to its class.
    """

    n: int
    w_basis: Matrix  # n x k, columns form a basis of W
    orders: list[int]
    generators: list[list[int]]
    _u: Matrix
    _keep: list[int]
    _solver: Solver

    @property
    def invariants(self) -> list[int]:
        return list(self.orders)

    def coordinates(self, x: Sequence[int]) -> list[int]:
        c = self._solver(x)
        if c is None:
            raise ValueError("element does not lie in W")
        y = matvec(self._u, c)
        out = []
        for idx, o in zip(self._keep, self.orders):
            out.append(y[idx] % o if o else y[idx])
        return out


def quotient(w_basis: Matrix, b_gens: Matrix, n: int) -> Presentation:
    """Present ``W / B``; ``w_basis`` (n x k) must have independent columns."""
    k = len(w_basis[0]) if w_basis else 0
    cols_b = len(b_gens[0]) if b_gens else 0
    solver = Solver(w_basis, k)
    coords = []
    for j in range(cols_b):
        col = [b_gens[i][j] for i in range(n)]
        c = solver(col)
        if c is None:
            raise ValueError(f"generator {j} of B does not lie in W")
        coords.append(c)
    cmat = transpose(coords, k) if coords else [[] for _ in range(k)]
    d, u, _, uinv = smith_with_transforms(cmat, rows=k, cols=cols_b)
    orders = []
    gens = []
    keep = []
    for i in range(k):
        di = d[i][i] if i < cols_b else 0
        if di == 1:
            continue
        keep.append(i)
        orders.append(di)
        gens.append(matvec(w_basis, [r[i] for r in uinv]))
    # torsion first in divisor order, then free summands
    order = sorted(range(len(orders)), key=lambda t: (orders[t] == 0, orders[t]))
    return Presentation(
        n, w_basis, [orders[t] for t in order], [gens[t] for t in order],
        u, [keep[t] for t in order], solver,
    )


def subgroup_invariants(vectors: Sequence[Sequence[int]], orders: Sequence[int]) -> list[int]:
    """Invariants of the subgroup generated by ``vectors`` in ``(+) Z/orders``.

    An order of 0 stands for a copy of Z.  Returns torsion divisors then zeros.
    """
    n = len(orders)
    rel = [[(orders[i] if i == j else 0) for j in range(n)] for i in range(n)]
    rel_cols = [j for j in range(n) if orders[j]]
    gens = [list(v) for v in vectors]
    # L = span(gens) + R ; image = L / R
    allcols = gens + [[rel[i][j] for i in range(n)] for j in rel_cols]
    if not allcols:
        return []
    mat = transpose(allcols, n)
    # basis of L via column reduction: L = span of U^{-1} D columns
    d, u, v, uinv = smith_with_transforms(mat, rows=n, cols=len(allcols))
    basis_cols = []
    for i in range(min(n, len(allcols))):
        if d[i][i]:
            basis_cols.append([r[i] * d[i][i] for r in uinv])
    if not basis_cols:
        return []
    lb = transpose(basis_cols, n)
    rel_mat = [[rel[i][j] for j in rel_cols] for i in range(n)]
    pres = quotient(lb, rel_mat, n)
    return pres.orders
