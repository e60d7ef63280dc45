"""Cycle-free chessboard complexes and their isomorphism onto Sym_*^(p).

A chain of the augmented complex on an ``n x n`` board is a list of rook
placements ``(row, col)`` with increasing rows, distinct columns and no
directed cycle ``l0 -> l1 -> ... -> l0`` among the pairs (so no diagonal cell).
The empty board is the augmentation chain.  After suspension a list of ``k``
rooks sits in degree ``k``, which is also the degree of its image in
``Sym_*^(n-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import HomologyResult, SparseIntMatrix, complex_homology, verify_complex
from .sym_complex import Generator, SymError, canonicalize, enumerate_generators, face_terms

Placement = tuple[tuple[int, int], ...]


def is_cycle_free(placements: Sequence[tuple[int, int]]) -> bool:
    """True iff the directed graph with an edge ``i -> j`` per rook is acyclic."""
    succ = {}
    for i, j in placements:
        if i in succ:
            return False  # not a rook placement
        succ[i] = j
    done: set[int] = set()
    for start in succ:
        path = set()
        x = start
        while x in succ and x not in done:
            if x in path:
                return False
            path.add(x)
            x = succ[x]
        done |= path
    return True


@dataclass(frozen=True)
class ChessChain:
    n: int
    placements: Placement

    def __post_init__(self):
        pl = tuple((int(i), int(j)) for i, j in self.placements)
        rows = [i for i, _ in pl]
        cols = [j for _, j in pl]
        if any(not (1 <= x <= self.n) for x in rows + cols):
            raise SymError(f"placement off the {self.n}x{self.n} board: {pl}")
        if rows != sorted(set(rows)) or len(set(cols)) != len(cols):
            raise SymError(f"rows must increase and columns be distinct: {pl}")
        if not is_cycle_free(pl):
            raise SymError(f"placement list has a cycle: {pl}")
        object.__setattr__(self, "placements", pl)

    @property
    def degree(self) -> int:
        """Degree in the suspended augmented complex (number of rooks)."""
        return len(self.placements)

    def boundary(self) -> list[tuple["ChessChain", int]]:
        pl = self.placements
        return [(ChessChain(self.n, pl[:s] + pl[s + 1:]), -1 if s & 1 else 1)
                for s in range(len(pl))]


def enumerate_placements(n: int, k: int) -> list[Placement]:
    """Cycle-free lists of ``k`` rooks on the ``n x n`` board, lexicographic."""
    out = []
    for rows in itertools.combinations(range(1, n + 1), k):
        for cols in itertools.permutations(range(1, n + 1), k):
            pl = tuple(zip(rows, cols))
            if is_cycle_free(pl):
                out.append(pl)
    out.sort()
    return out


@dataclass(frozen=True)
class ChessComplex:
    n: int
    bases: tuple[tuple[Placement, ...], ...]  # bases[k]: lists of k rooks
    differentials: tuple[SparseIntMatrix, ...] = field(repr=False)

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def homology(self, **kw) -> list[HomologyResult]:
        return complex_homology(list(self.differentials), self.dims, **kw)


def chessboard_complex(n: int) -> ChessComplex:
    """Suspended augmented cycle-free chessboard complex; degrees ``0..n-1``."""
    if n < 1:
        raise SymError("board size must be >= 1")
    # n rooks always close a cycle, so the top degree is n - 1
    bases = [enumerate_placements(n, k) for k in range(n)]
    diffs = []
    for k in range(1, n):
        index = {pl: r for r, pl in enumerate(bases[k - 1])}
        cols = []
        for pl in bases[k]:
            cols.append({index[pl[:s] + pl[s + 1:]]: (-1 if s & 1 else 1) for s in range(k)})
        diffs.append(SparseIntMatrix.from_columns(len(bases[k - 1]), cols))
    return ChessComplex(n, tuple(tuple(b) for b in bases), tuple(diffs))


def _perm_parity(seq: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv & 1 else 1


def omega(placements: Sequence[tuple[int, int]], p: int) -> tuple[Generator, int]:
    """Image of a rook list in ``Sym^(p)`` as ``(canonical generator, sign)``.

    The rooks split into maximal queues ``(l0,l1),(l1,l2),...``; each queue
    becomes the monomial ``z_{l0-1} z_{l1-1} ...`` and every untouched label
    ``k+1`` contributes ``z_k``.  The sign combines the reordering of the list
    into queues with the canonicalization sign.
    """
    pl = list(placements)
    succ = {i: (j, s) for s, (i, j) in enumerate(pl)}
    targets = {j for _, j in pl}
    order: list[int] = []
    factors: list[tuple[int, ...]] = []
    for start in sorted(i for i in succ if i not in targets):
        mono = [start - 1]
        x = start
        while x in succ:
            x, s = succ[x]
            order.append(s)
            mono.append(x - 1)
        factors.append(tuple(mono))
    if len(order) != len(pl):
        raise SymError(f"placement list has a cycle: {tuple(pl)}")
    touched = {x for pair in pl for x in pair}
    factors.extend((k,) for k in range(p + 1) if k + 1 not in touched)
    gen, sign = canonicalize(factors, p)
    return gen, sign * _perm_parity(order)


@dataclass
class OmegaReport:
    p: int
    dims: list[int]
    bijective: bool
    chain_map: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.bijective and self.chain_map


def omega_iso(p: int) -> OmegaReport:
    """Check that the rook-list map onto ``Sym^(p)`` is a bijective chain map."""
    if p < 0:
        raise SymError("p must be >= 0")
    n = p + 1
    failures: list[str] = []
    bijective = True
    chain_map = True
    dims = []
    for k in range(n):
        lists = enumerate_placements(n, k)
        dims.append(len(lists))
        images = [omega(pl, p)[0] for pl in lists]
        gens = enumerate_generators(p, k)
        if sorted(images) != sorted(gens) or len(set(images)) != len(images):
            bijective = False
            failures.append(f"degree {k}: {len(lists)} rook lists vs {len(gens)} generators")
        for pl in lists:
            gen, sign = omega(pl, p)
            lhs: dict[Generator, int] = {}
            for s in range(k):
                g, e = omega(pl[:s] + pl[s + 1:], p)
                lhs[g] = lhs.get(g, 0) + (-1 if s & 1 else 1) * e
            rhs: dict[Generator, int] = {}
            for g, c in face_terms(gen):
                rhs[g] = rhs.get(g, 0) + sign * c
            lhs = {g: c for g, c in lhs.items() if c}
            rhs = {g: c for g, c in rhs.items() if c}
            if lhs != rhs:
                chain_map = False
                if len(failures) < 10:
                    failures.append(f"d(omega {pl}) != omega(d {pl})")
    return OmegaReport(p, dims, bijective, chain_map, failures)


def chess_differentials_square_zero(n: int) -> bool:
    return verify_complex(list(chessboard_complex(n).differentials))
