"""Homology of finite chain complexes of free abelian groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .snf import rank, smith_diagonal, smith_reduction
from .sparse import SparseIntMatrix


class ComplexError(ValueError):
    """Two consecutive maps do not compose to zero, or shapes disagree."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class HomologyResult:
    betti: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if self.betti < 0:
            raise ValueError("negative Betti number")
        if any(x < 2 for x in t):
            raise ValueError(f"torsion entries must exceed 1: {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisor chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, betti: int, diagonal: Sequence[int]) -> "HomologyResult":
        return cls(betti, tuple(d for d in diagonal if d > 1))

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def machine(self) -> list[int]:
        """Torsion divisors followed by one ``0`` per free summand."""
        return list(self.torsion) + [0] * self.betti

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti:
            parts.append(f"Z^{self.betti}")
        for d in sorted(set(self.torsion)):
            k = self.torsion.count(d)
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) if parts else "0"

    def __add__(self, other: "HomologyResult") -> "HomologyResult":
        return direct_sum([self, other])


def direct_sum(groups: Sequence[HomologyResult]) -> HomologyResult:
    from .elimination import divisor_chain

    betti = sum(g.betti for g in groups)
    tors = divisor_chain([d for g in groups for d in g.torsion])
    return HomologyResult.from_diagonal(betti, tors)


def _first_nonzero_column(m: SparseIntMatrix) -> int | None:
    for j, col in enumerate(m.columns):
        if col:
            return j
    return None


def check_composable(d_out: SparseIntMatrix, d_in: SparseIntMatrix) -> None:
    if d_out.cols != d_in.rows:
        raise ComplexError(
            f"shape mismatch: outgoing map has {d_out.cols} columns, "
            f"incoming map has {d_in.rows} rows"
        )
    for j, col in enumerate(d_in.columns):
        if d_out.apply(dict(col)):
            raise ComplexError(f"maps do not compose to zero (column {j})", witness=j)


def homology_at(
    d_out: SparseIntMatrix, d_in: SparseIntMatrix, *, check: bool = True, **kw
) -> HomologyResult:
    """``ker d_out / im d_in`` for ``C' <-d_out- C <-d_in- C''``."""
    if check:
        check_composable(d_out, d_in)
    elif d_out.cols != d_in.rows:
        raise ComplexError("shape mismatch")
    r_out = rank(d_out, **kw) if d_out.nnz else 0
    diag = smith_diagonal(d_in, **kw) if d_in.nnz else []
    return HomologyResult.from_diagonal(d_out.cols - r_out - len(diag), diag)


def verify_complex(differentials: Sequence[SparseIntMatrix]) -> bool:
    """True iff consecutive maps ``d[i] o d[i+1]`` vanish.

    ``differentials[i]`` maps degree ``i + 1`` (or the next one up) to degree ``i``.
    """
    for a, b in zip(differentials, differentials[1:]):
        if a.cols != b.rows:
            raise ComplexError(f"dimension mismatch {a.shape} then {b.shape}")
        if any(a.apply(dict(col)) for col in b.columns):
            return False
    return True


def complex_homology(
    differentials: Sequence[SparseIntMatrix], dims: Sequence[int], *, clear: bool = True,
    strategy: str = "interleave", max_degree: int | None = None, **kw,
) -> list[HomologyResult]:
    """Homology of ``C_0 <- C_1 <- ... <- C_n`` in degrees ``0..max_degree``.

    ``differentials[i]`` maps ``C_{i+1}`` to ``C_i``; ``dims[i] = rank C_i``.

    ``strategy="interleave"`` cancels unit pairs across all differentials at
    once (see :mod:`.reduction`).  ``"sweep"`` eliminates each differential
    once, from the top down; with ``clear``, basis elements of ``C_i`` hit by
    a unimodular pivot block of the map into ``C_i`` are dropped from the map
    out of ``C_i``, since those columns are integer combinations of the
    others.  ``exact_only`` and ``rank_only`` imply the sweep.
    """
    n = len(dims)
    if len(differentials) != n - 1:
        raise ValueError("need one differential between consecutive degrees")
    top = n - 1 if max_degree is None else min(max_degree, n - 1)
    needed = list(range(min(top + 1, n - 1)))
    if strategy not in ("interleave", "sweep"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if kw.get("exact_only") or kw.get("rank_only"):
        strategy = "sweep"
    diags: list[list[int]] = [[] for _ in differentials]
    if strategy == "interleave":
        from .reduction import interleaved_diagonals

        found = interleaved_diagonals(differentials, kernel=kw.get("kernel"), required=needed)
        for i in needed:
            diags[i] = found[i]
    else:
        cleared: list[int] = []
        start = n - 2 if max_degree is None else needed[-1] if needed else -1
        for i in reversed(range(start + 1)):
            d = differentials[i]
            if clear and cleared:
                drop = set(cleared)
                d = d.select(range(d.rows), [c for c in range(d.cols) if c not in drop])
            if d.nnz:
                diags[i], cleared = smith_reduction(d, **kw)
            else:
                cleared = []
    out = []
    for i in range(top + 1):
        r_out = len(diags[i - 1]) if i > 0 else 0
        d_in = diags[i] if i < n - 1 else []
        out.append(HomologyResult.from_diagonal(dims[i] - r_out - len(d_in), d_in))
    return out
