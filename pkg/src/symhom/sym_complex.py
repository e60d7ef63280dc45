"""The complex Sym_*^(p) and its representation-theoretic generators.

A generator of ``Sym_i^(p)`` is a tensor of monomials in the commuting-up-to-sign
variables ``z_0, ..., z_p``, each variable used exactly once.  A monomial of
length ``k + 1`` has degree ``k``; tensor factors commute up to the sign
``(-1)^(deg a * deg b)``.  The canonical representative lists the factors by
increasing least index, and the sign relating a raw tensor to its canonical
form is carried alongside, never stored.

The differential splits one monomial at one internal cut.  Cuts are numbered
globally left to right across the canonical tensor (a factor of degree ``k``
has ``k`` cuts), and cut ``j`` carries the sign ``(-1)^j``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import factorial, floor, sqrt
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import HomologyResult, SparseIntMatrix, complex_homology

Factor = tuple[int, ...]
Generator = tuple[Factor, ...]

# p above this needs an explicit opt-in
DEFAULT_MAX_P = 5
MEMORY_ENV = "SYMHOM_MAX_MEMORY_MB"


class SymError(ValueError):
    """Malformed generator or out-of-range request."""


def degree(gen: Generator) -> int:
    return sum(len(f) - 1 for f in gen)


def _sign_of_order(gen: Sequence[Factor], order: Sequence[int]) -> int:
    """Koszul sign of listing ``gen`` in the given order."""
    odd = [k for k in order if len(gen[k]) % 2 == 0]
    inv = 0
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if odd[a] > odd[b]:
                inv += 1
    return -1 if inv & 1 else 1


def canonicalize(raw: Iterable[Iterable[int]], p: int | None = None) -> tuple[Generator, int]:
    """Sort factors by least index; returns ``(generator, sign)``."""
    factors = tuple(tuple(int(x) for x in f) for f in raw)
    if any(not f for f in factors):
        raise SymError("empty monomial")
    flat = sorted(x for f in factors for x in f)
    size = len(flat) if p is None else p + 1
    if flat != list(range(size)):
        raise SymError(f"factors do not partition {{0..{size - 1}}}: {factors}")
    return _canon(factors)


def _canon(factors: Sequence[Factor]) -> tuple[Generator, int]:
    order = sorted(range(len(factors)), key=lambda k: min(factors[k]))
    sign = _sign_of_order(factors, order)
    return tuple(factors[k] for k in order), sign


def enumerate_generators(p: int, i: int) -> list[Generator]:
    """Canonical generators of ``Sym_i^(p)`` in lexicographic order."""
    if p < 0 or not 0 <= i <= p:
        return []
    blocks = p + 1 - i
    out: list[Generator] = []

    def rec(r: int, current: list[list[int]]):
        remaining = p + 1 - r
        if len(current) + remaining < blocks:
            return
        if r > p:
            if len(current) == blocks:
                out.append(tuple(tuple(f) for f in current))
            return
        if len(current) < blocks:
            current.append([r])
            rec(r + 1, current)
            current.pop()
        for f in current:
            for pos in range(len(f) + 1):
                f.insert(pos, r)
                rec(r + 1, current)
                del f[pos]

    rec(0, [])
    out.sort()
    return out


def lah(n: int, k: int) -> int:
    """Unsigned Lah number: partitions of an n-set into k nonempty lists."""
    if n == k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return factorial(n - 1) // factorial(k - 1) * factorial(n) // factorial(k) // factorial(n - k)


def face_terms(gen: Generator) -> Iterator[tuple[Generator, int]]:
    """Terms of ``d(gen)`` as canonical ``(generator, coefficient)`` pairs."""
    j = 0
    for k, f in enumerate(gen):
        for cut in range(1, len(f)):
            raw = gen[:k] + (f[:cut], f[cut:]) + gen[k + 1:]
            g, s = _canon(raw)
            yield g, (-s if j & 1 else s)
            j += 1


def boundary_matrix(p: int, i: int, *, bases: Mapping[int, list[Generator]] | None = None
                    ) -> SparseIntMatrix:
    """Matrix of ``d: Sym_i^(p) -> Sym_{i-1}^(p)`` over the canonical bases."""
    if not 1 <= i <= p:
        raise SymError(f"boundary defined for 1 <= i <= p, got p={p}, i={i}")
    src = bases[i] if bases else enumerate_generators(p, i)
    tgt = bases[i - 1] if bases else enumerate_generators(p, i - 1)
    index = {g: n for n, g in enumerate(tgt)}
    cols = []
    for gen in src:
        col: dict[int, int] = {}
        for g, c in face_terms(gen):
            r = index[g]
            col[r] = col.get(r, 0) + c
        cols.append(col)
    return SparseIntMatrix.from_columns(len(tgt), cols)


@dataclass(frozen=True)
class SymComplex:
    p: int
    bases: tuple[tuple[Generator, ...], ...]
    differentials: tuple[SparseIntMatrix, ...]  # differentials[i-1] : degree i -> i-1

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]


def estimated_memory_mb(p: int) -> float:
    """Rough peak footprint of building and reducing Sym^(p), in MB.

    Calibrated on p = 5, 6 (measured 167 and 262 MB including the
    interpreter and compiled kernels).  For p >= 7 elimination fill-in
    dominates and this is only a lower bound.
    """
    gens = sum(lah(p + 1, k) for k in range(1, p + 2))
    nnz = sum(lah(p + 1, p + 1 - i) * i for i in range(p + 1))
    return 150 + (gens * 400 + nnz * 700) / 2**20


def check_size(p: int, large_p: bool = False) -> None:
    if p > DEFAULT_MAX_P and not large_p:
        raise SymError(
            f"p={p} exceeds the default range p <= {DEFAULT_MAX_P}; "
            f"pass large_p=True (CLI: --large-p), about {estimated_memory_mb(p):.0f} MB"
        )
    limit = os.environ.get(MEMORY_ENV)
    if limit and estimated_memory_mb(p) > float(limit):
        raise SymError(
            f"p={p} needs about {estimated_memory_mb(p):.0f} MB, "
            f"above {MEMORY_ENV}={limit}"
        )


def sym_complex(p: int, *, large_p: bool = False) -> SymComplex:
    check_size(p, large_p)
    bases = {i: enumerate_generators(p, i) for i in range(p + 1)}
    diffs = tuple(boundary_matrix(p, i, bases=bases) for i in range(1, p + 1))
    return SymComplex(p, tuple(tuple(bases[i]) for i in range(p + 1)), diffs)


@dataclass(frozen=True)
class SymHomology:
    p: int
    groups: tuple[HomologyResult, ...]

    @property
    def betti(self) -> list[int]:
        return [g.betti for g in self.groups]

    @property
    def torsion_free(self) -> bool:
        return all(not g.torsion for g in self.groups)

    @property
    def poincare(self) -> dict[int, int]:
        return {i: b for i, b in enumerate(self.betti) if b}


def homology(p: int, *, large_p: bool = False, **kw) -> SymHomology:
    """Integral homology of ``Sym_*^(p)``, in every degree unless ``max_degree`` is given."""
    if p < 0:
        raise SymError("p must be >= 0")
    if kw.get("max_degree") is not None and kw["max_degree"] < 0:
        raise SymError("max_degree must be >= 0")
    cx = sym_complex(p, large_p=large_p)
    groups = complex_homology(list(cx.differentials), cx.dims, **kw)
    return SymHomology(p, tuple(groups))


def format_poincare(coeffs: Mapping[int, int]) -> str:
    """``120*t^5+272*t^4+t^3`` style, highest degree first."""
    terms = []
    for d in sorted((d for d, c in coeffs.items() if c), reverse=True):
        c = coeffs[d]
        mono = "1" if d == 0 else "t" if d == 1 else f"t^{d}"
        if d == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms).replace("+-", "-") if terms else "0"


def connectivity_bound(p: int) -> int:
    return (2 * (p - 1)) // 3


def connectivity_check(p: int, hom: SymHomology | None = None, **kw) -> bool:
    """True iff ``H_i(Sym^(p)) = 0`` for ``0 <= i <= floor(2(p-1)/3)``."""
    if p < 1:
        raise SymError("connectivity is stated for p >= 1")
    if hom is None:
        hom = homology(p, max_degree=connectivity_bound(p), **kw)
    return all(hom.groups[i].is_zero for i in range(connectivity_bound(p) + 1))


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


class SymChain:
    """Integer combination of canonical generators of one ``Sym_i^(p)``."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[Generator, int] | None = None):
        self.p = p
        self.terms = {g: c for g, c in (terms or {}).items() if c}
        degs = {degree(g) for g in self.terms}
        if len(degs) > 1:
            raise SymError(f"mixed degrees {sorted(degs)} in one chain")

    @classmethod
    def from_raw(cls, p: int, raw_terms: Iterable[tuple[Iterable[Iterable[int]], int]]) -> "SymChain":
        acc: dict[Generator, int] = {}
        for raw, c in raw_terms:
            g, s = canonicalize(raw, p)
            acc[g] = acc.get(g, 0) + s * c
        return cls(p, acc)

    @classmethod
    def monomial(cls, *factors: Iterable[int]) -> "SymChain":
        g, s = canonicalize(factors)
        return cls(sum(len(f) for f in g) - 1, {g: s})

    @property
    def degree(self) -> int | None:
        for g in self.terms:
            return degree(g)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymChain):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __add__(self, other: "SymChain") -> "SymChain":
        if self.p != other.p:
            raise SymError("chains live in different complexes")
        acc = dict(self.terms)
        for g, c in other.terms.items():
            acc[g] = acc.get(g, 0) + c
        return SymChain(self.p, acc)

    def __neg__(self) -> "SymChain":
        return SymChain(self.p, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "SymChain") -> "SymChain":
        return self + (-other)

    def __rmul__(self, k: int) -> "SymChain":
        return SymChain(self.p, {g: k * c for g, c in self.terms.items()})

    def boundary(self) -> "SymChain":
        acc: dict[Generator, int] = {}
        for gen, c in self.terms.items():
            for g, s in face_terms(gen):
                acc[g] = acc.get(g, 0) + s * c
        return SymChain(self.p, acc)

    def vector(self, basis: Sequence[Generator]) -> dict[int, int]:
        index = {g: n for n, g in enumerate(basis)}
        return {index[g]: c for g, c in self.terms.items()}

    def __repr__(self) -> str:
        return f"SymChain(p={self.p}, {format_chain(self)})"


def format_generator(g: Generator) -> str:
    return " (x) ".join("".join(f"z{x}" for x in f) for f in g)


def format_chain(c: SymChain) -> str:
    if not c.terms:
        return "0"
    parts = []
    for g in sorted(c.terms):
        k = c.terms[g]
        coef = "" if k == 1 else "-" if k == -1 else f"{k}*"
        parts.append(f"{coef}{format_generator(g)}")
    return " + ".join(parts).replace("+ -", "- ")


def _relabel(gen: Generator, perm: Sequence[int]) -> tuple[Generator, int]:
    return _canon(tuple(tuple(perm[x] for x in f) for f in gen))


def sigma_action(perm: Sequence[int], chain: SymChain) -> SymChain:
    """Permute the variables: ``z_r -> z_perm[r]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(chain.p + 1)):
        raise SymError(f"{perm} is not a permutation of 0..{chain.p}")
    acc: dict[Generator, int] = {}
    for gen, c in chain.terms.items():
        g, s = _relabel(gen, perm)
        acc[g] = acc.get(g, 0) + s * c
    return SymChain(chain.p, acc)


def action_matrix(perm: Sequence[int], p: int, i: int,
                  basis: Sequence[Generator] | None = None) -> SparseIntMatrix:
    basis = basis if basis is not None else enumerate_generators(p, i)
    index = {g: n for n, g in enumerate(basis)}
    cols = []
    for gen in basis:
        g, s = _relabel(gen, perm)
        cols.append({index[g]: s})
    return SparseIntMatrix.from_columns(len(basis), cols)


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cyclic_shift(p: int, j: int) -> tuple[int, ...]:
    """Relabelling ``z_r -> z_(r - j mod p+1)``, the j-th power of the cyclic generator."""
    return tuple((r - j) % (p + 1) for r in range(p + 1))


def b_generator(p: int) -> SymChain:
    """The top-degree cycle ``sum_j (-1)^(jp) tau^j(z_0 z_1 ... z_p)``."""
    base = SymChain(p, {(tuple(range(p + 1)),): 1})
    out = SymChain(p)
    for j in range(p + 1):
        term = sigma_action(cyclic_shift(p, j), base)
        out = out + (term if (j * p) % 2 == 0 else -term)
    return out


def coset_representatives(p: int) -> list[tuple[int, ...]]:
    """Permutations fixing 0: one per left coset of the cyclic subgroup."""
    return [(0,) + rest for rest in itertools.permutations(range(1, p + 1))]


def b_orbit_matrix(p: int) -> SparseIntMatrix:
    """Columns ``sigma(b_p)`` for coset representatives, in ``Sym_p^(p)``'s basis."""
    basis = enumerate_generators(p, p)
    b = b_generator(p)
    return SparseIntMatrix.from_columns(
        len(basis), (sigma_action(s, b).vector(basis) for s in coset_representatives(p))
    )


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples, in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def standard_tensor(lam: Sequence[int]) -> Generator:
    """Consecutive indices, factor lengths ``lam`` in decreasing order."""
    lam = sorted((int(x) for x in lam), reverse=True)
    if any(x <= 0 for x in lam):
        raise SymError(f"partition parts must be positive: {lam}")
    out = []
    start = 0
    for part in lam:
        out.append(tuple(range(start, start + part)))
        start += part
    return tuple(out)


def rep_generator(lam: Sequence[int], kind: str = "alternating") -> SymChain:
    """Symmetrized (``trivial``) or antisymmetrized (``alternating``) standard tensor."""
    if kind not in ("alternating", "trivial"):
        raise SymError(f"kind must be 'alternating' or 'trivial', got {kind!r}")
    w = standard_tensor(lam)
    p = sum(len(f) for f in w) - 1
    acc: dict[Generator, int] = {}
    alt = kind == "alternating"
    for perm in itertools.permutations(range(p + 1)):
        g, s = _relabel(w, perm)
        if alt:
            s *= perm_sign(perm)
        acc[g] = acc.get(g, 0) + s
    return SymChain(p, acc)


def lowest_alternating_degree_formula(p: int) -> int:
    r = floor(sqrt(2 * p + 9 / 4) - 1 / 2)
    return p + 1 - r


def boxtimes(w: SymChain, v: SymChain) -> SymChain:
    """``W (x) V'`` with ``V``'s variables shifted past those of ``W``."""
    shift = w.p + 1
    p = w.p + v.p + 1
    acc: dict[Generator, int] = {}
    for gw, a in w.terms.items():
        for gv, b in v.terms.items():
            raw = gw + tuple(tuple(x + shift for x in f) for f in gv)
            g, s = _canon(raw)
            acc[g] = acc.get(g, 0) + s * a * b
    return SymChain(p, acc)


def block_swap_perm(p: int, q: int) -> tuple[int, ...]:
    """Relabelling taking ``V (x) W'`` indices to ``W (x) V'`` indices."""
    return tuple(r + p + 1 if r <= q else r - q - 1 for r in range(p + q + 2))
