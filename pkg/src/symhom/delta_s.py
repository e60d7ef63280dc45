"""Morphisms of the category Delta S (and Delta S_+) in tensor notation.

A morphism ``[n] -> [m]`` is stored as ``m + 1`` blocks of indices; block ``i``
lists, in order, the points of ``[n]`` sent to ``i``.  Every index of
``{0, ..., n}`` occurs exactly once.  The object ``[-1]`` is the empty set;
morphisms out of it have only empty blocks.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence


class MorphismError(ValueError):
    """Raised for malformed or incomposable morphisms."""


@dataclass(frozen=True)
class DeltaSMorphism:
    source: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def target(self) -> int:
        return len(self.blocks) - 1

    @property
    def is_epi(self) -> bool:
        return all(self.blocks)

    @property
    def is_mono(self) -> bool:
        return all(len(b) <= 1 for b in self.blocks)

    @property
    def is_iso(self) -> bool:
        return self.is_epi and self.is_mono and self.source == self.target

    @property
    def phi(self) -> tuple[int, ...]:
        """The underlying Delta map, as the non-decreasing list of images."""
        return tuple(i for i, b in enumerate(self.blocks) for _ in b)

    @property
    def order(self) -> tuple[int, ...]:
        """The total ordering of the source (the permutation part ``g``)."""
        return tuple(itertools.chain.from_iterable(self.blocks))

    def __matmul__(self, other: "DeltaSMorphism") -> "DeltaSMorphism":
        return compose(self, other)

    def __str__(self) -> str:
        return format_morphism(self)


def make_morphism(source: int, blocks: Iterable[Iterable[int]]) -> DeltaSMorphism:
    blocks = tuple(tuple(int(i) for i in b) for b in blocks)
    if source < -1:
        raise MorphismError(f"source rank must be >= -1, got {source}")
    flat = [i for b in blocks for i in b]
    if source == -1:
        if flat:
            raise MorphismError("morphisms out of [-1] have only empty blocks")
        return DeltaSMorphism(-1, blocks)
    if not blocks:
        raise MorphismError(f"[{source}] has no morphism to [-1]")
    seen = set()
    for i in flat:
        if not 0 <= i <= source:
            raise MorphismError(f"index {i} out of range for source [{source}]")
        if i in seen:
            raise MorphismError(f"duplicate index {i}")
        seen.add(i)
    if len(seen) != source + 1:
        missing = sorted(set(range(source + 1)) - seen)
        raise MorphismError(f"missing indices {missing}")
    return DeltaSMorphism(source, blocks)


def identity(n: int) -> DeltaSMorphism:
    return DeltaSMorphism(n, tuple((i,) for i in range(n + 1)))


def iota(m: int) -> DeltaSMorphism:
    """The unique morphism ``[-1] -> [m]`` of Delta S_+."""
    return DeltaSMorphism(-1, ((),) * (m + 1))


def compose(outer: DeltaSMorphism, inner: DeltaSMorphism) -> DeltaSMorphism:
    """``outer o inner``: substitute inner's blocks for the variables of outer."""
    if outer.source != inner.target:
        raise MorphismError(
            f"maps incomposable: outer source [{outer.source}] "
            f"!= inner target [{inner.target}]"
        )
    ib = inner.blocks
    blocks = tuple(tuple(itertools.chain.from_iterable(ib[j] for j in b)) for b in outer.blocks)
    return DeltaSMorphism(inner.source, blocks)


def count(n: int, m: int) -> int:
    """Number of morphisms ``[n] -> [m]``, which is ``(m+n+1)!/m!``."""
    if n < 0 or m < 0:
        raise ValueError("ranks must be non-negative")
    return factorial(m + n + 1) // factorial(m)


def _compositions(total: int, parts: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    # reverse lexicographic order (largest first part first), each part in [lo, hi]
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(hi, total), lo - 1, -1):
        rest = total - first
        if rest < lo * (parts - 1) or rest > hi * (parts - 1):
            continue
        for tail in _compositions(rest, parts - 1, lo, hi):
            yield (first,) + tail


def enumerate_morphisms(n: int, m: int, kind: str = "all") -> list[DeltaSMorphism]:
    """All morphisms ``[n] -> [m]`` of the requested kind.

    Order: block-size compositions in decreasing lexicographic order (all of
    the source in the first block comes first), then index permutations
    lexicographically within each composition.
    """
    if kind not in ("all", "epi", "mono", "iso"):
        raise ValueError(f"unknown filter {kind!r}")
    if kind == "iso" and n != m:
        return []
    lo = 1 if kind in ("epi", "iso") else 0
    hi = 1 if kind in ("mono", "iso") else n + 1
    out = []
    for sizes in _compositions(n + 1, m + 1, lo, hi):
        cuts = list(itertools.accumulate(sizes))
        for perm in itertools.permutations(range(n + 1)):
            blocks = []
            start = 0
            for c in cuts:
                blocks.append(perm[start:c])
                start = c
            out.append(DeltaSMorphism(n, tuple(blocks)))
    return out


def decompose_epi_mono(f: DeltaSMorphism) -> tuple[DeltaSMorphism, DeltaSMorphism]:
    """Factor ``f = mono o epi`` with ``mono`` an order-preserving injection."""
    nonempty = [i for i, b in enumerate(f.blocks) if b]
    epi = DeltaSMorphism(f.source, tuple(b for b in f.blocks if b))
    pos = {i: k for k, i in enumerate(nonempty)}
    mono = DeltaSMorphism(
        len(nonempty) - 1,
        tuple((pos[i],) if i in pos else () for i in range(len(f.blocks))),
    )
    return epi, mono


def monoidal_product(f: DeltaSMorphism, g: DeltaSMorphism) -> DeltaSMorphism:
    """Disjoint union ``f (.) g``; ``identity(-1)`` is the unit."""
    shift = f.source + 1
    blocks = f.blocks + tuple(tuple(i + shift for i in b) for b in g.blocks)
    return DeltaSMorphism(f.source + g.source + 1, blocks)


def permutation_morphism(perm: Sequence[int]) -> DeltaSMorphism:
    """Automorphism of ``[n]`` written ``x_{g(0)} (x) ... (x) x_{g(n)}``."""
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(len(perm))):
        raise MorphismError(f"{perm} is not a permutation")
    return DeltaSMorphism(len(perm) - 1, tuple((i,) for i in perm))


def tau(n: int) -> DeltaSMorphism:
    """The cyclic generator ``(0, n, n-1, ..., 1)``."""
    return permutation_morphism([(i - 1) % (n + 1) for i in range(n + 1)])


def block_transposition(n: int, m: int) -> DeltaSMorphism:
    """Swap the leading block of size ``n+1`` with the trailing one of size ``m+1``."""
    return permutation_morphism(list(range(n + 1, n + m + 2)) + list(range(n + 1)))


_HEADER = re.compile(r"^\s*n\s*=\s*(-?\d+)\s*:\s*(.*)$", re.S)


def parse_morphism(text: str) -> DeltaSMorphism:
    """Parse ``[[],[3,0],[2,4,1]]`` or ``n=4:[[...]]``."""
    text = text.strip()
    match = _HEADER.match(text)
    source = None
    if match:
        source = int(match.group(1))
        text = match.group(2)
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MorphismError(f"cannot parse morphism {text!r}: {exc}") from None
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise MorphismError(f"expected a list of index lists, got {text!r}")
    if source is None:
        source = sum(len(b) for b in blocks) - 1
    return make_morphism(source, blocks)


def format_morphism(f: DeltaSMorphism) -> str:
    body = "[" + ",".join("[" + ",".join(map(str, b)) + "]" for b in f.blocks) + "]"
    if f.source == -1:
        return f"n=-1:{body}"
    return body
