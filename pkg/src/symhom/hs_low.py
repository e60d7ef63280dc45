"""Symmetric homology in degrees 0 and 1, and the cyclic comparison map.

The low-degree complex is ``A <- A^(x)3 <- A^(x)4 (+) A`` with

    d1(a (x) b (x) c) = abc - cba
    d2(a (x) b (x) c (x) d) = ab (x) c (x) d + d (x) ca (x) b
                              + bca (x) 1 (x) d + d (x) bc (x) a
    d2(a) = 1 (x) a (x) 1

Tensor powers use the lexicographic basis: ``e_{i_0} (x) ... (x) e_{i_{n-1}}``
has index ``sum_k i_k d^(n-1-k)``.  In the domain of ``d2`` the ``d^4`` tensor
columns come first, then ``d`` columns for the extra copy of ``A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import AlgebraError, AlgebraZ, cyclic_monoid_ring
from .delta_s import compose, enumerate_morphisms, make_morphism
from .linalg import (
    ComplexError,
    HomologyResult,
    SparseIntMatrix,
    direct_sum,
    homology_at,
)
from .linalg import lattice


class VerificationError(RuntimeError):
    """An identity that must hold by construction failed (indicates a bug)."""


# ---------------------------------------------------------------------------
# tensor bookkeeping
# ---------------------------------------------------------------------------


def tensor_index(d: int, idx: Sequence[int]) -> int:
    out = 0
    for i in idx:
        out = out * d + i
    return out


def tensor_digits(d: int, n: int, index: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def _grade_array(A: AlgebraZ, n: int) -> np.ndarray:
    """Grade of every basis tensor of ``A^(x)n`` in lexicographic order."""
    g = A.check_layerable()
    table = np.asarray(g.table, dtype=np.int64)
    base = np.asarray(g.basis_grades, dtype=np.int64)
    out = np.array([A.grade_identity()], dtype=np.int64)
    for _ in range(n):
        out = table[out[:, None], base[None, :]].ravel()
    return out


class _Products:
    """Memoized sparse products of basis elements."""

    def __init__(self, A: AlgebraZ):
        self.A = A
        self.cache: dict[tuple[int, ...], dict[int, int]] = {}

    def __call__(self, *idx: int) -> dict[int, int]:
        got = self.cache.get(idx)
        if got is None:
            got = self.A.product_of_basis(idx)
            self.cache[idx] = got
        return got


def _tensor_terms(d: int, parts: Sequence[dict[int, int]]):
    """Expand a tensor of sparse elements into ``(index, coeff)`` pairs."""
    items = [list(p.items()) for p in parts]
    for combo in itertools.product(*items):
        idx = 0
        c = 1
        for k, v in combo:
            idx = idx * d + k
            c *= v
        yield idx, c


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialComplex:
    """Low-degree complex ``C0 <-d1- C1 <-d2- C2``, possibly one layer of it.

    ``rows0``, ``rows1`` and ``cols2`` give the global basis index of each
    local row/column; entries of ``cols2`` at or above ``split`` index the
    extra copy of ``A`` (offset by ``split``).
    """

    algebra: AlgebraZ
    kind: str  # "symmetric" or "cyclic"
    boundary1: SparseIntMatrix
    boundary2: SparseIntMatrix
    rows0: tuple[int, ...]
    rows1: tuple[int, ...]
    cols2: tuple[int, ...]
    split: int
    layer: str | None = None

    @property
    def tensor_degrees(self) -> tuple[int, int, int]:
        return (1, 3, 4) if self.kind == "symmetric" else (1, 2, 3)

    def describe_c1(self, j: int) -> str:
        return _format_tensor(self.algebra, self.tensor_degrees[1], self.rows1[j])

    def describe_c2(self, j: int) -> str:
        g = self.cols2[j]
        if g >= self.split:
            return f"[{self.algebra.labels[g - self.split]}]"
        return _format_tensor(self.algebra, self.tensor_degrees[2], g)


def _format_tensor(A: AlgebraZ, n: int, index: int) -> str:
    return " (x) ".join(A.labels[i] for i in tensor_digits(A.dim, n, index))


def _select(A: AlgebraZ, layer: str | None, n: int) -> list[int]:
    d = A.dim
    if layer is None:
        return list(range(d**n))
    g = A.grading
    u = g.index(layer)
    return np.flatnonzero(_grade_array(A, n) == u).tolist()


def _assemble(rows: Sequence[int], columns: Sequence[dict[int, int]]) -> SparseIntMatrix:
    pos = {r: k for k, r in enumerate(rows)}
    out = []
    for col in columns:
        loc: dict[int, int] = {}
        for r, v in col.items():
            if v:
                k = pos.get(r)
                if k is None:
                    raise VerificationError(f"boundary leaves its layer (row {r})")
                loc[k] = loc.get(k, 0) + v
        out.append(loc)
    return SparseIntMatrix.from_columns(len(rows), out)


def _accumulate(col: dict[int, int], terms, sign: int = 1) -> None:
    for idx, c in terms:
        col[idx] = col.get(idx, 0) + sign * c


def _sym_d1(A: AlgebraZ, prod: _Products, idx: int) -> dict[int, int]:
    a, b, c = tensor_digits(A.dim, 3, idx)
    col: dict[int, int] = {}
    _accumulate(col, prod(a, b, c).items())
    _accumulate(col, prod(c, b, a).items(), -1)
    return col


def _sym_d2(A: AlgebraZ, prod: _Products, idx: int, split: int) -> dict[int, int]:
    d = A.dim
    col: dict[int, int] = {}
    unit = A.unit_sparse
    if idx >= split:
        x = idx - split
        _accumulate(col, _tensor_terms(d, [unit, {x: 1}, unit]))
        return col
    a, b, c, e = tensor_digits(d, 4, idx)
    _accumulate(col, _tensor_terms(d, [prod(a, b), {c: 1}, {e: 1}]))
    _accumulate(col, _tensor_terms(d, [{e: 1}, prod(c, a), {b: 1}]))
    _accumulate(col, _tensor_terms(d, [prod(b, c, a), unit, {e: 1}]))
    _accumulate(col, _tensor_terms(d, [{e: 1}, prod(b, c), {a: 1}]))
    return col


def _cyc_d1(A: AlgebraZ, prod: _Products, idx: int) -> dict[int, int]:
    a, b = tensor_digits(A.dim, 2, idx)
    col: dict[int, int] = {}
    _accumulate(col, prod(a, b).items())
    _accumulate(col, prod(b, a).items(), -1)
    return col


def _cyc_d2(A: AlgebraZ, prod: _Products, idx: int, split: int) -> dict[int, int]:
    d = A.dim
    col: dict[int, int] = {}
    unit = A.unit_sparse
    if idx >= split:
        x = idx - split
        _accumulate(col, _tensor_terms(d, [unit, {x: 1}]))
        _accumulate(col, _tensor_terms(d, [{x: 1}, unit]), -1)
        return col
    a, b, c = tensor_digits(d, 3, idx)
    _accumulate(col, _tensor_terms(d, [prod(a, b), {c: 1}]))
    _accumulate(col, _tensor_terms(d, [{a: 1}, prod(b, c)]), -1)
    _accumulate(col, _tensor_terms(d, [prod(c, a), {b: 1}]))
    return col


def _build(A: AlgebraZ, kind: str, layer: str | None, check: bool) -> PartialComplex:
    d = A.dim
    n1, n2 = (3, 4) if kind == "symmetric" else (2, 3)
    d1f, d2f = (_sym_d1, _sym_d2) if kind == "symmetric" else (_cyc_d1, _cyc_d2)
    prod = _Products(A)
    rows0 = _select(A, layer, 1)
    rows1 = _select(A, layer, n1)
    split = d**n2
    cols2 = _select(A, layer, n2) + [split + x for x in rows0]
    b1 = _assemble(rows0, (d1f(A, prod, i) for i in rows1))
    b2 = _assemble(rows1, (d2f(A, prod, i, split) for i in cols2))
    cx = PartialComplex(A, kind, b1, b2, tuple(rows0), tuple(rows1), tuple(cols2), split, layer)
    if check:
        try:
            from .linalg.homology import check_composable

            check_composable(b1, b2)
        except ComplexError as exc:
            where = cx.describe_c2(exc.witness) if exc.witness is not None else "?"
            raise VerificationError(
                f"{kind} complex of {A!r}: d1 o d2 != 0 at {where}"
            ) from None
    return cx


def partial_complex(A: AlgebraZ, *, layer: str | None = None, check: bool = True) -> PartialComplex:
    """The complex computing symmetric homology in degrees 0 and 1."""
    if layer is not None:
        A.check_layerable()
    return _build(A, "symmetric", layer, check)


def cyclic_partial_complex(A: AlgebraZ, *, layer: str | None = None,
                           check: bool = True) -> PartialComplex:
    """``A <- A^(x)2 <- A^(x)3 (+) A`` computing cyclic homology in degrees 0 and 1."""
    if layer is not None:
        A.check_layerable()
    return _build(A, "cyclic", layer, check)


def _h(cx: PartialComplex, degree: int) -> HomologyResult:
    if degree == 0:
        return homology_at(SparseIntMatrix.zero(0, cx.boundary1.rows), cx.boundary1, check=False)
    if degree == 1:
        return homology_at(cx.boundary1, cx.boundary2, check=False)
    raise ValueError("only degrees 0 and 1 are available")


def _layered_sum(A: AlgebraZ, degree: int, kind: str) -> HomologyResult:
    return direct_sum([
        _h(_build(A, kind, u, True), degree) for u in A.layer_labels(include_zero=True)
    ])


def _can_split(A: AlgebraZ) -> bool:
    return A.grading is not None and A.grading.is_commutative


def hs0(A: AlgebraZ, *, split: bool | None = None) -> HomologyResult:
    """Degree-0 symmetric homology."""
    if split is None:
        split = _can_split(A)
    if split:
        return _layered_sum(A, 0, "symmetric")
    return _h(partial_complex(A), 0)


def hs1(A: AlgebraZ, *, split: bool | None = None) -> HomologyResult:
    """Degree-1 symmetric homology.

    When ``A`` carries a commutative grading the complex is split into layers
    first (``split=None`` decides automatically); the answer is the same.
    """
    if split is None:
        split = _can_split(A)
    if split:
        return _layered_sum(A, 1, "symmetric")
    return _h(partial_complex(A), 1)


def hs(A: AlgebraZ, degree: int, **kw) -> HomologyResult:
    if degree == 0:
        return hs0(A, **kw)
    if degree == 1:
        return hs1(A, **kw)
    raise ValueError("symmetric homology is available in degrees 0 and 1 only")


def hs_layered(A: AlgebraZ, u: str, degree: int) -> HomologyResult:
    """Homology of the ``u``-layer of the low-degree complex."""
    A.check_layerable()
    if u not in A.grading.elements:
        raise AlgebraError(f"unknown layer {u!r}; known: {list(A.grading.elements)}")
    return _h(partial_complex(A, layer=u), degree)


def all_layers(A: AlgebraZ, degree: int = 1, include_zero: bool = True
               ) -> list[tuple[str, HomologyResult]]:
    """Every layer in the constructor's label order (the zero grade last)."""
    return [(u, hs_layered(A, u, degree)) for u in A.layer_labels(include_zero=include_zero)]


def hs1_polynomial_layer(m: int) -> HomologyResult:
    """Degree-1 symmetric homology of ``Z[t]`` in the ``t^m`` layer."""
    if m < 0:
        raise ValueError("m must be >= 0")
    A = cyclic_monoid_ring(m + 2, m + 1)
    label = "1" if m == 0 else "s" if m == 1 else f"s^{m}"
    return hs_layered(A, label, 1)


def hc(A: AlgebraZ, degree: int) -> HomologyResult:
    """Cyclic homology in degree 0 or 1 from the small cyclic complex."""
    return _h(cyclic_partial_complex(A), degree)


def commutator_quotient(A: AlgebraZ) -> HomologyResult:
    """``A`` modulo the two-sided ideal generated by all ``xy - yx``.

    Computed densely from the spanning set ``e_i (e_j e_k - e_k e_j) e_l``,
    independently of the partial complex.
    """
    d = A.dim
    gens = []
    for j, k in itertools.combinations(range(d), 2):
        comm = A.mul_sparse({j: 1}, {k: 1})
        for key, v in A.mul_sparse({k: 1}, {j: 1}).items():
            comm[key] = comm.get(key, 0) - v
        comm = {key: v for key, v in comm.items() if v}
        if not comm:
            continue
        for i in range(d):
            left = A.mul_sparse({i: 1}, comm)
            for l in range(d):
                x = A.mul_sparse(left, {l: 1})
                if x:
                    gens.append(A.to_dense(x))
    if not gens:
        return HomologyResult(d)
    diag = lattice.smith_diagonal_dense(lattice.transpose(gens, d))
    return HomologyResult.from_diagonal(d - len(diag), diag)


# ---------------------------------------------------------------------------
# cyclic comparison
# ---------------------------------------------------------------------------


def gamma1_matrix(A: AlgebraZ) -> SparseIntMatrix:
    """``a (x) b -> a (x) b (x) 1`` as a map ``A^(x)2 -> A^(x)3``."""
    d = A.dim
    unit = A.unit_sparse
    cols = []
    for idx in range(d * d):
        a, b = tensor_digits(d, 2, idx)
        col: dict[int, int] = {}
        _accumulate(col, _tensor_terms(d, [{a: 1}, {b: 1}, unit]))
        cols.append(col)
    return SparseIntMatrix.from_columns(d**3, cols)


def gamma2_matrix(A: AlgebraZ) -> SparseIntMatrix:
    """The printed degree-2 comparison map ``A^(x)3 (+) A -> A^(x)4 (+) A``."""
    d = A.dim
    unit = A.unit_sparse
    prod = _Products(A)
    split = d**4
    cols = []
    for idx in range(d**3 + d):
        col: dict[int, int] = {}
        if idx >= d**3:
            x = idx - d**3
            _accumulate(col, _tensor_terms(d, [unit, unit, {x: 1}, unit]), -1)
            col[split + x] = col.get(split + x, 0) + 4
        else:
            a, b, c = tensor_digits(d, 3, idx)
            ea, eb, ec = {a: 1}, {b: 1}, {c: 1}
            _accumulate(col, _tensor_terms(d, [ea, eb, ec, unit]))
            _accumulate(col, _tensor_terms(d, [unit, ea, prod(b, c), unit]), -1)
            _accumulate(col, _tensor_terms(d, [unit, prod(c, a), eb, unit]))
            _accumulate(col, _tensor_terms(d, [unit, unit, prod(a, b, c), unit]))
            _accumulate(col, _tensor_terms(d, [eb, prod(c, a), unit, unit]), -1)
            for k, v in prod(a, b, c).items():
                col[split + k] = col.get(split + k, 0) - 2 * v
            for k, v in prod(c, a, b).items():
                col[split + k] = col.get(split + k, 0) - v
        cols.append(col)
    return SparseIntMatrix.from_columns(split + d, cols)


@dataclass
class ChainMapCheck:
    holds: bool
    failing_columns: int
    total_columns: int
    witness: str | None = None
    witness_defect: str | None = None


def check_gamma2(A: AlgebraZ, sym: PartialComplex | None = None,
                 cyc: PartialComplex | None = None) -> ChainMapCheck:
    """Compare ``d2^S o gamma2`` with ``gamma1 o d2^C`` column by column."""
    sym = sym or partial_complex(A)
    cyc = cyc or cyclic_partial_complex(A)
    left = sym.boundary2 @ gamma2_matrix(A)
    right = gamma1_matrix(A) @ cyc.boundary2
    bad = [j for j in range(left.cols) if left.columns[j] != right.columns[j]]
    witness = defect = None
    if bad:
        j = bad[0]
        witness = cyc.describe_c2(j)
        diff = dict(left.columns[j])
        for r, v in right.columns[j]:
            diff[r] = diff.get(r, 0) - v
        defect = " + ".join(
            f"{v}*[{_format_tensor(A, 3, r)}]" for r, v in sorted(diff.items()) if v
        )
    return ChainMapCheck(not bad, len(bad), left.cols, witness, defect)


def _presentation(cx: PartialComplex) -> lattice.Presentation:
    b1 = cx.boundary1.to_dense()
    n = cx.boundary1.cols
    w = lattice.kernel_basis(b1, n) if b1 else lattice.identity(n)
    b2 = cx.boundary2.to_dense()
    return lattice.quotient(w, b2, n)


@dataclass
class GammaReport:
    algebra: str
    hc1: list[int]
    hs1: list[int]
    matrix: list[list[int]]  # rows: HS1 generators, cols: HC1 generators
    image: list[int]
    gamma1_cycles: bool
    gamma1_boundaries: bool
    gamma2: ChainMapCheck
    hc1_generators: list[str] = field(default_factory=list)

    @property
    def image_order(self) -> int | None:
        if any(x == 0 for x in self.image):
            return None
        out = 1
        for x in self.image:
            out *= x
        return out


def _format_vector(A: AlgebraZ, n: int, vec: Sequence[int]) -> str:
    parts = [f"{v}*[{_format_tensor(A, n, i)}]" for i, v in enumerate(vec) if v]
    return " + ".join(parts) if parts else "0"


def gamma_induced_map(A: AlgebraZ) -> GammaReport:
    """The map ``HC_1(A) -> HS_1(A)`` induced by ``gamma1``.

    Certifies that cycles go to cycles and boundaries to boundaries before
    reading off the matrix on the chosen homology generators.
    """
    sym = partial_complex(A)
    cyc = cyclic_partial_complex(A)
    g1 = gamma1_matrix(A)
    # d1^S o gamma1 == d1^C
    cycles_ok = (sym.boundary1 @ g1) == cyc.boundary1
    pres_c = _presentation(cyc)
    pres_s = _presentation(sym)
    # gamma1 of every d2^C column must be a d2^S boundary
    bounds_ok = True
    for col in (g1 @ cyc.boundary2).columns:
        vec = [0] * g1.rows
        for r, v in col:
            vec[r] = v
        if any(pres_s.coordinates(vec)):
            bounds_ok = False
            break
    matrix_cols = []
    for gen in pres_c.generators:
        img = g1.apply({i: v for i, v in enumerate(gen) if v})
        vec = [0] * g1.rows
        for r, v in img.items():
            vec[r] = v
        matrix_cols.append(pres_s.coordinates(vec))
    rows = len(pres_s.orders)
    matrix = [[c[i] for c in matrix_cols] for i in range(rows)]
    image = lattice.subgroup_invariants(matrix_cols, pres_s.orders) if matrix_cols else []
    return GammaReport(
        algebra=A.name or repr(A),
        hc1=list(pres_c.orders),
        hs1=list(pres_s.orders),
        matrix=matrix,
        image=image,
        gamma1_cycles=cycles_ok,
        gamma1_boundaries=bounds_ok,
        gamma2=check_gamma2(A, sym, cyc),
        hc1_generators=[_format_vector(A, 2, g) for g in pres_c.generators],
    )


# ---------------------------------------------------------------------------
# the resolution stages themselves
# ---------------------------------------------------------------------------

_RHO = (make_morphism(2, [[0, 1, 2]]), make_morphism(2, [[2, 1, 0]]))
_ALPHA = tuple(
    make_morphism(3, b)
    for b in ([[0, 1], [2], [3]], [[3], [2, 0], [1]], [[1, 2, 0], [], [3]], [[3], [1, 2], [0]])
)
_BETA = make_morphism(0, [[], [0], []])


@dataclass(frozen=True)
class ResolutionStages:
    n: int
    epsilon: SparseIntMatrix  # Z <- Mor(n,0)
    rho: SparseIntMatrix  # Mor(n,0) <- Mor(n,2)
    alpha_beta: SparseIntMatrix  # Mor(n,2) <- Mor(n,3) (+) Mor(n,0)
    sizes: tuple[int, int, int, int]

    def certify(self) -> dict[str, bool]:
        from .linalg import rank

        zero = SparseIntMatrix.zero(0, 1)
        h_k = homology_at(zero, self.epsilon, check=False)
        return {
            "epsilon_rho_zero": (self.epsilon @ self.rho).is_zero(),
            "rho_alpha_beta_zero": (self.rho @ self.alpha_beta).is_zero(),
            "epsilon_onto": h_k.is_zero,
            "exact_at_0": homology_at(self.epsilon, self.rho).is_zero,
            "exact_at_2": homology_at(self.rho, self.alpha_beta).is_zero,
            "ranks_add_up": rank(self.epsilon) + rank(self.rho) == self.sizes[1],
        }


def _postcompose(maps: Sequence[tuple[object, int]], source: list, target: list) -> SparseIntMatrix:
    index = {f: k for k, f in enumerate(target)}
    cols = []
    for psi in source:
        col: dict[int, int] = {}
        for g, sign in maps:
            k = index[compose(g, psi)]
            col[k] = col.get(k, 0) + sign
        cols.append(col)
    return SparseIntMatrix.from_columns(len(target), cols)


def resolution_stage_matrices(n: int) -> ResolutionStages:
    """Matrices of the first resolution stages evaluated at ``[n]``."""
    if not 0 <= n <= 4:
        raise ValueError("resolution stages are supported for 0 <= n <= 4")
    m0 = enumerate_morphisms(n, 0)
    m2 = enumerate_morphisms(n, 2)
    m3 = enumerate_morphisms(n, 3)
    eps = SparseIntMatrix.from_columns(1, ({0: 1} for _ in m0))
    rho = _postcompose([(_RHO[0], 1), (_RHO[1], -1)], m2, m0)
    alpha = _postcompose([(g, 1) for g in _ALPHA], m3, m2)
    beta = _postcompose([(_BETA, 1)], m0, m2)
    return ResolutionStages(n, eps, rho, alpha.hstack(beta), (1, len(m0), len(m2), len(m3) + len(m0)))
