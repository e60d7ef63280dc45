import itertools
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symhom.linalg import (
    ComplexError, HomologyResult, SparseIntMatrix, complex_homology, direct_sum, homology_at,
    rank, smith_diagonal, smith_form, verify_complex,
)
from symhom.linalg import _kernels, lattice
from symhom.linalg.elimination import divisor_chain
from symhom.linalg.snf import smith_reduction

from oracles import det, matrices, minor_gcds


@settings(max_examples=250, deadline=None)
@given(matrices)
def test_snf_against_minor_gcds(m):
    diag = smith_diagonal(SparseIntMatrix.from_dense(m))
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert all(d > 0 for d in diag)
    prods = list(itertools.accumulate(diag, lambda a, b: a * b))
    assert prods == minor_gcds(m)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_sparse_engine_matches_dense_transforms(m):
    M = SparseIntMatrix.from_dense(m)
    assert smith_diagonal(M) == lattice.smith_diagonal_dense(m)
    assert smith_diagonal(M, exact_only=True) == lattice.smith_diagonal_dense(m)
    d, u, v, uinv = lattice.smith_with_transforms(m)
    assert lattice.matmul(lattice.matmul(u, m), v) == d
    assert lattice.matmul(u, uinv) == lattice.identity(len(m))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_matches_numpy_float_rank(m):
    assert rank(SparseIntMatrix.from_dense(m)) == np.linalg.matrix_rank(np.array(m, float))


def random_sparse(rng, rows, cols, density, values=(1, -1, 1, -1, 2, 3)):
    cols_ = []
    for _ in range(cols):
        cols_.append({r: rng.choice(values) for r in range(rows) if rng.random() < density})
    return SparseIntMatrix.from_columns(rows, cols_)


@pytest.mark.parametrize("seed", range(12))
def test_kernels_agree(seed):
    rng = random.Random(seed)
    m = random_sparse(rng, rng.randint(5, 60), rng.randint(5, 60), 0.12)
    from symhom.linalg.snf import _csc
    ip, ix, da = _csc(m)
    a = _kernels.unit_reduce(m.rows, ip, ix, da, kernel="numba")
    b = _kernels.unit_reduce(m.rows, ip, ix, da, kernel="numpy")
    assert a.status == b.status == _kernels.OK
    assert a.pivot_rows.tolist() == b.pivot_rows.tolist()
    assert a.residual == b.residual
    assert smith_diagonal(m, kernel="numba") == smith_diagonal(m, kernel="numpy") \
        == smith_diagonal(m, exact_only=True)


def test_pivot_rows_form_unimodular_block():
    rng = random.Random(7)
    m = random_sparse(rng, 30, 40, 0.1)
    from symhom.linalg.snf import _csc
    res = _kernels.unit_reduce(m.rows, *_csc(m))
    rows, cols = res.pivot_rows.tolist(), res.pivot_cols.tolist()
    block = m.select(rows, cols).to_dense()
    assert abs(det(block)) == 1


def test_overflow_falls_back_to_exact(monkeypatch):
    m = SparseIntMatrix.from_dense([[1, 7, 0], [1, 0, 9], [0, 1, 1]])
    from symhom.linalg.snf import _csc
    res = _kernels.unit_reduce(m.rows, *_csc(m), limit=5)
    assert res.status == _kernels.OVERFLOW
    expected = smith_diagonal(m, exact_only=True)
    monkeypatch.setattr(_kernels, "DEFAULT_LIMIT", 5)
    assert smith_diagonal(m) == expected == lattice.smith_diagonal_dense(m.to_dense())


def test_huge_entries_use_exact_engine():
    big = 10**30
    m = SparseIntMatrix.from_dense([[big, 0], [0, 2 * big]])
    assert smith_diagonal(m) == [big, 2 * big]


def test_kernel_env_selection(monkeypatch):
    monkeypatch.setenv("SYMHOM_KERNEL", "numpy")
    assert _kernels.kernel_name() == "numpy"
    monkeypatch.setenv("SYMHOM_KERNEL", "bogus")
    with pytest.raises(ValueError):
        _kernels.kernel_name()


def test_divisor_chain_normalises():
    assert divisor_chain([4, 6]) == [2, 12]
    assert divisor_chain([2, 3, 1]) == [1, 1, 6]


def test_smith_form_padding_and_zero():
    m = SparseIntMatrix.from_dense([[2, 0, 0], [0, 0, 0]])
    assert smith_form(m) == [2, 0]
    assert smith_diagonal(SparseIntMatrix.zero(3, 3)) == []


def test_homology_result_rendering():
    h = HomologyResult(2, (2, 2, 6))
    assert str(h) == "Z^2 + (Z/2)^2 + Z/6"
    assert h.machine() == [2, 2, 6, 0, 0]
    assert str(HomologyResult(0)) == "0" and HomologyResult(0).is_zero
    with pytest.raises(ValueError):
        HomologyResult(0, (2, 3))
    assert direct_sum([HomologyResult(1, (2,)), HomologyResult(0, (3,))]) == HomologyResult(1, (6,))


def test_circle_and_projective_plane():
    # simplicial circle: 3 vertices, 3 edges
    d1 = SparseIntMatrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    hs = complex_homology([d1], [3, 3])
    assert [str(h) for h in hs] == ["Z", "Z"]
    # RP^2 cellular: Z <-0- Z <-2- Z
    hs = complex_homology([SparseIntMatrix.from_dense([[0]]), SparseIntMatrix.from_dense([[2]])],
                          [1, 1, 1])
    assert [str(h) for h in hs] == ["Z", "Z/2", "0"]


def test_composability_witness():
    a = SparseIntMatrix.from_dense([[1, 1]])
    b = SparseIntMatrix.from_dense([[1], [0]])
    with pytest.raises(ComplexError) as info:
        homology_at(a, b)
    assert info.value.witness == 0
    assert not verify_complex([a, b])


def test_clearing_does_not_change_homology():
    rng = random.Random(3)
    # a random acyclic-ish complex from a product of random matrices: d1 d2 = 0
    for _ in range(10):
        k = rng.randint(2, 6)
        a = random_sparse(rng, 8, k, 0.4).to_dense()
        b = random_sparse(rng, k, 9, 0.4).to_dense()
        # d2 = columns spanning ker(a) images: use kernel basis of a times random
        ker = lattice.kernel_basis(a, k)
        d1 = SparseIntMatrix.from_dense(a)
        if not ker or not ker[0]:
            continue
        mix = [[rng.randint(-1, 1) for _ in range(5)] for _ in range(len(ker[0]))]
        d2 = SparseIntMatrix.from_dense(lattice.matmul(ker, mix))
        assert verify_complex([d1, d2])
        assert complex_homology([d1, d2], [8, k, 5]) == complex_homology(
            [d1, d2], [8, k, 5], clear=False)


def test_text_roundtrip(tmp_path):
    m = SparseIntMatrix.from_dense([[0, 3], [-2, 0], [1, 1]])
    assert SparseIntMatrix.from_text(m.to_text()) == m
    p = tmp_path / "m.txt"
    m.write(p)
    assert SparseIntMatrix.read(p) == m
    assert m.transpose().transpose() == m
    assert (m.transpose() @ m).to_dense() == lattice.matmul(lattice.transpose(m.to_dense()), m.to_dense())


def test_quotient_presentation():
    # W = Z^2, B = <(2,0), (0,6)>  ->  Z/2 + Z/6
    pres = lattice.quotient(lattice.identity(2), [[2, 0], [0, 6]], 2)
    assert pres.orders == [2, 6]
    assert lattice.subgroup_invariants([[1, 3]], [2, 6]) == [2]
    assert lattice.subgroup_invariants([[1, 1]], [2, 6]) == [6]
