"""Acceptance suite: one block per criterion, each check recorded for the summary.

Every tolerance here is exact (abelian group isomorphism or integer equality).
Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import itertools
from functools import lru_cache
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from symhom import chessboard as C
from symhom import delta_s as D
from symhom import hs_low as H
from symhom import sym_complex as S
from symhom.algebra import act, from_spec, parse_algebra, simple_tensor
from symhom.linalg import HomologyResult, SparseIntMatrix, direct_sum, rank, smith_diagonal

from algebras import SPECS, monomial_quotient
from oracles import all_maps, composable_pair, matrices, minor_gcds, morphisms


def group(free=0, *cyclic):
    """Z^free plus the listed cyclic summands, normalised to a divisor chain."""
    return direct_sum([HomologyResult(free)] + [HomologyResult(0, (d,)) for d in cyclic])


def z2(k):
    return (2,) * k


# ---------------------------------------------------------------------------
# 1. HS1 golden tables
# ---------------------------------------------------------------------------

TABLE_ONE = {
    "trunc:2": group(0, *z2(2)),
    "trunc:3": group(0, *z2(2)),
    "trunc:4": group(0, *z2(4)),
    "trunc:5": group(0, *z2(4)),
    "trunc:6": group(0, *z2(6)),
    "group:C2": group(0, *z2(2)),
    "group:C3": group(0),
    "group:C4": group(0, *z2(4)),
    "group:C5": group(0),
    "group:C6": group(0, *z2(6)),
}

TABLE_TWO = {
    "trunc:2,2": group(1, *z2(11)),
    "quat": group(0, *z2(8)),
    "group:C2xC2": group(0, *z2(12)),
    "group:C3xC3": group(0, *(3,) * 9),
    "group:S3": group(0, *z2(2)),
    # further rows of the same table
    "trunc:3,2": group(2, *z2(11), 6),
    "t^3,u^2,t^2u": group(2, *z2(10)),
    "trunc:3,3": group(4, *z2(7), *(6,) * 5),
    "trunc:2,4": group(3, *z2(20), 4),
    "trunc:2,2,2": group(6, *z2(42)),
    "trunc:4,3": group(6, *z2(19), 6, 12, 12),
    "trunc:2,2,3": group(11, *z2(45), *(6,) * 4),
    "group:C3xC2": group(0, *z2(6)),
}

# algebras with no shorthand spec string
CUSTOM = {"t^3,u^2,t^2u": lambda: from_spec(monomial_quotient((3, 2), [(2, 1)], "t^3,u^2,t^2u"))}

GOLDEN = {**TABLE_ONE, **TABLE_TWO}


@lru_cache(maxsize=None)
def algebra(spec):
    return CUSTOM[spec]() if spec in CUSTOM else parse_algebra(spec)


@pytest.mark.parametrize("spec", list(GOLDEN))
def test_c1_hs1_golden(spec, record):
    got = H.hs1(algebra(spec))
    assert record(1, spec, got == GOLDEN[spec]), f"{spec}: {got} != {GOLDEN[spec]}"


# ---------------------------------------------------------------------------
# 2. HS0 against the commutator quotient
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", list(GOLDEN))
def test_c2_hs0_commutator_quotient(spec, record):
    A = algebra(spec)
    assert record(2, spec, H.hs0(A) == H.commutator_quotient(A))


def test_c2_matrix_ring_hs0_vanishes(record):
    A = algebra("matrix:2")
    got = H.hs0(A)
    assert record(2, "matrix:2 is zero", got.is_zero and H.commutator_quotient(A).is_zero), str(got)


# ---------------------------------------------------------------------------
# 3. polynomial layers
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", range(11))
def test_c3_polynomial_layers(m, record):
    expected = group(0) if m < 2 else group(0, 2)
    assert record(3, f"m={m}", H.hs1_polynomial_layer(m) == expected)


@pytest.mark.parametrize("m", range(11, 19))
def test_c3_polynomial_layers_extended(m, record):
    assert record(3, f"m={m}", H.hs1_polynomial_layer(m) == group(0, 2), stretch=True)


# ---------------------------------------------------------------------------
# 4. Sym Poincare polynomials
# ---------------------------------------------------------------------------

POINCARE = {
    0: {0: 1},
    1: {1: 1},
    2: {1: 1, 2: 2},
    3: {2: 7, 3: 6},
    4: {3: 43, 4: 24},
    5: {3: 1, 4: 272, 5: 120},
    6: {4: 36, 5: 1847, 6: 720},
    7: {5: 829, 6: 13710, 7: 5040},
}


@lru_cache(maxsize=None)
def sym_homology(p):
    return S.homology(p, large_p=p > S.DEFAULT_MAX_P)


@pytest.mark.parametrize("p", range(6))
def test_c4_sym_poincare(p, record):
    h = sym_homology(p)
    ok = h.poincare == POINCARE[p] and h.torsion_free
    assert record(4, f"p={p}", ok), (h.poincare, [str(g) for g in h.groups])


def test_c4_sym_poincare_p6(record):
    h = sym_homology(6)
    ok = h.poincare == POINCARE[6] and h.torsion_free
    assert record(4, "p=6", ok, stretch=True), h.poincare


def test_c4_sym_poincare_p7(record, request):
    if not request.config.getoption("--runslow"):
        record(4, "p=7", None, stretch=True)
        pytest.skip("full p = 7 homology is opt-in; pass --runslow")
    try:
        h = sym_homology(7)
    except MemoryError:
        record(4, "p=7 (exact remainder out of reach)", False, stretch=True)
        raise
    ok = h.poincare == POINCARE[7] and h.torsion_free
    assert record(4, "p=7", ok, stretch=True), h.poincare


# ---------------------------------------------------------------------------
# 5. chessboard complex
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", range(5))
def test_c5_chessboard_matches_sym(p, record):
    chess = C.chessboard_complex(p + 1).homology()
    assert record(5, f"homology p={p}", chess == list(sym_homology(p).groups))


@pytest.mark.parametrize("p", range(5))
def test_c5_omega_bijective_chain_map(p, record):
    rep = C.omega_iso(p)
    assert record(5, f"omega p={p}", rep.bijective and rep.chain_map), rep.failures


# ---------------------------------------------------------------------------
# 6. connectivity
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", range(1, 7))
def test_c6_connectivity(p, record):
    h = sym_homology(p)
    low = [str(h.groups[i]) for i in range(S.connectivity_bound(p) + 1)]
    assert record(6, f"p={p}", S.connectivity_check(p, h)), low


def test_c6_connectivity_p7(record):
    # only the maps into degrees <= 4 need finishing
    bound = S.connectivity_bound(7)
    h = S.homology(7, large_p=True, max_degree=bound)
    assert len(h.groups) == bound + 1
    assert record(6, "p=7", S.connectivity_check(7, h)), [str(g) for g in h.groups]


# ---------------------------------------------------------------------------
# 7. representations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", range(1, 6))
def test_c7_b_orbit_rank(p, record):
    assert record(7, f"sigma(b) rank p={p}", rank(S.b_orbit_matrix(p)) == factorial(p))


@pytest.mark.parametrize("n", range(2, 8))
def test_c7_rep_vanishing(n, record):
    # partitions of p + 1 = n into at least two parts
    bad = []
    for lam in S.partitions(n):
        if len(lam) == 1:
            continue
        alt = S.rep_generator(lam, "alternating")
        triv = S.rep_generator(lam, "trivial")
        evens = [x for x in lam if x % 2 == 0]
        if alt.is_zero() != (len(set(lam)) < len(lam)):
            bad.append(("alternating", lam))
        if triv.is_zero() != (len(set(evens)) < len(evens)):
            bad.append(("trivial", lam))
        if not alt.boundary().is_zero():
            bad.append(("not a cycle", lam))
    assert record(7, f"partitions of {n}", not bad), bad


# ---------------------------------------------------------------------------
# 8. resolution stages
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(4))
def test_c8_resolution_exact(n, record):
    stages = H.resolution_stage_matrices(n)
    cert = stages.certify()
    sizes = (1, D.count(n, 0), D.count(n, 2), D.count(n, 3) + D.count(n, 0))
    assert record(8, f"n={n}", all(cert.values()) and stages.sizes == sizes), cert


# ---------------------------------------------------------------------------
# 9. property suites
# ---------------------------------------------------------------------------

def test_c9_associativity_exhaustive(record):
    maps = all_maps(2)
    by_target = {}
    for f in maps:
        by_target.setdefault(f.target, []).append(f)
    ok = all(
        D.compose(D.compose(f, g), h) == D.compose(f, D.compose(g, h))
        for f in maps for g in by_target[f.source] for h in by_target[g.source]
    )
    assert record(9, "associativity ranks <= 2", ok)


@settings(max_examples=200, deadline=None)
@given(st.data())
def associativity_random(data):
    h = data.draw(morphisms())
    g = data.draw(morphisms(source=h.target))
    f = data.draw(morphisms(source=g.target))
    assert D.compose(D.compose(f, g), h) == D.compose(f, D.compose(g, h))


def test_c9_associativity_random(record):
    # hypothesis raises on a counterexample, so reaching the record line is a pass
    associativity_random()
    record(9, "associativity random ranks <= 4", True)


def test_c9_count_vs_enumeration(record):
    ok = all(
        len(D.enumerate_morphisms(n, m)) == D.count(n, m) == factorial(n + m + 1) // factorial(m)
        for n in range(7) for m in range(7 - n)
    )
    assert record(9, "count vs enumeration n+m <= 6", ok)


def test_c9_epi_mono_recomposition(record):
    ok = True
    for f in all_maps(3):
        epi, mono = D.decompose_epi_mono(f)
        ok &= epi.is_epi and mono.is_mono and D.compose(mono, epi) == f
    assert record(9, "epi-mono recomposition ranks <= 3", ok)


ACT_ALGEBRAS = ("group:S3", "quat", "trunc:2,2", "matrix:2")


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ACT_ALGEBRAS), composable_pair(), st.data())
def act_functorial(spec, fg, data):
    A = algebra(spec)
    f, g = fg
    coords = st.lists(st.integers(-2, 2), min_size=A.dim, max_size=A.dim)
    t = simple_tensor(A, [data.draw(coords) for _ in range(g.source + 1)])
    assert act(A, D.compose(f, g), t) == act(A, f, act(A, g, t))


def test_c9_act_functorial(record):
    act_functorial()
    record(9, "act functoriality", True)


def test_c9_boundaries_compose_to_zero(record):
    bad = []
    for spec in sorted(set(SPECS) | set(GOLDEN)):
        cx = H.partial_complex(algebra(spec), check=False)
        if not (cx.boundary1 @ cx.boundary2).is_zero():
            bad.append(spec)
    assert record(9, "d1 d2 = 0 for every algebra", not bad), bad


def test_c9_square_zero_sym_and_chess(record):
    ok = True
    for p in range(6):
        d = S.sym_complex(p).differentials
        ok &= all((d[i] @ d[i + 1]).is_zero() for i in range(len(d) - 1))
    ok &= all(C.chess_differentials_square_zero(n) for n in range(1, 7))
    assert record(9, "d d = 0 for Sym p <= 5 and boards n <= 6", ok)


@settings(max_examples=200, deadline=None)
@given(matrices)
def snf_oracle(m):
    diag = smith_diagonal(SparseIntMatrix.from_dense(m))
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert list(itertools.accumulate(diag, lambda a, b: a * b)) == minor_gcds(m)


def test_c9_snf_oracle(record):
    snf_oracle()
    record(9, "SNF divisor chain and minor gcds", True)


# ---------------------------------------------------------------------------
# 10. cyclic comparison
# ---------------------------------------------------------------------------

HC1 = {2: group(0, 2), 3: group(0, 6), 4: group(0, 2, 12)}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_c10_hc1(n, record):
    got = H.hc(algebra(f"trunc:{n}"), 1)
    assert record(10, f"HC1 trunc:{n}", got == HC1[n]), str(got)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_c10_gamma_image(n, record):
    rep = H.gamma_induced_map(algebra(f"trunc:{n}"))
    image = [x for x in rep.image if x != 1]
    ok = rep.gamma1_cycles and rep.gamma1_boundaries and rep.gamma2.holds and bool(image)
    if n == 4:
        ok &= sorted(image) == [2, 2]
    assert record(10, f"gamma image trunc:{n} = {image}", ok), rep
