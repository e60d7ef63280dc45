import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from symhom import delta_s as D
from symhom.algebra import (
    AlgebraError, act, cyclic_monoid_ring, from_spec, matrix_ring, integers, named_group,
    parse_algebra, read_spec, simple_tensor, to_spec, truncated_polynomial, write_spec,
)

from algebras import SPECS, load
from oracles import composable_pair


@pytest.mark.parametrize("spec", SPECS)
def test_associative_and_unital(spec):
    A = load(spec)
    e = [A.basis(i) for i in range(A.dim)]
    for x in e:
        assert A.mul(A.unit, x) == x == A.mul(x, A.unit)
    for x, y, z in itertools.product(e, repeat=3):
        assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))


@pytest.mark.parametrize("spec,dim", [
    ("trunc:3,2", 6), ("group:S3", 6), ("group:C2xC2", 4), ("group:Q8", 8), ("quat", 4),
    ("matrix:2", 4), ("monoid:4,3", 4), ("Z", 1),
])
def test_dimensions(spec, dim):
    assert load(spec).dim == dim


def test_quaternion_relations():
    A = load("quat")
    one, i, j, k = (A.basis(n) for n in range(4))
    minus_one = tuple(-c for c in one)
    assert A.mul(i, i) == A.mul(j, j) == A.mul(k, k) == minus_one
    assert A.mul(A.mul(i, j), k) == minus_one
    assert not A.is_commutative


def test_cyclic_monoid_relation():
    A = cyclic_monoid_ring(5, 3)
    s = A.basis(A.labels.index("s"))
    acc = A.unit
    for _ in range(5):
        acc = A.mul(acc, s)
    s3 = A.unit
    for _ in range(3):
        s3 = A.mul(s3, s)
    assert acc == s3
    assert A.labels[0] == "1"


def test_truncation_kills_top_power():
    A = truncated_polynomial([3])
    t = A.basis(1)
    assert A.mul(A.mul(t, t), t) == (0, 0, 0)


def test_matrix_units():
    A = matrix_ring(integers(), 2)
    assert not A.is_commutative
    assert A.unit.count(1) == 2


@pytest.mark.parametrize("spec", ["trunc:3,2", "group:S3", "quat", "monoid:4,3"])
def test_spec_roundtrip(spec, tmp_path):
    A = load(spec)
    B = from_spec(json.loads(json.dumps(to_spec(A))))
    assert B.dim == A.dim and B.labels == A.labels and B.unit == A.unit
    assert all(B.basis_product(i, j) == A.basis_product(i, j)
               for i in range(A.dim) for j in range(A.dim))
    path = tmp_path / "alg.json"
    write_spec(A, path)
    C = parse_algebra(f"file:{path}")
    assert C.mult == A.mult


@pytest.mark.parametrize("bad", ["trunc:x", "group:C0", "group:D5", "nonsense", "file:/nonexistent"])
def test_bad_specs(bad):
    with pytest.raises((AlgebraError, OSError)):
        parse_algebra(bad)


def test_non_associative_spec_rejected():
    spec = to_spec(load("trunc:2"))
    spec["sc"] = [[1, 1, 0, 1], [0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]
    with pytest.raises(AlgebraError):
        from_spec(spec)


def test_act_example():
    A = load("trunc:3")
    t = A.basis(1)
    f = D.parse_morphism("[[1,0],[2]]")
    out = act(A, f, simple_tensor(A, [t, t, A.unit]))
    assert out.factors == (A.mul(t, t), A.unit)
    empty = act(A, D.parse_morphism("[[],[0]]"), simple_tensor(A, [t]))
    assert empty.factors == (A.unit, t)


ALGS = {s: load(s) for s in ("group:S3", "quat", "trunc:2,2")}


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(ALGS)), composable_pair(), st.data())
def test_act_is_functorial(spec, fg, data):
    A = ALGS[spec]
    f, g = fg
    coords = st.lists(st.integers(-2, 2), min_size=A.dim, max_size=A.dim)
    t = simple_tensor(A, [data.draw(coords) for _ in range(g.source + 1)])
    assert act(A, D.compose(f, g), t) == act(A, f, act(A, g, t))
    assert act(A, D.identity(g.source), t) == t


def test_group_labels_and_grading():
    A = named_group("C4")
    assert A.labels == ("1", "g", "g^2", "g^3")
    assert A.layer_labels() == ["1", "g", "g^2", "g^3"]
