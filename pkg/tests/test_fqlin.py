import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfcode import fqlin
from perfcode.gf import field

from oracles import rank_mod_p


def V(s, q=2):
    return fqlin.as_vector(s, field(q))


def test_distance_examples():
    assert fqlin.hamming_distance(V("000"), V("000")) == 0
    assert fqlin.hamming_distance(V("1110"), V("0011")) == 3
    assert fqlin.hamming_distance(V("111", 3), V("222", 3)) == 3


def test_distance_length_mismatch():
    with pytest.raises(fqlin.DimensionError):
        fqlin.hamming_distance(V("01"), V("011"))


def test_support_examples():
    assert fqlin.support(V("000")) == []
    assert fqlin.support(V("102", 3)) == [1, 3]
    assert fqlin.support(V("01101")) == [2, 3, 5]


def test_rank_examples():
    F2, F3 = field(2), field(3)
    assert fqlin.rank(np.eye(4, dtype=np.uint8), F2) == 4
    assert fqlin.rank(np.zeros((3, 4), dtype=np.uint8), F2) == 0
    r1, r2 = V("1021", 3), V("0112", 3)
    M = np.stack([r1, r2, fqlin.add(r1, r2, F3)])
    assert fqlin.rank(M, F3) == 2


def test_in_span_examples():
    F = field(2)
    b1, b2 = V("1100"), V("0110")
    ok, w = fqlin.in_span(np.zeros(4, np.uint8), [b1, b2], F)
    assert ok and not w.any()
    ok, w = fqlin.in_span(fqlin.add(b1, b2, F), [b1, b2], F)
    assert ok and w.tolist() == [1, 1]
    assert fqlin.in_span(V("1000"), [V("0100"), V("0010")], F) == (False, None)


def test_nullspace_examples():
    F = field(2)
    assert fqlin.nullspace_basis(np.eye(3, dtype=np.uint8), F).shape == (0, 3)
    N = fqlin.nullspace_basis(np.array([[1, 1, 1]], np.uint8), F)
    assert N.tolist() == [[1, 1, 0], [1, 0, 1]]


def test_nullspace_of_hamming_check(h15):
    assert fqlin.nullspace_basis(h15.H, h15.field).shape == (11, 15)


matrices = st.sampled_from([2, 3, 4, 5, 7, 8, 9]).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.integers(1, 5).flatmap(
            lambda r: st.integers(1, 6).flatmap(
                lambda c: st.lists(
                    st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r
                )
            )
        ),
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_transpose_and_nullspace(args):
    q, rows = args
    F = field(q)
    M = np.array(rows, dtype=np.uint8)
    r = fqlin.rank(M, F)
    assert r == fqlin.rank(M.T.copy(), F)
    N = fqlin.nullspace_basis(M, F)
    assert N.shape[0] == M.shape[1] - r
    for b in N:
        assert not fqlin.matvec(M, b, F).any()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.lists(st.lists(st.integers(0, q - 1), min_size=5, max_size=5), min_size=5, max_size=5),
    )
))
def test_rank_matches_independent_elimination(args):
    q, rows = args
    assert fqlin.rank(np.array(rows, np.uint8), field(q)) == rank_mod_p(rows, q)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4, 9]).flatmap(
    lambda q: st.tuples(
        st.just(q),
        st.lists(st.lists(st.integers(0, q - 1), min_size=5, max_size=5), min_size=0, max_size=4),
        st.lists(st.integers(0, q - 1), min_size=5, max_size=5),
    )
))
def test_in_span_iff_rank_unchanged(args):
    q, basis, v = args
    F = field(q)
    v = np.array(v, dtype=np.uint8)
    B = np.array(basis, dtype=np.uint8).reshape(-1, 5)
    ok, w = fqlin.in_span(v, B, F)
    rank_b = fqlin.rank(B, F)
    assert ok == (rank_b == fqlin.rank(np.vstack([B, v]), F))
    if ok:
        assert np.array_equal(fqlin.combine(w, B, F) if len(B) else np.zeros(5, np.uint8), v)


def test_complement_checks_membership(h13, rng):
    F = h13.field
    G = h13.generator()[:4]
    D = fqlin.complement_checks(G, F, h13.n)
    for _ in range(50):
        x = rng.integers(0, 3, 13).astype(np.uint8)
        assert (not fqlin.matvec(D, x, F).any()) == fqlin.in_span(x, G, F)[0]
