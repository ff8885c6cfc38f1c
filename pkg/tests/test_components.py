import itertools

import numpy as np
import pytest

from perfcode import fqlin
from perfcode.components import (
    ComponentError,
    component,
    component_basis,
    in_component,
    in_joint,
    line_subcode,
    random_joint_element,
    theorem1_holds,
    theorem2_holds,
    triple_span_basis,
)
from perfcode.hamming import build
from perfcode.pg import line_through, pencil

from oracles import rank_mod_p, rref_mod_p, span, weight3_codewords

# dim R_i from the rank of the brute-force weight-3 codewords through i
FROZEN_DIMS = {(2, 3): 3, (2, 4): 7, (3, 3): 8}


@pytest.mark.parametrize("q,m", sorted(FROZEN_DIMS))
def test_dimension_frozen(q, m):
    code = build(q, m)
    for i in range(1, code.n + 1):
        assert component_basis(code, i).dimension == FROZEN_DIMS[q, m]


@pytest.mark.parametrize("q,m", sorted(FROZEN_DIMS))
def test_pencil_route_equals_triple_route(q, m):
    code = build(q, m)
    brute = list(weight3_codewords(q, m))
    for i in range(1, code.n + 1):
        ours = component_basis(code, i).basis
        assert np.array_equal(ours, triple_span_basis(code, i))
        ref = rref_mod_p([t for t in brute if t[i - 1] == 1], q)
        assert [tuple(r) for r in ours.tolist()] == ref


def test_basis_in_code(h31):
    for i in (1, 16, 31):
        comp = component_basis(h31, i)
        assert all(not h31.syndrome(b).any() for b in comp.basis)
        assert fqlin.rank(comp.basis, h31.field) == comp.dimension == 15


@pytest.mark.parametrize("q,m,size", [(2, 4, 1), (3, 3, 2), (2, 3, 1)])
def test_line_subcode_brute_force(q, m, size):
    code = build(q, m)
    for line in pencil(1, code):
        basis = line_subcode(code, line)
        assert basis.shape[0] == size
        # every vector supported on the line with zero syndrome
        brute = []
        for vals in itertools.product(range(q), repeat=len(line)):
            x = np.zeros(code.n, np.uint8)
            x[[p - 1 for p in line]] = vals
            if x.any() and not code.syndrome(x).any():
                brute.append(tuple(x.tolist()))
        assert rank_mod_p(brute, q) == size
        assert span(basis.tolist(), q) - {(0,) * code.n} == set(brute)
        assert all(fqlin.weight(b) == 3 for b in basis)
        assert min(sum(1 for d in v if d) for v in brute) == 3


def test_in_component_examples(h15):
    comp = component_basis(h15, 3)
    assert in_component(comp, comp.rep)
    assert in_component(comp, fqlin.add(comp.rep, comp.basis[0], h15.field))
    members = span(comp.basis.tolist(), 2)
    outsider = next(w for w in h15.codewords() if tuple(w.tolist()) not in members)
    assert not in_component(comp, outsider)


def test_component_rejects_non_codeword(h7):
    with pytest.raises(ComponentError):
        component(h7, 1, fqlin.unit(7, 1))


def test_single_anchor_examples(h15):
    assert theorem1_holds(h15, 4, np.zeros(15, np.uint8)) == (True, None)
    for t in h15.triples_at(4):
        assert theorem1_holds(h15, 4, t.codeword)[0]


def test_single_anchor_rejects_outside(h15):
    with pytest.raises(ComponentError):
        theorem1_holds(h15, 1, next(t.codeword for t in h15.triples_at(2) if t.codeword[0] == 0))


@pytest.mark.parametrize("q,m", [(2, 4), (3, 3), (2, 5)])
def test_single_anchor_random(q, m, rng):
    code = build(q, m)
    for _ in range(200):
        i = int(rng.integers(1, code.n + 1))
        u = component_basis(code, i).random_element(rng)
        assert theorem1_holds(code, i, u) == (True, None)


def test_two_anchor_examples(h15):
    i, j = 1, 2
    assert theorem2_holds(h15, i, j, np.zeros(15, np.uint8))[0]
    lij = set(line_through(i, j, h15))
    for t in h15.triples_at(i):
        if not (set(t.support) - {i}) & lij:
            assert theorem2_holds(h15, i, j, t.codeword)[0]


@pytest.mark.parametrize("q,m", [(2, 4), (3, 3)])
def test_two_anchor_random(q, m, rng):
    code = build(q, m)
    for _ in range(20):
        i, j = (int(v) for v in rng.choice(np.arange(1, code.n + 1), 2, replace=False))
        for _ in range(20):
            u = random_joint_element(code, i, j, rng)
            assert theorem2_holds(code, i, j, u) == (True, None)


def test_two_anchor_same_anchor(h15):
    with pytest.raises(ComponentError):
        theorem2_holds(h15, 3, 3, np.zeros(15, np.uint8))


def test_coset_intersection_iff_difference_in_ri(h7):
    """(R_i+u) meets (R_i+u') iff u-u' in R_i, by listing the cosets."""
    words = list(h7.codewords())
    for i in (1, 5):
        comp = component_basis(h7, i)
        R = span(comp.basis.tolist(), 2)
        for u, v in itertools.combinations(words, 2):
            cu = {tuple((np.array(r) + u) % 2) for r in R}
            cv = {tuple((np.array(r) + v) % 2) for r in R}
            meets = bool(cu & cv)
            assert meets == in_component(comp.with_rep(v), u)


def test_coset_elements(h13):
    comp = component(h13, 5, h13.generator()[0])
    elems = np.concatenate(list(comp.elements()))
    assert elems.shape[0] == comp.size == 3**8
    assert len({e.tobytes() for e in elems}) == comp.size
    assert all(in_component(comp, e) for e in elems[::97])
