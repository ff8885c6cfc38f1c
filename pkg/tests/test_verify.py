import numpy as np
import pytest

from perfcode import fqlin
from perfcode._config import CapExceeded
from perfcode.components import component_basis
from perfcode.family import LambdaCode, build_family, default_choice, switch
from perfcode.gf import field
from perfcode.hamming import build
from perfcode.verify import (
    PerfectCodeOracle,
    VerifyReport,
    cosets_disjoint,
    embedding_check,
    explicit_oracle,
    hamming_oracle,
    is_perfect,
    member_count,
    min_distance,
    sphere_packing_ok,
)


def ex2(code):
    L = LambdaCode.from_strings(3, ["111", "222"], "ternary")
    ch = default_choice(code)
    return L, ch, build_family(code, ch, L)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4)])
def test_hamming_perfect(q, m, backend):
    rep = is_perfect(hamming_oracle(build(q, m)))
    assert rep.passed and rep.samples == q ** build(q, m).n


def test_explicit_hamming_perfect(h15, backend):
    words = np.concatenate(list(h15.codeword_blocks()))
    assert is_perfect(explicit_oracle(h15.field, 15, words)).passed


def test_deleted_codeword_detected(h15, backend):
    words = np.concatenate(list(h15.codeword_blocks()))
    gone = words[1000]
    rep = is_perfect(explicit_oracle(h15.field, 15, np.delete(words, 1000, axis=0)))
    assert not rep.passed
    x = fqlin.as_vector(rep.counterexample, h15.field)
    assert fqlin.hamming_distance(x, gone) <= 1
    assert rep.details["members_in_ball"] == 0


def test_predicate_oracle(h7):
    O = PerfectCodeOracle(h7.field, 7, "predicate", predicate=h7.contains)
    assert is_perfect(O).passed
    bad = PerfectCodeOracle(h7.field, 7, "predicate", predicate=lambda x: False)
    assert not is_perfect(bad).passed


def test_sampled_mode_records_seed(h31):
    rep = is_perfect(hamming_oracle(h31), "sampled", samples=5000, seed=11)
    assert rep.passed and rep.seed == 11 and rep.samples == 5000
    text = rep.to_text()
    assert text.startswith("perfect sampled pass 11 5000 ")
    assert "# rng: numpy.PCG64" in text


def test_exhaustive_cap(h31):
    with pytest.raises(CapExceeded, match="sampled"):
        is_perfect(hamming_oracle(h31))


def test_report_fields():
    r = VerifyReport("perfect", "exhaustive", False, None, 12, 3.4, "0101")
    assert r.to_text() == "perfect exhaustive fail - 12 3 0101\n"
    assert not r


def test_min_distance_examples(h7):
    assert min_distance(h7, h7.field, linear=True) == 3
    F3 = field(3)
    assert min_distance(np.array([[1, 1, 1], [2, 2, 2], [0, 0, 0]], np.uint8), F3) == 3


def test_min_distance_switched(h13):
    T = switch(ex2(h13)[2])
    assert min_distance(T, h13.field) == 3


def test_radius_method_matches_pairwise(rng):
    from perfcode.verify import _pairwise_min, _radius_min

    F = field(3)
    for _ in range(20):
        V = np.unique(rng.integers(0, 3, (int(rng.integers(2, 40)), 6)).astype(np.uint8), axis=0)
        if len(V) < 2:
            continue
        assert _radius_min(V, F) == _pairwise_min(V)


def test_cosets_disjoint_examples(h13):
    L, ch, fam = ex2(h13)
    a, b = fam.entries[0].component, fam.entries[1].component
    assert not cosets_disjoint(a, a).passed
    shifted = a.with_rep(fqlin.add(a.rep, a.basis[0], h13.field))
    assert not cosets_disjoint(a, shifted).passed
    assert cosets_disjoint(a, b).passed
    assert cosets_disjoint(a, b, "sampled", samples=500).passed
    assert not cosets_disjoint(a, shifted, "sampled", samples=10).passed


def test_sphere_packing(h15, h13):
    assert sphere_packing_ok(hamming_oracle(h15))
    assert sphere_packing_ok(hamming_oracle(h13))
    T = switch(ex2(h13)[2])
    assert member_count(T) == 59049 and sphere_packing_ok(T)
    words = np.concatenate(list(h15.codeword_blocks()))
    assert not sphere_packing_ok(explicit_oracle(h15.field, 15, words[1:]))


def test_embedding_ex2(h13):
    L, ch, fam = ex2(h13)
    rep = embedding_check(L, ch, switch(fam), strong=True)
    assert rep.passed and rep.details["strong"] == "pass"
    assert rep.details["strong_scanned"] == 27


def test_embedding_ex1_strong(h15):
    L = LambdaCode.from_strings(2, ["1111"])
    ch = default_choice(h15)
    rep = embedding_check(L, ch, switch(build_family(h15, ch, L)), strong=True)
    assert rep.passed and rep.details["strong"] == "pass"


def test_embedding_ex3_not_strong(h31):
    L = LambdaCode.from_strings(2, ["111111"], "binary-extended", 1)
    ch = default_choice(h31, 1)
    rep = embedding_check(L, ch, switch(build_family(h31, ch, L)), strong=True)
    assert rep.passed
    assert rep.details["strong"] == "fail"
    assert rep.details["first_unexpected"] == "110001"


def test_embedding_empty(h7):
    L = LambdaCode.from_strings(2, [], length=3)
    ch = default_choice(h7)
    rep = embedding_check(L, ch, hamming_oracle(h7), strong=True)
    assert rep.passed and rep.details["strong"] == "pass"


def test_embedding_detects_missing(h15):
    L = LambdaCode.from_strings(2, ["1111"])
    rep = embedding_check(L, default_choice(h15), hamming_oracle(h15))
    assert not rep.passed


def test_bijection_audit(h31):
    L = LambdaCode.from_strings(2, ["11111"])
    T = switch(build_family(h31, default_choice(h31), L))
    ok, cex = T.bijection_audit(samples=3000, seed=4)
    assert ok and cex is None
