import random

import pytest

import corpus
import oracles
from hyperbricks import PreconditionError
from hyperbricks.hypergraph import Hypergraph, relabel
from hyperbricks.lp import verify_farkas
from hyperbricks.matching import enumerate_perfect_matchings
from hyperbricks.tightcut import list_tight_cuts
from hyperbricks.uniform import (Multiplicity, _system, check_uniformable, is_uniformable, multiply,
                                 non_uniformable_certificate, tight_cut_residue, zero_residue_check)


def S(*vs):
    return frozenset(str(v) for v in vs)


def test_check_uniformable_examples(F1, F2, F3):
    m = check_uniformable(F1)
    assert m.r == 3 and set(m.m.values()) == {1} and m.validate(F1)
    m = check_uniformable(F2)
    assert m.r == 2 and set(m.m.values()) == {1}
    assert check_uniformable(F3) is None


def test_certificate_for_non_uniformable(F3):
    y = non_uniformable_certificate(F3)
    A, b = _system(F3)
    assert y is not None and verify_farkas(A, b, y)


def test_serialization(F2):
    assert check_uniformable(F2).to_dict(F2) == {"r": 2, "m": {v: 1 for v in F2.vertices}}


def test_weighted_witness():
    hg = Hypergraph.from_edges([[1, 2], [1, 3, 4], [2, 3, 4]])
    m = check_uniformable(hg)
    assert m.validate(hg)
    assert m.m["1"] == m.m["2"]
    assert m.m["3"] + m.m["4"] == m.m["2"]


def test_preconditions():
    with pytest.raises(PreconditionError):
        check_uniformable(Hypergraph(("1",), ()))
    with pytest.raises(PreconditionError, match="degenerate"):
        check_uniformable(Hypergraph.from_edges([[1], [2]]))


def test_agrees_with_brute_force_search():
    rng = random.Random(21)
    from hyperbricks.generators import random_mixed
    seen = 0
    while seen < 80:
        hg = random_mixed(rng, rng.randint(2, 5), rng.randint(1, 3), singleton_weight=0.1)
        if hg is None or all(len(e) == 1 for e in hg.edges):
            continue
        seen += 1
        m = check_uniformable(hg)
        assert (m is not None) == (oracles.uniformable(hg) is not None)
        if m is not None:
            assert m.validate(hg) and min(m.m.values()) >= 1 and m.r >= 2


def test_witness_valid_on_corpus():
    for hg in corpus.all_uniformable():
        m = check_uniformable(hg)
        assert m is not None and m.validate(hg)


def test_invariance_under_relabeling_and_multiplication():
    rng = random.Random(2)
    for hg in corpus.uniformable()[:50]:
        names = [f"w{i}" for i in range(hg.n)]
        rng.shuffle(names)
        assert is_uniformable(relabel(hg, dict(zip(hg.vertices, names))))
        mult = {v: rng.randint(1, 3) for v in hg.vertices}
        assert is_uniformable(multiply(hg, mult))


def test_multiply_examples(F2, F4):
    assert multiply(F4, {"1": 1, "2": 1, "3": 1}) == F4
    doubled = multiply(F4, {"1": 2})
    assert doubled.vertices == ("1a", "1b", "2", "3")
    assert doubled.edges == (S("1a", "1b", 2, 3),)
    c6 = multiply(F2, {"1": 2})
    assert c6.n == 7 and len(enumerate_perfect_matchings(c6)) == 2
    with pytest.raises(PreconditionError):
        multiply(F4, {"1": 0})


def test_multiplying_by_witness_gives_uniform_hypergraph():
    for hg in corpus.uniformable()[:60]:
        m = check_uniformable(hg)
        big = multiply(hg, m.m)
        assert big.is_uniform() and big.rank() == m.r


def test_residue_examples(F1, F2):
    m1 = check_uniformable(F1)
    assert tight_cut_residue(F1, m1, S(2, 3)) == 2
    assert tight_cut_residue(F1, m1, S(4, 5)) == 2
    assert tight_cut_residue(F2, check_uniformable(F2), S(1, 2, 3)) == 1
    with pytest.raises(PreconditionError, match="not tight"):
        tight_cut_residue(F1, m1, S(1, 2, 3))


def test_residue_on_every_tight_cut_of_the_corpus():
    for hg in corpus.all_uniformable():
        mult = check_uniformable(hg)
        for tc in list_tight_cuts(hg):
            k = tight_cut_residue(hg, mult, tc.shore)
            assert 1 <= k <= mult.r - 1
            assert k % mult.r == mult.weight(tc.shore) % mult.r
            for e in hg.edges:
                if e & tc.shore and e - tc.shore:
                    assert mult.weight(e & tc.shore) == k


def test_zero_residue_examples(F1):
    m = check_uniformable(F1)
    rep = zero_residue_check(F1, m, S(1, 2, 3))
    assert rep.witness == (2, 3)
    assert dict(rep.intersections) == {(0, 1): 0, (2, 3): 2}
    empty = zero_residue_check(F1, m, S())
    assert all(c == 0 for _, c in empty.intersections) and empty.witness is None
    rep = zero_residue_check(F1, m, S(2, 3, 6))
    assert all(c != 1 for _, c in rep.intersections)
    with pytest.raises(PreconditionError):
        zero_residue_check(F1, m, S(2, 3))


def test_zero_residue_on_corpus():
    for hg in corpus.uniformable()[:60]:
        mult = check_uniformable(hg)
        for shore in oracles.all_shores(hg):
            if mult.weight(shore) % mult.r == 0:
                rep = zero_residue_check(hg, mult, shore)
                assert rep.witness is not None


def test_multiplicity_object_rejects_bad_witness(F1):
    assert not Multiplicity({v: 1 for v in F1.vertices}, 4).validate(F1)
