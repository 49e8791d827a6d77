import random

import pytest

import corpus
import oracles
from hyperbricks import BudgetExceeded
from hyperbricks.hypergraph import Hypergraph, relabel
from hyperbricks.matching import (enumerate_perfect_matchings, find_uncovered_edge, is_matching,
                                  is_matching_covered, is_perfect_matching, matching_invariants)
from hyperbricks.uniform import check_uniformable, multiply


def test_enumerate_examples(F1, F2, F4):
    assert enumerate_perfect_matchings(F1) == [frozenset({0, 1}), frozenset({2, 3})]
    pms = enumerate_perfect_matchings(F2)
    assert len(pms) == 2
    for pm in pms:
        assert len(pm) == 3 and is_perfect_matching(F2, pm)
    assert enumerate_perfect_matchings(F4) == [frozenset({0})]


def test_no_perfect_matching_gives_empty_list():
    assert enumerate_perfect_matchings(Hypergraph.from_edges([[1, 2], [2, 3]])) == []


def test_enumeration_matches_brute_force():
    for hg in corpus.all_uniformable()[:120]:
        if hg.m > 14:
            continue
        assert enumerate_perfect_matchings(hg) == oracles.perfect_matchings(hg)


def test_parallel_edges_give_distinct_matchings():
    hg = Hypergraph.from_edges([[1, 2], [1, 2]])
    assert enumerate_perfect_matchings(hg) == [frozenset({0}), frozenset({1})]


def test_matchings_are_valid_and_uniform_sizes():
    for hg in corpus.all_uniformable()[:150]:
        pms = enumerate_perfect_matchings(hg)
        for pm in pms:
            assert is_matching(hg, pm) and is_perfect_matching(hg, pm)
            assert set().union(*(hg.edges[i] for i in pm)) == set(hg.vertices)
        if hg.is_uniform():
            assert all(hg.n == hg.rank() * len(pm) for pm in pms)


def test_budget_is_a_hard_error(F2):
    big = Hypergraph.from_edges([[i, j] for i in range(8) for j in range(8, 16)])
    with pytest.raises(BudgetExceeded):
        enumerate_perfect_matchings(big, budget=100)


def test_is_matching_covered_examples(F1, F3):
    assert is_matching_covered(F1)
    assert is_matching_covered(F3)
    extra = Hypergraph(F1.vertices, F1.edges + (frozenset({"1", "2"}),))
    assert not is_matching_covered(extra)
    assert find_uncovered_edge(extra) == 4
    assert not is_matching_covered(Hypergraph.from_edges([[1, 2, 3], [4, 5, 6]]))
    assert not is_matching_covered(Hypergraph(("1",), ()))


def test_is_matching_covered_against_oracle():
    rng = random.Random(3)
    from hyperbricks.generators import random_mixed
    seen = 0
    while seen < 60:
        hg = random_mixed(rng, rng.randint(3, 7), rng.randint(1, 3))
        if hg is None or hg.m > 12:
            continue
        seen += 1
        assert is_matching_covered(hg) == oracles.matching_covered(hg)


def test_matching_invariants_examples(F1, F2, F4):
    assert matching_invariants(F4).to_dict() == {"nu": 1, "tau": 1, "rho": 1}
    inv = matching_invariants(F1)
    assert (inv.nu, inv.tau, inv.rho) == (2, 2, 2)
    inv = matching_invariants(F2)
    assert (inv.nu, inv.tau, inv.rho) == (3, 3, 3)


def test_no_edge_cover_marker():
    hg = Hypergraph(("1", "2"), (frozenset({"1"}),))
    assert matching_invariants(hg).to_dict()["rho"] == "no edge cover"


def test_invariant_inequalities():
    for hg in corpus.uniformable()[:60]:
        inv = matching_invariants(hg)
        assert inv.nu <= inv.tau
        assert inv.rho * max(len(e) for e in hg.edges) >= hg.n


def test_count_preserved_by_multiplication():
    rng = random.Random(9)
    for hg in corpus.uniformable()[:40]:
        m = {v: rng.randint(1, 3) for v in hg.vertices}
        assert len(enumerate_perfect_matchings(multiply(hg, m))) == len(enumerate_perfect_matchings(hg))
        mult = check_uniformable(hg)
        assert len(enumerate_perfect_matchings(multiply(hg, mult.m))) == len(enumerate_perfect_matchings(hg))


def test_count_stable_under_relabeling():
    rng = random.Random(4)
    for hg in corpus.uniformable()[:40]:
        names = [f"x{i}" for i in range(hg.n)]
        rng.shuffle(names)
        g = relabel(hg, dict(zip(hg.vertices, names)))
        assert len(enumerate_perfect_matchings(g)) == len(enumerate_perfect_matchings(hg))
