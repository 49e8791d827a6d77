import random
from fractions import Fraction

import pytest

import corpus
import oracles
from hyperbricks import PreconditionError
from hyperbricks.hypergraph import Hypergraph
from hyperbricks.matching import enumerate_perfect_matchings
from hyperbricks.polytope import (combination, combine_convex_decompositions, find_fractional_vertex,
                                  find_r_partition, find_strong_odd_cycle, fractional_polytope_integral,
                                  fractional_vertices, fractional_violations, in_fractional_polytope,
                                  in_matching_polytope, incidence_vector, is_balanced, is_r_partite, join,
                                  matching_polytope_membership, separating_witness, split, vector_to_dict,
                                  verify_strong_odd_cycle)
from hyperbricks.tightcut import contract

H = Fraction(1, 2)


def S(*vs):
    return frozenset(str(v) for v in vs)


TRIANGLE = Hypergraph.from_edges([[1, 2], [2, 3], [1, 3]])
TWO_TRIANGLES = Hypergraph.from_edges([[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6], [3, 4]])
SEPARATING_GRAPH = Hypergraph.from_edges(
    [[1, 2], [1, 7], [2, 4], [2, 5], [2, 6], [3, 4], [3, 5], [3, 8], [4, 6], [5, 7], [5, 8], [6, 8]],
    vertices=range(1, 9))


def test_incidence_vector(F1, F2, F4):
    assert incidence_vector(F1, {0, 1}) == (1, 1, 0, 0)
    assert incidence_vector(F4, {0}) == (1,)
    pm = enumerate_perfect_matchings(F2)[0]
    assert sum(incidence_vector(F2, pm)) == 3
    with pytest.raises(PreconditionError):
        incidence_vector(F1, {0, 2})


def test_fractional_polytope_examples(F1, F3):
    assert in_fractional_polytope(F1, [H] * 4)
    assert in_fractional_polytope(F3, [H] * 4 + [0] * 4)
    bad = fractional_violations(F1, [0] * 4)
    assert {v for kind, v, _ in bad if kind == "degree"} == set(F1.vertices)
    with pytest.raises(PreconditionError):
        in_fractional_polytope(F1, [0] * 3)


def _check_farkas(hg, x, y):
    *ye, y0 = y
    for pm in enumerate_perfect_matchings(hg):
        assert sum(ye[i] for i in pm) + y0 >= 0
    assert sum(a * b for a, b in zip(ye, x)) + y0 < 0


def test_membership_examples(F1, F3):
    mem = matching_polytope_membership(F1, [H] * 4)
    assert mem.inside and dict(mem.decomposition) == {frozenset({0, 1}): H, frozenset({2, 3}): H}
    mem = matching_polytope_membership(F3, [H] * 4 + [0] * 4)
    assert mem.inside and dict(mem.decomposition) == {frozenset({0, 3}): H, frozenset({1, 2}): H}
    x = [H, H, H, H, H, H, 0]
    assert in_fractional_polytope(TWO_TRIANGLES, x)
    mem = matching_polytope_membership(TWO_TRIANGLES, x)
    assert not mem.inside
    _check_farkas(TWO_TRIANGLES, x, mem.farkas)


def test_membership_random_points():
    rng = random.Random(13)
    for hg in corpus.all_uniformable()[:80]:
        pms = enumerate_perfect_matchings(hg)
        weights = [Fraction(rng.randint(0, 4)) for _ in pms]
        if not sum(weights):
            weights[0] = Fraction(1)
        total = sum(weights)
        x = combination(hg, [(pm, w / total) for pm, w in zip(pms, weights)])
        mem = matching_polytope_membership(hg, x)
        assert mem.inside
        assert combination(hg, mem.decomposition) == x
        assert sum(w for _, w in mem.decomposition) == 1
        assert all(w > 0 for _, w in mem.decomposition)
        y = list(x)
        y[rng.randrange(hg.m)] += Fraction(1, 7)
        mem = matching_polytope_membership(hg, y)
        assert not mem.inside
        _check_farkas(hg, y, mem.farkas)


def test_split_examples(F1):
    sp = split(F1, S(2, 3), [H] * 4)
    assert sp.pair.h_s.labels == ("e2", "e3", "e1_s", "e4_s")
    assert sp.x_s == (H, H, H, H)
    assert sp.x_s_bar == (H, H)
    assert join(F1, S(2, 3), sp.x_s, sp.x_s_bar) == (H,) * 4
    sp = split(F1, S(2, 3), [1, 1, 0, 0])
    assert sp.x_s == (1, 0, 1, 0) and sp.x_s_bar == (1, 0)
    assert sp.x_s in {incidence_vector(sp.pair.h_s, pm) for pm in enumerate_perfect_matchings(sp.pair.h_s)}


def test_split_requires_tight(F1, F3):
    with pytest.raises(PreconditionError, match="not tight"):
        split(F1, S(1, 2, 3), [H] * 4)
    sp = split(F3, S("a1", "a2"), [H] * 4 + [0] * 4, force=True)
    assert join(F3, S("a1", "a2"), sp.x_s, sp.x_s_bar, force=True) == tuple([H] * 4 + [0] * 4)


def test_join_disagreement(F1):
    with pytest.raises(PreconditionError, match="disagree"):
        join(F1, S(2, 3), [H] * 4, [1, 0])


def test_join_of_incidence_vectors_glues_matchings():
    for hg in corpus.with_nontrivial_tight_cut()[:30]:
        shore = next(s for s in oracles.nontrivial_tight(hg))
        pair = contract(hg, shore)
        for pm_s in enumerate_perfect_matchings(pair.h_s):
            for pm_b in enumerate_perfect_matchings(pair.h_s_bar):
                inv_s = {v: k for k, v in pair.edge_map_s.items()}
                inv_b = {v: k for k, v in pair.edge_map_s_bar.items()}
                orig_s = {inv_s[i] for i in pm_s}
                orig_b = {inv_b[i] for i in pm_b}
                cut_s = orig_s & orig_b
                x_s = incidence_vector(pair.h_s, pm_s)
                x_b = incidence_vector(pair.h_s_bar, pm_b)
                agree = all(x_s[pair.edge_map_s[i]] == x_b[pair.edge_map_s_bar[i]]
                            for i in pair.edge_map_s if i in pair.edge_map_s_bar)
                if agree:
                    assert len(cut_s) == 1
                    assert join(hg, shore, x_s, x_b) == incidence_vector(hg, orig_s | orig_b)


def test_split_join_round_trip():
    rng = random.Random(1)
    for hg in corpus.with_nontrivial_tight_cut()[:40]:
        shore = oracles.nontrivial_tight(hg)[0]
        x = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(hg.m)]
        sp = split(hg, shore, x)
        assert join(hg, shore, sp.x_s, sp.x_s_bar) == tuple(x)


def test_combine_example(F1):
    pair = contract(F1, S(2, 3))
    d_s = [(frozenset({0, 2}), H), (frozenset({1, 3}), H)]
    d_b = [(frozenset({0}), H), (frozenset({1}), H)]
    assert combination(pair.h_s, d_s) == (H, H, H, H)
    got = combine_convex_decompositions(F1, S(2, 3), d_s, d_b)
    assert dict(got) == {frozenset({0, 1}): H, frozenset({2, 3}): H}


def test_combine_single_terms(F1):
    got = combine_convex_decompositions(F1, S(2, 3), [(frozenset({0, 2}), 1)], [(frozenset({0}), 1)])
    assert got == ((frozenset({0, 1}), 1),)


def test_combine_rejects_disagreement(F1):
    with pytest.raises(PreconditionError):
        combine_convex_decompositions(F1, S(2, 3), [(frozenset({0, 2}), 1)], [(frozenset({1}), 1)])


def test_fractional_polytope_integrality_examples(F1, F3):
    assert fractional_polytope_integral(F3)
    assert fractional_polytope_integral(F1)
    assert not fractional_polytope_integral(TRIANGLE)
    assert find_fractional_vertex(TRIANGLE) == (H, H, H)


def test_fractional_vertices_against_oracle():
    pool = [h for h in corpus.all_uniformable() if h.m <= 12][:70] + [TRIANGLE, TWO_TRIANGLES]
    for hg in pool:
        assert set(fractional_vertices(hg)) == oracles.fractional_vertices(hg)


def test_separating_witness_example():
    hg, shore = SEPARATING_GRAPH, S(2, 4, 6)
    w = separating_witness(hg, shore)
    assert in_fractional_polytope(hg, w.x)
    d = {i for i, e in enumerate(hg.edges) if e & shore and e - shore}
    assert sum(w.x[i] for i in d) == w.cut_value == Fraction(1, 3)
    k = len(w.m0 & d)
    assert w.cut_value == Fraction(len(w.m0) - k, len(w.m0) - 1)
    for e, pm in w.per_edge.items():
        assert e in pm and len(pm & d) == 1
    assert set(vector_to_dict(w.x)) == {str(i) for i in range(hg.m)}


def test_separating_witness_preconditions(F1, F3):
    with pytest.raises(PreconditionError, match="cut is tight"):
        separating_witness(F1, S(2, 3))
    with pytest.raises(PreconditionError, match="not uniformable"):
        separating_witness(F3, S("a1", "a2"))
    with pytest.raises(PreconditionError, match="not separating"):
        separating_witness(F1, S(1, 2))


def test_balanced_examples(F1, F2):
    assert is_balanced(F2)
    assert is_balanced(F1)
    cycle = find_strong_odd_cycle(TRIANGLE)
    assert len(cycle) == 3 and verify_strong_odd_cycle(TRIANGLE, cycle)


def test_balanced_against_oracle():
    rng = random.Random(6)
    from hyperbricks.generators import random_mixed
    pool = [h for h in corpus.all_uniformable() if h.n <= 6][:40]
    while len(pool) < 80:
        h = random_mixed(rng, rng.randint(3, 6), rng.randint(1, 3))
        if h is not None:
            pool.append(h)
    for hg in pool:
        cyc = find_strong_odd_cycle(hg)
        assert (cyc is None) == (oracles.strong_odd_cycle(hg) is None)
        if cyc is not None:
            assert verify_strong_odd_cycle(hg, cyc)


def test_r_partite_examples(F1, F2):
    part = find_r_partition(F2, 2)
    assert part is not None and all(len(e & set(p)) == 1 for e in F2.edges for p in part)
    part = find_r_partition(F1, 3)
    assert part is not None and all(len(e & set(p)) == 1 for e in F1.edges for p in part)
    three = Hypergraph.from_edges([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"]])
    assert not is_r_partite(three, 3)
    assert is_r_partite(Hypergraph.from_edges([["a", "b", "c"], ["a", "b", "d"]]), 3)
    with pytest.raises(PreconditionError, match="not 3-uniform|not r-uniform"):
        is_r_partite(F2, 3)


def test_r_partite_against_oracle():
    for hg in [h for h in corpus.all_uniformable() if h.is_uniform() and h.n <= 8][:60]:
        assert is_r_partite(hg, hg.rank()) == oracles.r_partite(hg, hg.rank())
