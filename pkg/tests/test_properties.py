import random
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from hyperbricks import parse, serialize
from hyperbricks.generators import planted_uniformable, random_mixed
from hyperbricks.hypergraph import Hypergraph, cut, find_isomorphism, relabel
from hyperbricks.matching import enumerate_perfect_matchings, is_matching_covered
from hyperbricks.polytope import fractional_polytope_integral, is_balanced, join, split
from hyperbricks.tightcut import contract, list_tight_cuts
from hyperbricks.uniform import check_uniformable, multiply

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def hypergraphs(draw, max_vertices=7):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    hg = random_mixed(rng, draw(st.integers(1, max_vertices)), draw(st.integers(1, 3)))
    assume(hg is not None)
    return hg


@st.composite
def uniformable_covered(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    hg = planted_uniformable(rng, draw(st.integers(3, 8)), draw(st.sampled_from([2, 3, 4])),
                             draw(st.integers(2, 3)), max_mult=draw(st.integers(1, 2)))
    assume(hg is not None and is_matching_covered(hg))
    return hg


@SETTINGS
@given(hypergraphs())
def test_parse_serialize_identity(hg):
    assert parse(serialize(hg)) == hg


@SETTINGS
@given(hypergraphs(), st.data())
def test_cut_symmetry(hg, data):
    shore = frozenset(data.draw(st.sets(st.sampled_from(hg.vertices))))
    assert cut(hg, shore).edge_indices == cut(hg, hg.complement(shore)).edge_indices


@SETTINGS
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_relabeling_is_an_isomorphism(hg, rnd):
    names = [f"q{i}" for i in range(hg.n)]
    rnd.shuffle(names)
    g = relabel(hg, dict(zip(hg.vertices, names)))
    f = find_isomorphism(hg, g)
    assert f is not None
    assert len(enumerate_perfect_matchings(g)) == len(enumerate_perfect_matchings(hg))


@SETTINGS
@given(hypergraphs(max_vertices=6))
def test_enumeration_matches_brute_force(hg):
    assert enumerate_perfect_matchings(hg) == oracles.perfect_matchings(hg)


@SETTINGS
@given(uniformable_covered(), st.randoms(use_true_random=False))
def test_multiplication_preserves_matchings_and_uniformability(hg, rnd):
    m = {v: rnd.randint(1, 3) for v in hg.vertices}
    big = multiply(hg, m)
    assert len(enumerate_perfect_matchings(big)) == len(enumerate_perfect_matchings(hg))
    assert check_uniformable(big) is not None


@SETTINGS
@given(uniformable_covered(), st.randoms(use_true_random=False))
def test_contractions_stay_uniformable_and_covered(hg, rnd):
    cuts = list_tight_cuts(hg)
    assume(cuts)
    shore = rnd.choice(cuts).shore
    pair = contract(hg, shore)
    for h in (pair.h_s, pair.h_s_bar):
        assert is_matching_covered(h)
        assert check_uniformable(h) is not None


@SETTINGS
@given(uniformable_covered(), st.randoms(use_true_random=False))
def test_split_join_round_trip(hg, rnd):
    cuts = list_tight_cuts(hg)
    assume(cuts)
    shore = rnd.choice(cuts).shore
    x = [Fraction(rnd.randint(-5, 5), rnd.randint(1, 5)) for _ in range(hg.m)]
    sp = split(hg, shore, x)
    assert join(hg, shore, sp.x_s, sp.x_s_bar) == tuple(x)


@SETTINGS
@given(hypergraphs(max_vertices=6))
def test_balanced_implies_integral(hg):
    if is_balanced(hg):
        assert fractional_polytope_integral(hg)


def test_singleton_hypergraph_is_integral():
    assert fractional_polytope_integral(Hypergraph.from_edges([["v"]]))
