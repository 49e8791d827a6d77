"""Seeded random instance generators for the test corpus.

Instances are built as unions of planted perfect matchings, which makes every
planted edge lie in a perfect matching by construction. Connectivity and the
other requested properties are enforced by rejection.
"""

from __future__ import annotations

import random
from typing import Callable, Iterator

from .hypergraph import Hypergraph, is_connected
from .matching import is_matching_covered


def _names(n: int) -> list[str]:
    return [str(i + 1) for i in range(n)]


def random_weighted_partition(rng: random.Random, weights: dict[str, int], r: int,
                              tries: int = 50) -> list[frozenset[str]] | None:
    """Randomly split the vertices into blocks of total weight ``r``."""
    verts = list(weights)

    def rec(rest: list[str]) -> list[frozenset[str]] | None:
        if not rest:
            return []
        v = rest[0]
        others = rest[1:]
        rng.shuffle(others)
        options: list[list[str]] = []

        def grow(i, block, total):
            if total == r:
                options.append(list(block))
                return
            for j in range(i, len(others)):
                w = weights[others[j]]
                if total + w <= r:
                    block.append(others[j])
                    grow(j + 1, block, total + w)
                    block.pop()

        grow(0, [v], weights[v])
        rng.shuffle(options)
        for block in options[:3]:
            left = [u for u in rest if u not in block]
            sub = rec(left)
            if sub is not None:
                return [frozenset(block)] + sub
        return None

    for _ in range(tries):
        order = verts[:]
        rng.shuffle(order)
        got = rec(order)
        if got is not None:
            return got
    return None


def planted_uniformable(rng: random.Random, n: int, r: int, matchings: int,
                        max_mult: int = 2) -> Hypergraph | None:
    """Union of random perfect matchings for random vertex weights summing to ``r`` per edge."""
    names = _names(n)
    weights = {v: rng.randint(1, max_mult) for v in names}
    if sum(weights.values()) % r:
        return None
    edges: list[frozenset[str]] = []
    for _ in range(matchings):
        part = random_weighted_partition(rng, weights, r)
        if part is None:
            return None
        edges.extend(part)
    hg = Hypergraph(tuple(names), tuple(sorted(set(edges), key=lambda e: sorted(e, key=int))))
    return hg if is_connected(hg) and hg.m > 0 else None


def uniformable_corpus(seed: int, count: int, max_vertices: int = 8, max_edges: int = 12) -> list[Hypergraph]:
    """Connected, uniformable, matching covered hypergraphs with distinct edge lists."""
    rng = random.Random(seed)
    out: list[Hypergraph] = []
    seen = set()
    while len(out) < count:
        n = rng.randint(4, max_vertices)
        r = rng.choice([2, 3, 3, 4])
        hg = planted_uniformable(rng, n, r, rng.randint(2, 4), max_mult=rng.choice([1, 2, 2, 3]))
        if hg is None or hg.m > max_edges or hg.edges in seen:
            continue
        if not is_matching_covered(hg):
            continue
        seen.add(hg.edges)
        out.append(hg)
    return out


def random_graph_union(rng: random.Random, n: int, matchings: int) -> Hypergraph | None:
    """2-uniform union of random perfect matchings on ``n`` (even) vertices."""
    names = _names(n)
    edges = set()
    for _ in range(matchings):
        order = names[:]
        rng.shuffle(order)
        for i in range(0, n, 2):
            edges.add(frozenset(order[i:i + 2]))
    hg = Hypergraph(tuple(names), tuple(sorted(edges, key=lambda e: sorted(e, key=int))))
    return hg if is_connected(hg) else None


def random_r_partite(rng: random.Random, k: int, r: int, matchings: int) -> Hypergraph | None:
    """``r`` classes of ``k`` vertices; each planted matching is ``k`` random transversals."""
    classes = [[f"{chr(97 + c)}{i + 1}" for i in range(k)] for c in range(r)]
    edges = set()
    for _ in range(matchings):
        perms = [rng.sample(cl, k) for cl in classes]
        for i in range(k):
            edges.add(frozenset(p[i] for p in perms))
    names = [v for cl in classes for v in cl]
    hg = Hypergraph(tuple(names), tuple(sorted(edges, key=sorted)))
    return hg if is_connected(hg) else None


def random_mixed(rng: random.Random, n: int, matchings: int, max_size: int = 3,
                 singleton_weight: float = 0.25) -> Hypergraph | None:
    """Union of random set partitions with block sizes in ``1..max_size``; not uniformable in general."""
    names = _names(n)
    edges = []
    for _ in range(matchings):
        order = names[:]
        rng.shuffle(order)
        i = 0
        while i < n:
            size = 1 if rng.random() < singleton_weight else rng.randint(2, max_size)
            edges.append(frozenset(order[i:i + size]))
            i += size
    uniq = list(dict.fromkeys(edges))
    hg = Hypergraph(tuple(names), tuple(uniq))
    return hg if is_connected(hg) else None


def sample(rng: random.Random, make: Callable[[random.Random], Hypergraph | None],
           keep: Callable[[Hypergraph], bool], count: int, max_tries: int = 100_000) -> Iterator[Hypergraph]:
    """Yield up to ``count`` distinct instances from ``make`` that pass ``keep``."""
    seen = set()
    found = 0
    for _ in range(max_tries):
        if found >= count:
            return
        hg = make(rng)
        if hg is None or hg.edges in seen:
            continue
        seen.add(hg.edges)
        if keep(hg):
            found += 1
            yield hg
