"""The tight cut decomposition procedure and the tools to compare its outcomes.

The procedure keeps a list of hypergraphs. While some member has a non-trivial
tight cut along shore ``S``, that member is replaced by its contraction with
the complement shrunk and the contraction with ``S`` shrunk is appended.
Every list entry remembers which root vertices each of its vertices stands
for, so shores can be mapped back to the input hypergraph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Protocol, Sequence

from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, canonical_shore, find_isomorphism, shore_key
from .matching import DEFAULT_BUDGET, is_matching_covered
from .tightcut import classify_pair, contract, is_tight, nontrivial_tight_shores


@dataclass(eq=False)
class DecompNode:
    hypergraph: Hypergraph
    blocks: dict[str, frozenset[str]]  # local vertex -> root vertices it represents
    shore: frozenset[str] | None = None
    children: tuple[DecompNode, DecompNode] | None = None  # (complement shrunk, shore shrunk)
    _tight: list[frozenset[str]] | None = field(default=None, repr=False)

    def expand(self, local: Iterable[str]) -> frozenset[str]:
        return frozenset().union(*(self.blocks[v] for v in local))

    def tight_shores(self, budget: int) -> list[frozenset[str]]:
        if self._tight is None:
            self._tight = nontrivial_tight_shores(self.hypergraph, budget)
        return self._tight

    def leaves(self) -> list[DecompNode]:
        if self.children is None:
            return [self]
        return self.children[0].leaves() + self.children[1].leaves()

    def to_dict(self) -> dict:
        hg = self.hypergraph
        out = {"hypergraph": hg.to_dict(),
               "blocks": {v: sorted(self.blocks[v]) for v in hg.vertices}}
        if self.children is not None:
            out["shore"] = hg.sorted_vertices(self.shore)
            out["children"] = [c.to_dict() for c in self.children]
        return out


@dataclass
class Decomposition:
    root: Hypergraph
    bricks: list[Hypergraph]
    tree: DecompNode
    family: list[frozenset[str]]  # root-level canonical shores in the order they were used

    def family_key(self) -> tuple[tuple[int, ...], ...]:
        return family_key(self.root, self.family)

    def to_dict(self) -> dict:
        return {"bricks": [b.to_dict() for b in self.bricks],
                "tree": self.tree.to_dict(),
                "family": [self.root.sorted_vertices(s) for s in sorted_family(self.root, self.family)]}


def sorted_family(root: Hypergraph, family: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(family, key=lambda s: shore_key(root, s))


def family_key(root: Hypergraph, family: Iterable[frozenset[str]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(shore_key(root, s) for s in family))


Option = tuple[int, list[frozenset[str]]]  # (list position, non-trivial tight shores there)


class Strategy(Protocol):
    def choose(self, root: Hypergraph, nodes: Sequence[DecompNode],
               options: list[Option]) -> tuple[int, frozenset[str]]: ...


class FirstStrategy:
    """Lowest-index decomposable hypergraph, then its shore with the smallest vertex-position key."""

    name = "first"

    def choose(self, root, nodes, options):
        j, shores = options[0]
        hg = nodes[j].hypergraph
        return j, min(shores, key=lambda s: shore_key(hg, s))


class SeededRandomStrategy:
    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def choose(self, root, nodes, options):
        j, shores = options[self.rng.randrange(len(options))]
        hg = nodes[j].hypergraph
        ordered = sorted(shores, key=lambda s: shore_key(hg, s))
        return j, ordered[self.rng.randrange(len(ordered))]


class ScriptedStrategy:
    """Follow a list of root-level shores; fall back to :class:`FirstStrategy` once it runs out.

    A scripted shore ``X`` is realised in the list entry whose vertex blocks
    split the root as ``X`` (or its complement) does.
    """

    name = "scripted"

    def __init__(self, shores: Iterable[Iterable[str]]):
        self.script = [frozenset(s) for s in shores]
        self.pos = 0
        self.fallback = FirstStrategy()

    def choose(self, root, nodes, options):
        if self.pos >= len(self.script):
            return self.fallback.choose(root, nodes, options)
        target = self.script[self.pos]
        wanted = {target, frozenset(root.vertices) - target}
        for j, shores in options:
            for s in shores:
                if nodes[j].expand(s) in wanted:
                    self.pos += 1
                    return j, s
        raise PreconditionError(
            f"scripted shore {root.sorted_vertices(target)} is not a non-trivial tight cut of any current hypergraph")


def make_strategy(name: str, seed: int = 0, shores: Iterable[Iterable[str]] = ()) -> Strategy:
    if name == "first":
        return FirstStrategy()
    if name == "random":
        return SeededRandomStrategy(seed)
    if name == "scripted":
        return ScriptedStrategy(shores)
    raise PreconditionError(f"unknown strategy {name!r}")


def _split(node: DecompNode, shore: frozenset[str], budget: int) -> None:
    pair = contract(node.hypergraph, shore, budget=budget)
    inside = node.expand(shore)
    outside = node.expand(frozenset(node.hypergraph.vertices) - shore)
    bar_blocks = {v: node.blocks[v] for v in shore}
    bar_blocks[pair.s_bar] = outside
    s_blocks = {v: node.blocks[v] for v in node.hypergraph.vertices if v not in shore}
    s_blocks[pair.s] = inside
    node.shore = shore
    node.children = (DecompNode(pair.h_s_bar, bar_blocks), DecompNode(pair.h_s, s_blocks))


def _root_node(hg: Hypergraph) -> DecompNode:
    return DecompNode(hg, {v: frozenset((v,)) for v in hg.vertices})


def decompose(hg: Hypergraph, strategy: Strategy | None = None, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Run the decomposition procedure until no list entry has a non-trivial tight cut."""
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    strategy = strategy or FirstStrategy()
    root = _root_node(hg)
    nodes = [root]
    family: list[frozenset[str]] = []
    while True:
        options = [(j, n.tight_shores(budget)) for j, n in enumerate(nodes)]
        options = [(j, s) for j, s in options if s]
        if not options:
            break
        j, shore = strategy.choose(hg, nodes, options)
        node = nodes[j]
        if shore not in node.tight_shores(budget):
            raise PreconditionError("strategy proposed a shore that is not a non-trivial tight cut")
        family.append(canonical_shore(hg, node.expand(shore)))
        _split(node, shore, budget)
        nodes[j] = node.children[0]
        nodes.append(node.children[1])
    return Decomposition(hg, [n.hypergraph for n in nodes], root, family)


def extract_laminar_family(d: Decomposition, budget: int = DEFAULT_BUDGET) -> list[frozenset[str]]:
    """The root-level shores of a run, checked to be pairwise laminar, tight and non-trivial."""
    fam = sorted_family(d.root, d.family)
    for a, b in combinations(fam, 2):
        if classify_pair(d.root, a, b).crossing:
            raise TheoremViolation("decomposition family contains crossing shores")
    for s in fam:
        if not 2 <= len(s) <= d.root.n - 2:
            raise TheoremViolation("decomposition family contains a trivial shore")
        if not is_tight(d.root, s, budget):
            raise TheoremViolation("decomposition shore does not lift to a tight cut of the root")
    if len(d.bricks) != len(fam) + 1:
        raise TheoremViolation("brick count differs from family size plus one")
    return fam


def find_brick_bijection(d1: Decomposition, d2: Decomposition) -> dict[int, int] | None:
    """Map brick ``i`` of ``d1`` to an isomorphic (up to parallel edges) brick of ``d2``, bijectively."""
    b1, b2 = d1.bricks, d2.bricks
    if len(b1) != len(b2):
        return None
    iso = [[j for j in range(len(b2)) if find_isomorphism(x, b2[j]) is not None] for x in b1]
    assign: dict[int, int] = {}
    used: set[int] = set()

    def rec(i):
        if i == len(b1):
            return True
        for j in iso[i]:
            if j not in used:
                assign[i] = j
                used.add(j)
                if rec(i + 1):
                    return True
                used.discard(j)
                del assign[i]
        return False

    return dict(assign) if rec(0) else None


def decompositions_equivalent(d1: Decomposition, d2: Decomposition) -> bool:
    return find_brick_bijection(d1, d2) is not None


def enumerate_all_decompositions(hg: Hypergraph, budget: int = DEFAULT_BUDGET,
                                 max_states: int = 100_000) -> list[Decomposition]:
    """One decomposition per maximal laminar family reachable by the procedure, sorted by family."""
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    seen_states: set[frozenset[frozenset[str]]] = set()
    results: dict[tuple, Decomposition] = {}

    def rec(root: DecompNode, nodes: list[DecompNode], family: list[frozenset[str]]):
        state = frozenset(family)
        if state in seen_states:
            return
        seen_states.add(state)
        if len(seen_states) > max_states:
            raise BudgetExceeded(f"more than {max_states} partial decompositions")
        options = [(j, n.tight_shores(budget)) for j, n in enumerate(nodes)]
        options = [(j, s) for j, s in options if s]
        if not options:
            d = Decomposition(hg, [n.hypergraph for n in nodes], root, list(family))
            results.setdefault(d.family_key(), d)
            return
        for j, shores in options:
            for s in sorted(shores, key=lambda x: shore_key(nodes[j].hypergraph, x)):
                new_root, new_nodes = _clone_path(root, nodes)
                node = new_nodes[j]
                lifted = canonical_shore(hg, node.expand(s))
                if lifted in state:
                    continue
                _split(node, s, budget)
                new_nodes[j] = node.children[0]
                new_nodes.append(node.children[1])
                rec(new_root, new_nodes, family + [lifted])

    root = _root_node(hg)
    rec(root, [root], [])
    return [results[k] for k in sorted(results)]


def _clone_path(root: DecompNode, nodes: list[DecompNode]) -> tuple[DecompNode, list[DecompNode]]:
    """Copy the tree so that branches do not share mutable nodes; tight-shore caches are reused."""
    mapping: dict[int, DecompNode] = {}

    def copy(n: DecompNode) -> DecompNode:
        c = DecompNode(n.hypergraph, n.blocks, n.shore, None, n._tight)
        if n.children is not None:
            c.children = (copy(n.children[0]), copy(n.children[1]))
        mapping[id(n)] = c
        return c

    new_root = copy(root)
    return new_root, [mapping[id(n)] for n in nodes]


@dataclass
class UniquenessReport:
    count: int
    equivalent: bool
    counterexample: tuple[int, int] | None  # indices of two inequivalent decompositions

    def to_dict(self) -> dict:
        return {"decompositions": self.count, "equivalent": self.equivalent,
                "counterexample": list(self.counterexample) if self.counterexample else None}


def verify_uniqueness(decs: Sequence[Decomposition]) -> UniquenessReport:
    """Compare every pair of decompositions; reports the first inequivalent pair."""
    for i, j in combinations(range(len(decs)), 2):
        if not decompositions_equivalent(decs[i], decs[j]):
            return UniquenessReport(len(decs), False, (i, j))
    return UniquenessReport(len(decs), True, None)
