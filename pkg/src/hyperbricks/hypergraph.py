"""Hypergraphs with positional edge identity, cuts, and isomorphism up to parallel edges.

Vertices are opaque strings. Edges form an ordered multiset: parallel edges are
kept and an edge is identified by its index, so provenance survives contractions.
Shores are plain ``frozenset`` objects of vertex names.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import ParseError, PreconditionError

Shore = frozenset


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[frozenset[str], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        edges = tuple(frozenset(str(v) for v in e) for e in self.edges)
        labels = tuple(self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(len(edges)))
        if len(set(vertices)) != len(vertices):
            raise PreconditionError("duplicate vertex")
        if len(labels) != len(edges):
            raise PreconditionError(f"{len(labels)} labels for {len(edges)} edges")
        known = set(vertices)
        for i, e in enumerate(edges):
            if not e:
                raise PreconditionError(f"empty edge at index {i}")
            unknown = e - known
            if unknown:
                raise PreconditionError(f"edge {i} references unknown vertex {sorted(unknown)[0]!r}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable], vertices: Iterable | None = None,
                   labels: Iterable[str] | None = None) -> Hypergraph:
        """Build a hypergraph; without ``vertices`` the covered vertices are used in first-seen order."""
        edges = [[str(v) for v in e] for e in edges]
        if vertices is None:
            seen: dict[str, None] = {}
            for e in edges:
                for v in e:
                    seen.setdefault(v)
            vertices = list(seen)
        return cls(tuple(str(v) for v in vertices), tuple(frozenset(e) for e in edges),
                   tuple(labels) if labels else ())

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(sum(1 << idx[v] for v in e) for e in self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask(self, shore: Iterable[str]) -> int:
        idx = self.index
        try:
            return sum(1 << idx[v] for v in set(shore))
        except KeyError as exc:
            raise PreconditionError(f"vertex {exc.args[0]!r} not in hypergraph") from None

    def shore(self, mask: int) -> frozenset[str]:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def sorted_vertices(self, subset: Iterable[str]) -> list[str]:
        idx = self.index
        return sorted(subset, key=idx.__getitem__)

    def complement(self, shore: Iterable[str]) -> frozenset[str]:
        shore = self.check_shore(shore)
        return frozenset(self.vertices) - shore

    def check_shore(self, shore: Iterable[str]) -> frozenset[str]:
        shore = frozenset(shore)
        extra = shore - set(self.vertices)
        if extra:
            raise PreconditionError(f"shore vertex {sorted(extra)[0]!r} not in hypergraph")
        return shore

    def is_uniform(self) -> bool:
        return len({len(e) for e in self.edges}) <= 1

    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def incident(self, v: str) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [self.sorted_vertices(e) for e in self.edges],
            "labels": list(self.labels),
        }

    def __repr__(self) -> str:
        edges = ", ".join("{" + ",".join(self.sorted_vertices(e)) + "}" for e in self.edges)
        return f"Hypergraph(V={list(self.vertices)}, E=[{edges}])"


@dataclass(frozen=True)
class Cut:
    shore: frozenset[str]
    edge_indices: frozenset[int]


def from_dict(data: Mapping) -> Hypergraph:
    if not isinstance(data, Mapping):
        raise ParseError("top level: expected an object")
    if "vertices" not in data or "edges" not in data:
        raise ParseError("top level: 'vertices' and 'edges' are required")
    vertices = data["vertices"]
    edges = data["edges"]
    labels = data.get("labels")
    if not isinstance(vertices, list):
        raise ParseError("vertices: expected a list")
    if not isinstance(edges, list):
        raise ParseError("edges: expected a list")
    vertices = [str(v) for v in vertices]
    if len(set(vertices)) != len(vertices):
        raise ParseError("vertices: duplicate vertex")
    known = set(vertices)
    for i, e in enumerate(edges):
        if not isinstance(e, list):
            raise ParseError(f"edges[{i}]: expected a list")
        if not e:
            raise ParseError(f"edges[{i}]: empty edge")
        for v in e:
            if str(v) not in known:
                raise ParseError(f"edges[{i}]: unknown vertex {str(v)!r}")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(edges):
            raise ParseError("labels: expected one string per edge")
        labels = [str(x) for x in labels]
    return Hypergraph(tuple(vertices), tuple(frozenset(str(v) for v in e) for e in edges),
                      tuple(labels or ()))


def parse(text: str) -> Hypergraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def serialize(hg: Hypergraph) -> str:
    return json.dumps(hg.to_dict(), indent=2, ensure_ascii=False) + "\n"


def induced_subhypergraph(hg: Hypergraph, shore: Iterable[str]) -> Hypergraph:
    """Keep the vertices of ``shore`` and every edge lying entirely inside it."""
    shore = hg.check_shore(shore)
    keep = [i for i, e in enumerate(hg.edges) if e <= shore]
    return Hypergraph(tuple(v for v in hg.vertices if v in shore),
                      tuple(hg.edges[i] for i in keep), tuple(hg.labels[i] for i in keep))


def restricted_subhypergraph(hg: Hypergraph, shore: Iterable[str]) -> Hypergraph:
    """Intersect every edge with ``shore``; empty intersections are dropped."""
    shore = hg.check_shore(shore)
    keep = [i for i, e in enumerate(hg.edges) if e & shore]
    return Hypergraph(tuple(v for v in hg.vertices if v in shore),
                      tuple(hg.edges[i] & shore for i in keep), tuple(hg.labels[i] for i in keep))


def partial_hypergraph(hg: Hypergraph, edge_indices: Iterable[int]) -> Hypergraph:
    chosen = sorted(set(edge_indices))
    for i in chosen:
        if not 0 <= i < hg.m:
            raise PreconditionError(f"edge index {i} out of range")
    covered = set().union(*(hg.edges[i] for i in chosen)) if chosen else set()
    return Hypergraph(tuple(v for v in hg.vertices if v in covered),
                      tuple(hg.edges[i] for i in chosen), tuple(hg.labels[i] for i in chosen))


def cut_mask(hg: Hypergraph, shore_mask: int) -> list[int]:
    outside = hg.full_mask & ~shore_mask
    return [i for i, em in enumerate(hg.edge_masks) if em & shore_mask and em & outside]


def cut(hg: Hypergraph, shore: Iterable[str]) -> Cut:
    shore = hg.check_shore(shore)
    return Cut(shore, frozenset(cut_mask(hg, hg.mask(shore))))


def degree(hg: Hypergraph, v: str) -> int:
    if v not in hg.index:
        raise PreconditionError(f"unknown vertex {v!r}")
    return sum(1 for e in hg.edges if v in e)


def components(hg: Hypergraph) -> list[frozenset[str]]:
    """Connected components of the vertex/edge incidence structure."""
    parent = list(range(hg.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    idx = hg.index
    for e in hg.edges:
        members = [idx[v] for v in e]
        root = find(members[0])
        for j in members[1:]:
            parent[find(j)] = root
    groups: dict[int, set[str]] = {}
    for v in hg.vertices:
        groups.setdefault(find(idx[v]), set()).add(v)
    return [frozenset(g) for g in groups.values()]


def is_connected(hg: Hypergraph) -> bool:
    return len(components(hg)) <= 1


def collapse_parallel(hg: Hypergraph) -> Hypergraph:
    seen: set[frozenset[str]] = set()
    keep = []
    for i, e in enumerate(hg.edges):
        if e not in seen:
            seen.add(e)
            keep.append(i)
    if len(keep) == hg.m:
        return hg
    return Hypergraph(hg.vertices, tuple(hg.edges[i] for i in keep), tuple(hg.labels[i] for i in keep))


def relabel(hg: Hypergraph, mapping: Mapping[str, str]) -> Hypergraph:
    """Rename vertices; vertices missing from ``mapping`` keep their name."""
    rename = {v: str(mapping.get(v, v)) for v in hg.vertices}
    return Hypergraph(tuple(rename[v] for v in hg.vertices),
                      tuple(frozenset(rename[v] for v in e) for e in hg.edges), hg.labels)


def _profile(hg: Hypergraph) -> dict[str, tuple]:
    # degree plus the sorted sizes of incident edges; invariant under isomorphism
    sizes: dict[str, list[int]] = {v: [] for v in hg.vertices}
    for e in hg.edges:
        for v in e:
            sizes[v].append(len(e))
    return {v: (len(s), tuple(sorted(s))) for v, s in sizes.items()}


def find_isomorphism(h1: Hypergraph, h2: Hypergraph) -> dict[str, str] | None:
    """Vertex bijection mapping the distinct edges of ``h1`` onto those of ``h2``.

    Parallel edges are collapsed first. Returns ``None`` when no bijection exists.
    """
    a, b = collapse_parallel(h1), collapse_parallel(h2)
    if a.n != b.n or a.m != b.m:
        return None
    if Counter(len(e) for e in a.edges) != Counter(len(e) for e in b.edges):
        return None
    prof_a, prof_b = _profile(a), _profile(b)
    if Counter(prof_a.values()) != Counter(prof_b.values()):
        return None

    edges_a, edges_b = set(a.edges), set(b.edges)
    inc_a = {v: [e for e in a.edges if v in e] for v in a.vertices}
    inc_b = {v: [e for e in b.edges if v in e] for v in b.vertices}

    # visit vertices so that each one touches already-mapped ones where possible
    order: list[str] = []
    remaining = set(a.vertices)
    while remaining:
        placed = set(order)

        def score(v):
            linked = sum(1 for e in inc_a[v] for u in e if u in placed)
            return (-linked, -prof_a[v][0], a.index[v])

        v = min(remaining, key=score)
        order.append(v)
        remaining.remove(v)

    fwd: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w):
        for e in inc_a[v]:
            if all(u in fwd or u == v for u in e):
                if frozenset(w if u == v else fwd[u] for u in e) not in edges_b:
                    return False
        image = set(fwd.values()) | {w}
        back = {fwd[u]: u for u in fwd}
        back[w] = v
        for f in inc_b[w]:
            if f <= image and frozenset(back[x] for x in f) not in edges_a:
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        for w in b.vertices:
            if w in used or prof_b[w] != prof_a[v]:
                continue
            if consistent(v, w):
                fwd[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del fwd[v]
                used.discard(w)
        return False

    return dict(fwd) if extend(0) else None


def isomorphic_up_to_parallel(h1: Hypergraph, h2: Hypergraph) -> bool:
    return find_isomorphism(h1, h2) is not None


def shore_key(hg: Hypergraph, shore: Iterable[str]) -> tuple[int, ...]:
    """Sort key for shores: positions of the members in vertex order."""
    idx = hg.index
    return tuple(sorted(idx[v] for v in shore))


def canonical_shore(hg: Hypergraph, shore: Iterable[str]) -> frozenset[str]:
    """Pick one representative of ``{S, V - S}``: the smaller side, ties by vertex order."""
    shore = hg.check_shore(shore)
    other = frozenset(hg.vertices) - shore
    ka, kb = (len(shore), shore_key(hg, shore)), (len(other), shore_key(hg, other))
    return shore if ka <= kb else other
