"""Uniformability: positive integer vertex weights making every edge weigh the same.

A hypergraph is uniformable when some ``m: V -> Z>=1`` and rank ``r`` satisfy
``sum(m(v) for v in e) == r`` for every edge. A rational solution scales to an
integral one, so the test is a single exact LP.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import lp
from .errors import PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, cut
from .matching import DEFAULT_BUDGET, enumerate_perfect_matchings, is_matching_covered


@dataclass(frozen=True)
class Multiplicity:
    m: Mapping[str, int] = field(hash=False)
    r: int

    def weight(self, vertices: Iterable[str]) -> int:
        return sum(self.m[v] for v in vertices)

    def validate(self, hg: Hypergraph) -> bool:
        if set(self.m) != set(hg.vertices) or any(k < 1 for k in self.m.values()):
            return False
        return all(self.weight(e) == self.r for e in hg.edges)

    def to_dict(self, hg: Hypergraph | None = None) -> dict:
        keys = list(hg.vertices) if hg is not None else sorted(self.m)
        return {"r": self.r, "m": {v: self.m[v] for v in keys}}


def _system(hg: Hypergraph) -> tuple[list[list[int]], list[int]]:
    # variables: extra weight m(v) - 1 >= 0 for each vertex, then r >= 0;
    # one row per edge: r - sum(m(v) - 1 for v in e) = |e|
    n = hg.n
    idx = hg.index
    rows, rhs = [], []
    for e in hg.edges:
        row = [0] * (n + 1)
        for v in e:
            row[idx[v]] = -1
        row[n] = 1
        rows.append(row)
        rhs.append(len(e))
    return rows, rhs


def _solve(hg: Hypergraph) -> lp.LPResult:
    if hg.m == 0:
        raise PreconditionError("uniformability needs at least one edge")
    rows, rhs = _system(hg)
    return lp.solve([0] * hg.n + [1], rows, rhs)


def non_uniformable_certificate(hg: Hypergraph) -> list[Fraction] | None:
    """Edge weights ``y`` proving that no multiplication is uniform, or ``None``.

    With ``y`` attached to the edge rows of the uniformity system, every
    vertex sees ``-sum(y over its edges) >= 0``, the rank column sees
    ``sum(y) >= 0``, and ``sum(y_e * |e|) < 0``.
    """
    res = _solve(hg)
    if res.status != "infeasible":
        return None
    rows, rhs = _system(hg)
    if not lp.verify_farkas(rows, rhs, res.farkas):
        raise TheoremViolation("infeasibility certificate does not verify")
    return list(res.farkas)


def check_uniformable(hg: Hypergraph) -> Multiplicity | None:
    """An integral uniform multiplication of ``hg``, or ``None`` when none exists.

    The LP minimizes the rank over rational solutions before scaling, so small
    ranks come out first.
    """
    if hg.m == 0:
        raise PreconditionError("uniformability needs at least one edge")
    if all(len(e) == 1 for e in hg.edges):
        raise PreconditionError("degenerate: every edge is a singleton, so the only rank is trivial")
    n = hg.n
    res = _solve(hg)
    if res.status != "optimal":
        return None
    weights = [1 + res.x[i] for i in range(n)]
    rank = res.x[n]
    scale = math.lcm(*(w.denominator for w in weights), rank.denominator)
    ints = [int(w * scale) for w in weights]
    r = int(rank * scale)
    g = math.gcd(*ints, r)
    mult = Multiplicity({v: k // g for v, k in zip(hg.vertices, ints)}, r // g)
    if not mult.validate(hg):
        raise TheoremViolation("scaled LP solution is not a uniform multiplication")
    return mult


def is_uniformable(hg: Hypergraph) -> bool:
    return check_uniformable(hg) is not None


def _copy_names(v: str, k: int) -> list[str]:
    if k == 1:
        return [v]
    if k <= 26:
        return [v + string.ascii_lowercase[i] for i in range(k)]
    return [f"{v}_{i + 1}" for i in range(k)]


def multiply(hg: Hypergraph, m: Mapping[str, int]) -> Hypergraph:
    """Replace each vertex ``v`` by ``m[v]`` copies that enter every edge containing ``v``."""
    for v in hg.vertices:
        k = m.get(v, 1)
        if not isinstance(k, int) or k < 1:
            raise PreconditionError(f"multiplicity of {v!r} must be a positive integer, got {k!r}")
    copies = {v: _copy_names(v, m.get(v, 1)) for v in hg.vertices}
    vertices = [c for v in hg.vertices for c in copies[v]]
    if len(set(vertices)) != len(vertices):
        raise PreconditionError("copy names collide with existing vertices")
    edges = [frozenset(c for v in e for c in copies[v]) for e in hg.edges]
    return Hypergraph(tuple(vertices), tuple(edges), hg.labels)


def tight_cut_residue(hg: Hypergraph, mult: Multiplicity, shore: Iterable[str],
                      budget: int = DEFAULT_BUDGET) -> int:
    """The common weight ``k`` that ``shore`` contributes to every edge of its tight cut."""
    from .tightcut import is_tight

    shore = hg.check_shore(shore)
    if not is_tight(hg, shore, budget):
        raise PreconditionError("cut is not tight")
    k = mult.weight(shore) % mult.r
    if not 1 <= k <= mult.r - 1:
        raise TheoremViolation(f"tight cut with shore weight divisible by r={mult.r}")
    for i in sorted(cut(hg, shore).edge_indices):
        got = mult.weight(hg.edges[i] & shore)
        if got != k:
            raise TheoremViolation(f"cut edge {hg.labels[i]} meets the shore with weight {got}, expected {k}")
    return k


@dataclass(frozen=True)
class ZeroResidueReport:
    intersections: tuple[tuple[tuple[int, ...], int], ...]  # (matching, |M & cut|)
    witness: tuple[int, ...] | None  # a matching meeting the cut at least twice

    def to_dict(self) -> dict:
        return {"intersections": [{"matching": list(m), "count": c} for m, c in self.intersections],
                "witness": list(self.witness) if self.witness is not None else None}


def zero_residue_check(hg: Hypergraph, mult: Multiplicity, shore: Iterable[str],
                       budget: int = DEFAULT_BUDGET) -> ZeroResidueReport:
    """For a shore of weight divisible by ``r``: no perfect matching meets its cut exactly once."""
    shore = hg.check_shore(shore)
    if mult.weight(shore) % mult.r != 0:
        raise PreconditionError("shore weight is not divisible by r")
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    cut_edges = cut(hg, shore).edge_indices
    rows = []
    witness = None
    for pm in enumerate_perfect_matchings(hg, budget):
        c = len(pm & cut_edges)
        key = tuple(sorted(pm))
        if c == 1:
            raise TheoremViolation(f"perfect matching {key} meets a zero-residue cut exactly once")
        if c >= 2 and witness is None:
            witness = key
        rows.append((key, c))
    proper = bool(shore) and shore != frozenset(hg.vertices)
    if proper and witness is None:
        raise TheoremViolation("no perfect matching meets a proper zero-residue cut twice")
    return ZeroResidueReport(tuple(rows), witness)
