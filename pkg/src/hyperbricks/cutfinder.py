"""Finding a non-trivial tight cut in a uniform balanced matching covered hypergraph.

Fix one perfect matching ``M_e`` through every edge ``e`` and weigh each edge
by how many of these matchings use it. For ``|S|`` not divisible by the rank,
every ``M_e`` meets ``delta(S)`` at least once, so ``w(delta(S)) >= |E|`` with
equality exactly for tight cuts. The search minimizes ``w(delta(S))`` over the
lattice families ``{S : A <= S <= V - B}`` with ``|A| = |B| = 2``, which are
precisely the non-trivial shores.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from . import lp
from .errors import PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, canonical_shore, cut_mask, shore_key
from .matching import DEFAULT_BUDGET, enumerate_perfect_matchings, is_matching_covered, is_perfect_matching
from .polytope import is_balanced
from .tightcut import is_tight, is_trivial


def _lp_matching(hg: Hypergraph, e: int) -> frozenset[int] | None:
    """A vertex of the fractional polytope with ``x_e = 1``; ``None`` if it is not integral."""
    rows = []
    for v in hg.vertices:
        rows.append([1 if v in f else 0 for f in hg.edges])
    rows.append([1 if i == e else 0 for i in range(hg.m)])
    res = lp.solve(None, rows, [1] * hg.n + [1])
    if res.status != "optimal" or any(v.denominator != 1 for v in res.x):
        return None
    pm = frozenset(i for i, v in enumerate(res.x) if v == 1)
    return pm if is_perfect_matching(hg, pm) else None


def covering_matchings(hg: Hypergraph, method: str = "enumerate",
                       budget: int = DEFAULT_BUDGET) -> dict[int, frozenset[int]]:
    """For every edge, a perfect matching containing it.

    ``enumerate`` takes the first matching in enumeration order; ``lp`` reads a
    vertex off the fractional polytope with ``x_e = 1`` and falls back to
    enumeration when that vertex is not integral.
    """
    if method not in ("enumerate", "lp"):
        raise PreconditionError(f"unknown method {method!r}")
    pms = None
    fam = {}
    for e in range(hg.m):
        pm = _lp_matching(hg, e) if method == "lp" else None
        if pm is None:
            if pms is None:
                pms = enumerate_perfect_matchings(hg, budget)
            pm = next((p for p in pms if e in p), None)
        if pm is None:
            raise PreconditionError(f"edge {hg.labels[e]} lies in no perfect matching")
        fam[e] = pm
    return fam


def cut_weight(hg: Hypergraph, fam: dict[int, frozenset[int]]) -> list[int]:
    w = [0] * hg.m
    for e, pm in fam.items():
        if e not in pm or not is_perfect_matching(hg, pm):
            raise PreconditionError(f"family entry for {hg.labels[e]} is not a perfect matching through it")
        for f in pm:
            w[f] += 1
    return w


def weight_of_cut(hg: Hypergraph, w: list[int], shore_mask: int) -> int:
    return sum(w[i] for i in cut_mask(hg, shore_mask))


Minimizer = Callable[[Hypergraph, int, int, Callable[[int], int]], tuple[int, int] | None]


def enumeration_minimizer(hg: Hypergraph, a_mask: int, b_mask: int,
                          value: Callable[[int], int]) -> tuple[int, int] | None:
    """Minimum of ``value`` over ``{S : A <= S <= V - B, |S| % r != 0}``, ties to the smallest canonical shore.

    Returns ``(value, shore mask)`` or ``None`` when the family has no admissible member.
    """
    r = len(hg.edges[0])
    free = [i for i in range(hg.n) if not (a_mask | b_mask) >> i & 1]
    best = None
    for k in range(1 << len(free)):
        mask = a_mask
        for j, i in enumerate(free):
            if k >> j & 1:
                mask |= 1 << i
        if mask.bit_count() % r == 0:
            continue
        key = (value(mask), canonical_mask_key(hg, mask))
        if best is None or key < best[0]:
            best = (key, mask)
    return None if best is None else (best[0][0], best[1])


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def canonical_mask_key(hg: Hypergraph, mask: int) -> tuple:
    """Order shores by their canonical side, matching :func:`canonical_shore`."""
    other = hg.full_mask & ~mask
    return min((mask.bit_count(), _mask_key(mask)), (other.bit_count(), _mask_key(other)))


@dataclass(frozen=True)
class FinderResult:
    shore: frozenset[str] | None  # None: only trivial tight cuts
    weight: int | None  # minimum of w(delta(S)) over the admissible shores
    edges: int
    verified: bool
    families: int
    evaluations: int

    def to_dict(self, hg: Hypergraph) -> dict:
        return {"shore": hg.sorted_vertices(self.shore) if self.shore is not None else None,
                "verdict": "non-trivial tight cut" if self.shore is not None else "only trivial tight cuts",
                "weight": self.weight, "edges": self.edges, "verified": self.verified,
                "lattice_families": self.families, "evaluations": self.evaluations}


def check_finder_preconditions(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> int:
    if hg.m == 0 or not hg.is_uniform():
        raise PreconditionError("not uniform")
    r = len(hg.edges[0])
    if r < 2:
        raise PreconditionError("rank must be at least 2")
    if not is_matching_covered(hg, budget):
        raise PreconditionError("not matching covered")
    if not is_balanced(hg, budget):
        raise PreconditionError("not balanced")
    return r


def find_nontrivial_tight_cut(hg: Hypergraph, minimizer: Minimizer = enumeration_minimizer,
                              fam: dict[int, frozenset[int]] | None = None,
                              budget: int = DEFAULT_BUDGET) -> FinderResult:
    check_finder_preconditions(hg, budget)
    fam = fam if fam is not None else covering_matchings(hg, budget=budget)
    w = cut_weight(hg, fam)
    memo: dict[int, int] = {}
    evaluations = 0

    def value(mask: int) -> int:
        nonlocal evaluations
        evaluations += 1
        if mask not in memo:
            memo[mask] = weight_of_cut(hg, w, mask)
        return memo[mask]

    best = None
    families = 0
    verts = range(hg.n)
    for a in combinations(verts, 2):
        rest = [v for v in verts if v not in a]
        for b in combinations(rest, 2):
            families += 1
            got = minimizer(hg, (1 << a[0]) | (1 << a[1]), (1 << b[0]) | (1 << b[1]), value)
            if got is None:
                continue
            key = (got[0], canonical_mask_key(hg, got[1]))
            if best is None or key < best[0]:
                best = (key, got[1])
    if best is None:
        return FinderResult(None, None, hg.m, True, families, evaluations)
    weight, mask = best[0][0], best[1]
    if weight < hg.m:
        raise TheoremViolation("a shore not divisible by r has cut weight below |E|")
    if weight > hg.m:
        return FinderResult(None, weight, hg.m, True, families, evaluations)
    shore = canonical_shore(hg, hg.shore(mask))
    if is_trivial(hg, shore) or not is_tight(hg, shore, budget):
        raise TheoremViolation("minimizing shore is not a non-trivial tight cut")
    return FinderResult(shore, weight, hg.m, True, families, evaluations)


def weight_criterion(hg: Hypergraph, fam: dict[int, frozenset[int]], shore: Iterable[str]) -> bool:
    """``|S|`` not divisible by the rank and ``w(delta(S)) == |E|``."""
    shore = hg.check_shore(shore)
    r = len(hg.edges[0])
    return len(shore) % r != 0 and weight_of_cut(hg, cut_weight(hg, fam), hg.mask(shore)) == hg.m


def smallest_shore(hg: Hypergraph, shores: Iterable[frozenset[str]]) -> frozenset[str] | None:
    shores = list(shores)
    return min(shores, key=lambda s: shore_key(hg, s)) if shores else None
