"""Exhaustive perfect-matching enumeration and the parameters nu, tau, rho.

Every structural test in the package is decided against the complete list of
perfect matchings, so enumeration never truncates: it raises
:class:`BudgetExceeded` instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from threading import Lock

from .errors import BudgetExceeded
from .hypergraph import Hypergraph, is_connected

DEFAULT_BUDGET = 10**7

Matching = frozenset  # of edge indices

# hypergraph -> (perfect matchings, search nodes the enumeration needed)
_cache: dict[Hypergraph, tuple[tuple[frozenset[int], ...], int]] = {}
_cache_lock = Lock()
_CACHE_LIMIT = 20000


def _enumerate_masks(hg: Hypergraph, budget: int) -> tuple[list[tuple[int, ...]], int]:
    n = hg.n
    full = hg.full_mask
    masks = hg.edge_masks
    by_low: list[list[int]] = [[] for _ in range(n)]
    for i, em in enumerate(masks):
        low = (em & -em).bit_length() - 1
        by_low[low].append(i)
    # an edge can only be chosen for the lowest uncovered vertex if it contains
    # no lower vertex, since lower ones are already covered; bucket by lowest member
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    nodes = 0

    def rec(covered: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"perfect matching search exceeded {budget} nodes")
        if covered == full:
            out.append(tuple(sorted(chosen)))
            return
        free = ~covered & full
        low = (free & -free).bit_length() - 1
        for i in by_low[low]:
            if masks[i] & covered == 0:
                chosen.append(i)
                rec(covered | masks[i])
                chosen.pop()

    rec(0)
    out.sort()
    return out, nodes


def enumerate_perfect_matchings(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[frozenset[int]]:
    """All perfect matchings, ordered lexicographically by sorted edge indices."""
    with _cache_lock:
        hit = _cache.get(hg)
    if hit is None:
        found, nodes = _enumerate_masks(hg, budget)
        hit = (tuple(frozenset(t) for t in found), nodes)
        with _cache_lock:
            if len(_cache) >= _CACHE_LIMIT:
                _cache.clear()
            _cache[hg] = hit
    elif hit[1] > budget:
        # the answer is known, but the same call without the cache would have failed
        raise BudgetExceeded(f"perfect matching search exceeded {budget} nodes")
    return list(hit[0])


def sorted_matching(m) -> tuple[int, ...]:
    return tuple(sorted(m))


def is_matching(hg: Hypergraph, edge_indices) -> bool:
    seen = 0
    for i in edge_indices:
        em = hg.edge_masks[i]
        if em & seen:
            return False
        seen |= em
    return True


def is_perfect_matching(hg: Hypergraph, edge_indices) -> bool:
    seen = 0
    for i in edge_indices:
        if not 0 <= i < hg.m:
            return False
        em = hg.edge_masks[i]
        if em & seen:
            return False
        seen |= em
    return seen == hg.full_mask


def find_uncovered_edge(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> int | None:
    """First edge index lying in no perfect matching, or ``None``."""
    used: set[int] = set()
    for pm in enumerate_perfect_matchings(hg, budget):
        used |= pm
    for i in range(hg.m):
        if i not in used:
            return i
    return None


def is_matching_covered(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> bool:
    if hg.m == 0 or not is_connected(hg):
        return False
    return find_uncovered_edge(hg, budget) is None


@dataclass(frozen=True)
class MatchingInvariants:
    nu: int
    tau: int
    rho: int | None  # None: some vertex lies in no edge, so no edge cover exists

    def to_dict(self) -> dict:
        return {"nu": self.nu, "tau": self.tau,
                "rho": self.rho if self.rho is not None else "no edge cover"}


def _max_matching(hg: Hypergraph, budget: int) -> int:
    masks = hg.edge_masks
    best = 0
    nodes = 0

    def rec(start, used, size):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"matching search exceeded {budget} nodes")
        best = max(best, size)
        if size + (hg.m - start) <= best:
            return
        for i in range(start, hg.m):
            if masks[i] & used == 0:
                rec(i + 1, used | masks[i], size + 1)

    rec(0, 0, 0)
    return best


def matching_invariants(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> MatchingInvariants:
    """Exact nu (max matching), tau (min vertex cover), rho (min edge cover)."""
    nu = _max_matching(hg, budget)
    full = hg.full_mask
    masks = hg.edge_masks
    spent = 0

    def tick():
        nonlocal spent
        spent += 1
        if spent > budget:
            raise BudgetExceeded(f"cover search exceeded {budget} nodes")

    tau = 0
    if hg.m:
        for k in range(hg.n + 1):
            found = False
            for combo in combinations(range(hg.n), k):
                tick()
                cover = sum(1 << i for i in combo)
                if all(em & cover for em in masks):
                    found = True
                    break
            if found:
                tau = k
                break

    covered = 0
    for em in masks:
        covered |= em
    rho: int | None = None
    if covered == full:
        for k in range(hg.m + 1):
            for combo in combinations(range(hg.m), k):
                tick()
                acc = 0
                for i in combo:
                    acc |= masks[i]
                if acc == full:
                    rho = k
                    break
            if rho is not None:
                break
    return MatchingInvariants(nu, tau, rho)
