"""Tight cuts: detection, contraction, crossing analysis and separating cuts.

A cut ``delta(S)`` is tight when every perfect matching uses exactly one of its
edges. Tightness is always decided against the complete matching list.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, canonical_shore, cut_mask, shore_key
from .matching import DEFAULT_BUDGET, enumerate_perfect_matchings, is_matching_covered

FORCED = "(forced)"


@lru_cache(maxsize=4096)
def _pm_bits(hg: Hypergraph, budget: int) -> tuple[int, ...]:
    return tuple(sum(1 << i for i in pm) for pm in enumerate_perfect_matchings(hg, budget))


def matching_bitmasks(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Each perfect matching as a bitmask over edge indices."""
    return _pm_bits(hg, budget)


def cut_bits(hg: Hypergraph, shore_mask: int) -> int:
    return sum(1 << i for i in cut_mask(hg, shore_mask))


def _tight_mask(hg: Hypergraph, shore_mask: int, pms: tuple[int, ...]) -> bool:
    if shore_mask == 0 or shore_mask == hg.full_mask:
        return False
    cb = cut_bits(hg, shore_mask)
    return all((pm & cb).bit_count() == 1 for pm in pms)


def find_tightness_violation(hg: Hypergraph, shore: Iterable[str],
                             budget: int = DEFAULT_BUDGET) -> frozenset[int] | None:
    """A perfect matching meeting ``delta(S)`` in other than one edge, or ``None`` if the cut is tight."""
    shore = hg.check_shore(shore)
    pms = enumerate_perfect_matchings(hg, budget)
    if not pms:
        raise PreconditionError("hypergraph has no perfect matching")
    cb = cut_bits(hg, hg.mask(shore))
    for pm in pms:
        if sum(1 for i in pm if cb >> i & 1) != 1:
            return pm
    return None


def is_tight(hg: Hypergraph, shore: Iterable[str], budget: int = DEFAULT_BUDGET) -> bool:
    return find_tightness_violation(hg, shore, budget) is None


def is_trivial(hg: Hypergraph, shore: Iterable[str]) -> bool:
    shore = hg.check_shore(shore)
    return len(shore) == 1 or hg.n - len(shore) == 1


@dataclass(frozen=True)
class ContractionPair:
    """``h_s`` has the shore shrunk to ``s``; ``h_s_bar`` has the complement shrunk to ``s_bar``."""

    h_s: Hypergraph
    h_s_bar: Hypergraph
    edge_map_s: dict[int, int]
    edge_map_s_bar: dict[int, int]
    s: str
    s_bar: str
    shore: frozenset[str]
    forced: bool = False


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def _contract_side(hg: Hypergraph, keep: frozenset[str], new: str, suffix: str):
    """Shrink ``V - keep`` into ``new``: edges inside ``keep`` stay, cut edges are truncated."""
    inside, images = [], []
    for i, e in enumerate(hg.edges):
        if e <= keep:
            inside.append(i)
        elif e & keep:
            images.append(i)
    vertices = tuple(v for v in hg.vertices if v in keep) + (new,)
    edges = [hg.edges[i] for i in inside] + [(hg.edges[i] & keep) | {new} for i in images]
    labels = [hg.labels[i] for i in inside] + [hg.labels[i] + suffix for i in images]
    emap = {old: new_i for new_i, old in enumerate(inside + images)}
    return Hypergraph(vertices, tuple(edges), tuple(labels)), emap


def contract(hg: Hypergraph, shore: Iterable[str], force: bool = False,
             budget: int = DEFAULT_BUDGET) -> ContractionPair:
    """The two tight cut contractions of ``hg`` along ``delta(shore)``.

    Edges of ``h_s`` are the edges inside the complement in original order,
    followed by the truncated cut edges in original order; likewise for
    ``h_s_bar``. With ``force`` the tightness check is skipped and the new
    labels carry a marker.
    """
    shore = hg.check_shore(shore)
    if not shore or len(shore) == hg.n:
        raise PreconditionError("shore must be a proper non-empty subset")
    if not force and not is_tight(hg, shore, budget):
        raise PreconditionError("cut is not tight")
    digest = hashlib.sha1(",".join(hg.sorted_vertices(shore)).encode()).hexdigest()[:8]
    taken = set(hg.vertices)
    s = _fresh(f"s:{digest}", taken)
    s_bar = _fresh(f"s̄:{digest}", taken)
    mark = FORCED if force else ""
    outside = frozenset(hg.vertices) - shore
    h_s, map_s = _contract_side(hg, outside, s, "_s" + mark)
    h_s_bar, map_s_bar = _contract_side(hg, shore, s_bar, "_s̄" + mark)
    return ContractionPair(h_s, h_s_bar, map_s, map_s_bar, s, s_bar, shore, force)


def is_separating(hg: Hypergraph, shore: Iterable[str], budget: int = DEFAULT_BUDGET) -> bool:
    """Both forced contractions along ``delta(shore)`` are matching covered."""
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    pair = contract(hg, shore, force=True, budget=budget)
    return is_matching_covered(pair.h_s, budget) and is_matching_covered(pair.h_s_bar, budget)


@dataclass(frozen=True)
class PairClass:
    kind: str  # "laminar" | "crossing"
    corners: tuple[frozenset[str], ...]  # S&T, S&~T, ~S&T, ~S&~T

    @property
    def crossing(self) -> bool:
        return self.kind == "crossing"


def classify_pair(hg: Hypergraph, S: Iterable[str], T: Iterable[str]) -> PairClass:
    S, T = hg.check_shore(S), hg.check_shore(T)
    V = frozenset(hg.vertices)
    corners = (S & T, S - T, T - S, V - (S | T))
    return PairClass("crossing" if all(corners) else "laminar", corners)


@dataclass(frozen=True)
class UncrossReport:
    tight: dict[str, bool]  # keys: "S&T", "S|T", "S&~T", "~S&T"
    diagonals: tuple[tuple[frozenset[str], frozenset[str]], ...]

    def to_dict(self, hg: Hypergraph) -> dict:
        return {"tight": dict(self.tight),
                "tight_diagonals": [[hg.sorted_vertices(a), hg.sorted_vertices(b)] for a, b in self.diagonals]}


def uncross(hg: Hypergraph, S: Iterable[str], T: Iterable[str], budget: int = DEFAULT_BUDGET) -> UncrossReport:
    """Tightness of the four corner cuts of two crossing tight cuts, checked against the uncrossing facts."""
    from .uniform import is_uniformable

    S, T = hg.check_shore(S), hg.check_shore(T)
    if not classify_pair(hg, S, T).crossing:
        raise PreconditionError("shores do not cross")
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    if not is_uniformable(hg):
        raise PreconditionError("hypergraph is not uniformable")
    if not (is_tight(hg, S, budget) and is_tight(hg, T, budget)):
        raise PreconditionError("both cuts must be tight")
    sets = {"S&T": S & T, "S|T": S | T, "S&~T": S - T, "~S&T": T - S}
    tight = {k: is_tight(hg, v, budget) for k, v in sets.items()}
    if tight["S&T"] != tight["S|T"]:
        raise TheoremViolation("tightness of the cuts of S&T and S|T differs")
    if tight["S&~T"] != tight["~S&T"]:
        raise TheoremViolation("tightness of the cuts of S&~T and ~S&T differs")
    diagonals = []
    if tight["S&T"]:
        diagonals.append((sets["S&T"], sets["S|T"]))
    if tight["S&~T"]:
        diagonals.append((sets["S&~T"], sets["~S&T"]))
    if not diagonals:
        raise TheoremViolation("neither diagonal of two crossing tight cuts is tight")
    return UncrossReport(tight, tuple(diagonals))


@dataclass(frozen=True)
class TightCut:
    shore: frozenset[str]
    trivial: bool


def tight_cut_masks(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Bitmasks of every proper shore with a tight cut, both orientations included."""
    pms = matching_bitmasks(hg, budget)
    if not pms:
        raise PreconditionError("hypergraph has no perfect matching")
    if hg.n > 24:
        raise PreconditionError("too many vertices for an exhaustive shore sweep")
    if 2 ** hg.n > budget:
        raise PreconditionError(f"shore sweep over 2^{hg.n} subsets exceeds the budget")
    return [mask for mask in range(1, hg.full_mask) if _tight_mask(hg, mask, pms)]


def list_tight_cuts(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[TightCut]:
    """Every tight cut once, with its canonical shore; sorted by (size, vertex order)."""
    seen: dict[frozenset[str], TightCut] = {}
    for mask in tight_cut_masks(hg, budget):
        shore = canonical_shore(hg, hg.shore(mask))
        if shore not in seen:
            seen[shore] = TightCut(shore, is_trivial(hg, shore))
    return sorted(seen.values(), key=lambda c: (len(c.shore), shore_key(hg, c.shore)))


def nontrivial_tight_shores(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[frozenset[str]]:
    return [c.shore for c in list_tight_cuts(hg, budget) if not c.trivial]


def separating_cuts(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[tuple[frozenset[str], bool]]:
    """Every separating cut once (canonical shore) together with whether it is tight."""
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    out = []
    seen = set()
    for mask in range(1, hg.full_mask):
        shore = canonical_shore(hg, hg.shore(mask))
        if shore in seen:
            continue
        seen.add(shore)
        if is_separating(hg, shore, budget):
            out.append((shore, is_tight(hg, shore, budget)))
    out.sort(key=lambda p: (len(p[0]), shore_key(hg, p[0])))
    return out
