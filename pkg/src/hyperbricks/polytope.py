"""Exact perfect matching polytope computations.

Vectors are tuples of ``Fraction`` indexed by edge position. The perfect
matching polytope is handled through its vertex list (the enumerated perfect
matchings), never through an inequality description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, cut
from .matching import DEFAULT_BUDGET, enumerate_perfect_matchings, is_matching, is_matching_covered, is_perfect_matching
from .tightcut import ContractionPair, contract, is_separating, is_tight

Vector = tuple[Fraction, ...]
Term = tuple[frozenset[int], Fraction]  # (perfect matching, weight)


def as_vector(hg: Hypergraph, x: Sequence) -> Vector:
    if len(x) != hg.m:
        raise PreconditionError(f"vector has {len(x)} entries but the hypergraph has {hg.m} edges")
    return tuple(Fraction(v) for v in x)


def vector_to_dict(x: Sequence[Fraction]) -> dict[str, str]:
    return {str(i): str(v) for i, v in enumerate(x)}


def incidence_vector(hg: Hypergraph, edge_indices: Iterable[int]) -> Vector:
    chosen = set(edge_indices)
    if any(not 0 <= i < hg.m for i in chosen) or not is_matching(hg, chosen):
        raise PreconditionError("not a matching of this hypergraph")
    return tuple(Fraction(1 if i in chosen else 0) for i in range(hg.m))


def combination(hg: Hypergraph, terms: Iterable[Term]) -> Vector:
    acc = [Fraction(0)] * hg.m
    for pm, w in terms:
        for i in pm:
            acc[i] += w
    return tuple(acc)


def fractional_violations(hg: Hypergraph, x: Sequence) -> list[tuple[str, str, Fraction]]:
    """Violated constraints of the fractional polytope: ("nonneg", edge label, value) or ("degree", vertex, sum)."""
    x = as_vector(hg, x)
    out = [("nonneg", hg.labels[i], v) for i, v in enumerate(x) if v < 0]
    sums = {v: Fraction(0) for v in hg.vertices}
    for i, e in enumerate(hg.edges):
        for v in e:
            sums[v] += x[i]
    out += [("degree", v, sums[v]) for v in hg.vertices if sums[v] != 1]
    return out


def in_fractional_polytope(hg: Hypergraph, x: Sequence) -> bool:
    return not fractional_violations(hg, x)


@dataclass(frozen=True)
class Membership:
    inside: bool
    decomposition: tuple[Term, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None  # one entry per edge, then one for the weight-sum row

    def to_dict(self) -> dict:
        if self.inside:
            return {"inside": True, "decomposition": [
                {"matching": sorted(pm), "weight": str(w)} for pm, w in self.decomposition]}
        return {"inside": False, "farkas": [str(v) for v in self.farkas]}


def matching_polytope_membership(hg: Hypergraph, x: Sequence, budget: int = DEFAULT_BUDGET) -> Membership:
    """Decide ``x`` in PM(H) by an exact LP over the matching list.

    Outside points come with ``y`` such that ``y.chi^M + y0 >= 0`` for every
    perfect matching ``M`` while ``y.x + y0 < 0``.
    """
    x = as_vector(hg, x)
    pms = enumerate_perfect_matchings(hg, budget)
    rows = [[1 if i in pm else 0 for pm in pms] for i in range(hg.m)]
    rows.append([1] * len(pms))
    rhs = list(x) + [Fraction(1)]
    res = lp.solve(None, rows, rhs)
    if res.status == "infeasible":
        return Membership(False, farkas=tuple(res.farkas))
    terms = tuple((pm, lam) for pm, lam in zip(pms, res.x) if lam > 0)
    if combination(hg, terms) != x or sum(w for _, w in terms) != 1:
        raise TheoremViolation("convex decomposition does not reproduce the vector")
    return Membership(True, decomposition=terms)


def in_matching_polytope(hg: Hypergraph, x: Sequence, budget: int = DEFAULT_BUDGET) -> bool:
    return matching_polytope_membership(hg, x, budget).inside


@dataclass(frozen=True)
class SplitPair:
    x_s: Vector  # over the edges of the contraction with the shore shrunk
    x_s_bar: Vector  # over the edges of the contraction with the complement shrunk
    pair: ContractionPair


def _pair(hg: Hypergraph, shore, force: bool, budget: int) -> ContractionPair:
    return contract(hg, shore, force=force, budget=budget)


def split(hg: Hypergraph, shore: Iterable[str], x: Sequence, force: bool = False,
          budget: int = DEFAULT_BUDGET) -> SplitPair:
    """Project ``x`` onto both contractions; cut edges keep their value on both sides."""
    x = as_vector(hg, x)
    pair = _pair(hg, shore, force, budget)
    xs = [Fraction(0)] * pair.h_s.m
    xb = [Fraction(0)] * pair.h_s_bar.m
    for i, v in enumerate(x):
        if i in pair.edge_map_s:
            xs[pair.edge_map_s[i]] = v
        if i in pair.edge_map_s_bar:
            xb[pair.edge_map_s_bar[i]] = v
    return SplitPair(tuple(xs), tuple(xb), pair)


def join(hg: Hypergraph, shore: Iterable[str], x_s: Sequence, x_s_bar: Sequence, force: bool = False,
         budget: int = DEFAULT_BUDGET) -> Vector:
    """Assemble a vector of ``hg`` from two contraction vectors that agree on the cut."""
    pair = _pair(hg, shore, force, budget)
    x_s = as_vector(pair.h_s, x_s)
    x_s_bar = as_vector(pair.h_s_bar, x_s_bar)
    out = []
    for i in range(hg.m):
        a = x_s[pair.edge_map_s[i]] if i in pair.edge_map_s else None
        b = x_s_bar[pair.edge_map_s_bar[i]] if i in pair.edge_map_s_bar else None
        if a is not None and b is not None and a != b:
            raise PreconditionError(f"vectors disagree on cut edge {hg.labels[i]}: {a} vs {b}")
        out.append(a if a is not None else b)
    return tuple(out)


def _cut_edge(pm: frozenset[int], cut_images: dict[int, int]) -> int:
    hits = [cut_images[j] for j in pm if j in cut_images]
    if len(hits) != 1:
        raise TheoremViolation("contraction matching does not use exactly one cut edge")
    return hits[0]


def _check_terms(h: Hypergraph, terms: Sequence[Term], side: str) -> None:
    if not terms:
        raise PreconditionError(f"{side}: empty decomposition")
    for pm, w in terms:
        if w <= 0:
            raise PreconditionError(f"{side}: weights must be positive")
        if not is_perfect_matching(h, pm):
            raise PreconditionError(f"{side}: {sorted(pm)} is not a perfect matching")
    if sum(w for _, w in terms) != 1:
        raise PreconditionError(f"{side}: weights do not sum to 1")


def combine_convex_decompositions(hg: Hypergraph, shore: Iterable[str], d_s: Sequence[Term],
                                  d_s_bar: Sequence[Term], budget: int = DEFAULT_BUDGET) -> tuple[Term, ...]:
    """Glue convex decompositions of the two contractions into one of ``hg``.

    Repeatedly pick the cut edge ``e*`` of largest remaining marginal (lowest
    index on ties). The terms using ``e*`` on either side carry the same total
    weight; they are paired greedily by the minimum rule and glued, the rest is
    handled in the next round. Equal matchings are merged at the end.
    """
    shore = hg.check_shore(shore)
    pair = _pair(hg, shore, False, budget)
    d_s = [(frozenset(pm), Fraction(w)) for pm, w in d_s]
    d_s_bar = [(frozenset(pm), Fraction(w)) for pm, w in d_s_bar]
    _check_terms(pair.h_s, d_s, "shore-contracted side")
    _check_terms(pair.h_s_bar, d_s_bar, "complement-contracted side")
    x_s = combination(pair.h_s, d_s)
    x_b = combination(pair.h_s_bar, d_s_bar)
    x = join(hg, shore, x_s, x_b, budget=budget)

    cut_edges = cut(hg, shore).edge_indices
    img_s = {pair.edge_map_s[i]: i for i in cut_edges}
    img_b = {pair.edge_map_s_bar[i]: i for i in cut_edges}
    back_s = {j: i for i, j in pair.edge_map_s.items()}
    back_b = {j: i for i, j in pair.edge_map_s_bar.items()}

    left = [[pm, w, _cut_edge(pm, img_s)] for pm, w in d_s]
    right = [[pm, w, _cut_edge(pm, img_b)] for pm, w in d_s_bar]
    out: list[Term] = []
    while any(t[1] > 0 for t in left):
        marg: dict[int, Fraction] = {}
        for _, w, e in left:
            if w > 0:
                marg[e] = marg.get(e, Fraction(0)) + w
        e_star = min(marg, key=lambda e: (-marg[e], e))
        li = [t for t in left if t[2] == e_star and t[1] > 0]
        ri = [t for t in right if t[2] == e_star and t[1] > 0]
        if sum(t[1] for t in li) != sum(t[1] for t in ri):
            raise TheoremViolation("cut edge marginals differ between the two sides")
        a = b = 0
        while a < len(li) and b < len(ri):
            mu = min(li[a][1], ri[b][1])
            glued = frozenset(back_s[j] for j in li[a][0]) | frozenset(back_b[j] for j in ri[b][0])
            out.append((glued, mu))
            li[a][1] -= mu
            ri[b][1] -= mu
            if li[a][1] == 0:
                a += 1
            if ri[b][1] == 0:
                b += 1
    merged: dict[frozenset[int], Fraction] = {}
    for pm, w in out:
        if not is_perfect_matching(hg, pm):
            raise TheoremViolation("glued edge set is not a perfect matching")
        merged[pm] = merged.get(pm, Fraction(0)) + w
    terms = tuple(sorted(merged.items(), key=lambda t: sorted(t[0])))
    if sum(w for _, w in terms) != 1 or combination(hg, terms) != x:
        raise TheoremViolation("combined decomposition does not reproduce the joined vector")
    return terms


class _Echelon:
    """Incrementally reduced column set, tracking how the all-ones vector is expressed."""

    def __init__(self, n: int):
        self.rows: list[tuple[list[Fraction], int, dict[int, Fraction]]] = []
        self.target = [Fraction(1)] * n  # 1 - sum(coef[j] * col_j)
        self.coef: dict[int, Fraction] = {}
        self.support: tuple[int, ...] = ()

    def extend(self, j: int, col: list[Fraction]) -> _Echelon | None:
        vec = list(col)
        comb = {j: Fraction(1)}
        for r, p, c in self.rows:
            f = vec[p]
            if f:
                f = f / r[p]
                vec = [a - f * b for a, b in zip(vec, r)]
                for k, v in c.items():
                    comb[k] = comb.get(k, Fraction(0)) - f * v
        p = next((i for i, a in enumerate(vec) if a), None)
        if p is None:
            return None
        new = _Echelon.__new__(_Echelon)
        new.rows = self.rows + [(vec, p, comb)]
        new.support = self.support + (j,)
        t = self.target
        coef = dict(self.coef)
        f = t[p] / vec[p]
        if f:
            t = [a - f * b for a, b in zip(t, vec)]
            for k, v in comb.items():
                coef[k] = coef.get(k, Fraction(0)) + f * v
        new.target = t
        new.coef = coef
        return new

    def solved(self) -> bool:
        return not any(self.target)


def fractional_vertices(hg: Hypergraph, budget: int = DEFAULT_BUDGET, stop_at_fractional: bool = False) -> list[Vector]:
    """All vertices of ``{x >= 0 : x(delta(v)) = 1 for all v}``.

    A vertex is determined by its support, whose columns are linearly
    independent. The search walks independent column sets in increasing index
    order; once the all-ones vector is in the span, adding columns cannot give
    a new vertex, so that branch stops.
    """
    idx = hg.index
    cols = []
    for e in hg.edges:
        col = [Fraction(0)] * hg.n
        for v in e:
            col[idx[v]] = Fraction(1)
        cols.append(col)
    found: list[Vector] = []
    nodes = 0

    def rec(start: int, ech: _Echelon) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"vertex enumeration exceeded {budget} nodes")
        if ech.solved():
            coef = ech.coef
            if all(coef.get(j, 0) > 0 for j in ech.support):
                x = tuple(coef.get(i, Fraction(0)) for i in range(hg.m))
                found.append(x)
                if stop_at_fractional and any(v.denominator != 1 for v in x):
                    return True
            return False
        for j in range(start, hg.m):
            nxt = ech.extend(j, cols[j])
            if nxt is not None and rec(j + 1, nxt):
                return True
        return False

    rec(0, _Echelon(hg.n))
    return found


def find_fractional_vertex(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> Vector | None:
    for x in fractional_vertices(hg, budget, stop_at_fractional=True):
        if any(v.denominator != 1 for v in x):
            return x
    return None


def fractional_polytope_integral(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> bool:
    return find_fractional_vertex(hg, budget) is None


@dataclass(frozen=True)
class SeparatingWitness:
    x: Vector
    m0: frozenset[int]
    per_edge: dict[int, frozenset[int]]  # e in M0 -> perfect matching meeting the cut only in e
    cut_value: Fraction

    def to_dict(self) -> dict:
        return {"x": vector_to_dict(self.x), "M0": sorted(self.m0),
                "M_e": {str(e): sorted(m) for e, m in sorted(self.per_edge.items())},
                "x_cut": str(self.cut_value)}


def separating_witness(hg: Hypergraph, shore: Iterable[str], budget: int = DEFAULT_BUDGET) -> SeparatingWitness:
    """A point of the fractional polytope with ``x(delta(S)) < 1`` built from a separating non-tight cut."""
    from .uniform import is_uniformable

    shore = hg.check_shore(shore)
    if not is_uniformable(hg):
        raise PreconditionError("not uniformable")
    if not is_matching_covered(hg, budget):
        raise PreconditionError("hypergraph is not matching covered")
    if is_tight(hg, shore, budget):
        raise PreconditionError("cut is tight")
    if not is_separating(hg, shore, budget):
        raise PreconditionError("cut is not separating")
    cut_edges = cut(hg, shore).edge_indices
    pms = enumerate_perfect_matchings(hg, budget)
    m0 = next((pm for pm in pms if len(pm & cut_edges) >= 2), None)
    if m0 is None:
        raise TheoremViolation("no perfect matching meets the non-tight cut twice")
    per_edge = {}
    for e in sorted(m0):
        me = next((pm for pm in pms if e in pm and len(pm & cut_edges) == 1), None)
        if me is None:
            raise TheoremViolation(f"no perfect matching through {hg.labels[e]} meets the separating cut once")
        per_edge[e] = me
    k = len(m0)
    acc = [Fraction(0)] * hg.m
    for me in per_edge.values():
        for i in me:
            acc[i] += 1
    for i in m0:
        acc[i] -= 1
    x = tuple(v / (k - 1) for v in acc)
    value = sum((x[i] for i in cut_edges), Fraction(0))
    expected = Fraction(k - len(m0 & cut_edges), k - 1)
    if not in_fractional_polytope(hg, x) or value != expected or value >= 1:
        raise TheoremViolation("separating witness fails its defining properties")
    return SeparatingWitness(x, m0, per_edge, value)


def find_strong_odd_cycle(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> list[tuple[str, int]] | None:
    """A strong cycle of odd length as ``[(x_1, e_1), ..., (x_t, e_t)]``, or ``None``.

    Strong means edge ``e_i`` contains no cycle vertex other than ``x_i`` and
    ``x_{i+1}``. The first vertex is the cycle vertex of lowest position.
    """
    masks = hg.edge_masks
    inc = [[i for i, em in enumerate(masks) if em >> v & 1] for v in range(hg.n)]
    nodes = 0
    path_v: list[int] = []
    path_e: list[int] = []

    def rec(vmask: int, emask_union: int) -> bool:
        # vmask: cycle vertices so far; emask_union: vertices of the edges chosen so far
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"odd cycle search exceeded {budget} nodes")
        x1, xk = path_v[0], path_v[-1]
        k = len(path_v)
        earlier = vmask & ~(1 << xk)
        for i in inc[xk]:
            if i in path_e:
                continue
            em = masks[i]
            if k >= 3 and k % 2 == 1 and em & earlier == 1 << x1:
                path_e.append(i)
                return True
            if em & earlier:
                continue
            for y in range(x1 + 1, hg.n):
                if em >> y & 1 and not vmask >> y & 1 and not emask_union >> y & 1:
                    path_v.append(y)
                    path_e.append(i)
                    if rec(vmask | 1 << y, emask_union | em):
                        return True
                    path_v.pop()
                    path_e.pop()
        return False

    for x1 in range(hg.n):
        path_v[:] = [x1]
        path_e[:] = []
        if rec(1 << x1, 0):
            return [(hg.vertices[v], e) for v, e in zip(path_v, path_e)]
    return None


def is_balanced(hg: Hypergraph, budget: int = DEFAULT_BUDGET) -> bool:
    return find_strong_odd_cycle(hg, budget) is None


def verify_strong_odd_cycle(hg: Hypergraph, cycle: Sequence[tuple[str, int]]) -> bool:
    t = len(cycle)
    xs = [v for v, _ in cycle]
    es = [e for _, e in cycle]
    if t < 3 or t % 2 == 0 or len(set(xs)) != t or len(set(es)) != t:
        return False
    for i in range(t):
        e = hg.edges[es[i]]
        if xs[i] not in e or xs[(i + 1) % t] not in e:
            return False
        if any(xs[j] in e for j in range(t) if j not in (i, (i + 1) % t)):
            return False
    return True


def find_r_partition(hg: Hypergraph, r: int, budget: int = DEFAULT_BUDGET) -> list[list[str]] | None:
    """Classes ``S_1..S_r`` with every edge meeting each class exactly once, or ``None``."""
    if r < 1 or any(len(e) != r for e in hg.edges):
        raise PreconditionError(f"hypergraph is not {r}-uniform")
    color = [-1] * hg.n
    masks = hg.edge_masks
    inc = [[em for em in masks if em >> v & 1] for v in range(hg.n)]
    nodes = 0

    def ok(v, c):
        for em in inc[v]:
            m = em
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if u != v and color[u] == c:
                    return False
        return True

    def rec(v, used):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"partition search exceeded {budget} nodes")
        if v == hg.n:
            return True
        for c in range(min(used + 1, r)):
            if ok(v, c):
                color[v] = c
                if rec(v + 1, max(used, c + 1)):
                    return True
                color[v] = -1
        return False

    if not rec(0, 0):
        return None
    return [[hg.vertices[v] for v in range(hg.n) if color[v] == c] for c in range(r)]


def is_r_partite(hg: Hypergraph, r: int, budget: int = DEFAULT_BUDGET) -> bool:
    return find_r_partition(hg, r, budget) is not None
