"""Command-line front end: read a hypergraph as JSON, run one analysis, print a JSON report.

Exit codes: 0 computed, 1 the queried property is false (a witness is
included), 2 input or precondition error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import cutfinder, decomp, matching, polytope, tightcut, uniform
from .errors import BudgetExceeded, ParseError, PreconditionError
from .hypergraph import Hypergraph, cut, degree, is_connected, parse

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Answer:
    """Result payload plus the exit status it implies."""

    def __init__(self, result: dict, holds: bool = True):
        self.result = result
        self.holds = holds


def _shore(hg: Hypergraph, text: str | None) -> frozenset[str]:
    if text is None:
        raise PreconditionError("this command needs --shore v1,v2,...")
    items = [t.strip() for t in text.split(",") if t.strip()]
    return hg.check_shore(items)


def _vector(text: str | None, what: str = "--vector") -> list[Fraction]:
    if text is None:
        raise PreconditionError(f"this command needs {what} p/q,p/q,...")
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what}: entries must be integers or fractions p/q") from None


def _vec(x) -> list[str]:
    return [str(v) for v in x]


def _matching(hg: Hypergraph, pm) -> dict:
    idx = sorted(pm)
    return {"edges": idx, "labels": [hg.labels[i] for i in idx]}


def _shore_list(hg: Hypergraph, s) -> list[str]:
    return hg.sorted_vertices(s)


def cmd_info(hg, args):
    inv = matching.matching_invariants(hg, args.budget)
    return Answer({"vertices": hg.n, "edges": hg.m, "rank": hg.rank(), "uniform": hg.is_uniform(),
                   "connected": is_connected(hg), "degrees": {v: degree(hg, v) for v in hg.vertices},
                   "invariants": inv.to_dict()})


def cmd_matchings(hg, args):
    pms = matching.enumerate_perfect_matchings(hg, args.budget)
    return Answer({"count": len(pms), "perfect_matchings": [_matching(hg, pm) for pm in pms]})


def cmd_covered(hg, args):
    if hg.m == 0:
        return Answer({"matching_covered": False, "reason": "no edges"}, False)
    if not is_connected(hg):
        return Answer({"matching_covered": False, "reason": "not connected"}, False)
    bad = matching.find_uncovered_edge(hg, args.budget)
    if bad is not None:
        return Answer({"matching_covered": False, "reason": "edge in no perfect matching",
                       "uncovered_edge": {"index": bad, "label": hg.labels[bad],
                                          "vertices": hg.sorted_vertices(hg.edges[bad])}}, False)
    pms = matching.enumerate_perfect_matchings(hg, args.budget)
    cover = {hg.labels[i]: _matching(hg, next(pm for pm in pms if i in pm)) for i in range(hg.m)}
    return Answer({"matching_covered": True, "covering_matchings": cover})


def cmd_uniformable(hg, args):
    mult = uniform.check_uniformable(hg)
    if mult is None:
        cert = uniform.non_uniformable_certificate(hg)
        return Answer({"uniformable": False, "farkas_edge_weights": _vec(cert)}, False)
    return Answer({"uniformable": True, "multiplicity": mult.to_dict(hg)})


def cmd_tight_cuts(hg, args):
    cuts = tightcut.list_tight_cuts(hg, args.budget)
    out = {"tight_cuts": [{"shore": _shore_list(hg, c.shore), "trivial": c.trivial,
                           "cut": sorted(cut(hg, c.shore).edge_indices)} for c in cuts]}
    if matching.is_matching_covered(hg, args.budget):
        seps = tightcut.separating_cuts(hg, args.budget)
        out["separating_cuts"] = [{"shore": _shore_list(hg, s), "tight": t} for s, t in seps]
        out["separating_not_tight"] = [_shore_list(hg, s) for s, t in seps if not t]
    else:
        out["separating_cuts"] = None
        out["note"] = "separating cuts are only defined for matching covered hypergraphs"
    return Answer(out)


def cmd_contract(hg, args):
    pair = tightcut.contract(hg, _shore(hg, args.shore), force=args.force, budget=args.budget)
    return Answer({"shore": _shore_list(hg, pair.shore), "forced": pair.forced,
                   "s": pair.s, "s_bar": pair.s_bar,
                   "h_s": pair.h_s.to_dict(), "h_s_bar": pair.h_s_bar.to_dict(),
                   "edge_map_s": {str(k): v for k, v in sorted(pair.edge_map_s.items())},
                   "edge_map_s_bar": {str(k): v for k, v in sorted(pair.edge_map_s_bar.items())}})


def _strategy(hg, args):
    shores = []
    if args.shores:
        shores = [[t.strip() for t in part.split(",") if t.strip()] for part in args.shores.split(";")]
    return decomp.make_strategy(args.strategy, seed=args.seed, shores=shores)


def cmd_decompose(hg, args):
    d = decomp.decompose(hg, _strategy(hg, args), args.budget)
    fam = decomp.extract_laminar_family(d, args.budget)
    out = d.to_dict()
    out["brick_count"] = len(d.bricks)
    out["family"] = [_shore_list(hg, s) for s in fam]
    return Answer(out)


def cmd_all_decompositions(hg, args):
    ds = decomp.enumerate_all_decompositions(hg, args.budget)
    return Answer({"count": len(ds), "decompositions": [
        {"family": [_shore_list(hg, s) for s in decomp.sorted_family(hg, d.family)],
         "bricks": [b.to_dict() for b in d.bricks]} for d in ds]})


def cmd_verify_uniqueness(hg, args):
    ds = decomp.enumerate_all_decompositions(hg, args.budget)
    rep = decomp.verify_uniqueness(ds)
    out = {"decompositions": rep.count, "equivalent": rep.equivalent,
           "families": [[_shore_list(hg, s) for s in decomp.sorted_family(hg, d.family)] for d in ds]}
    if rep.equivalent and len(ds) > 1:
        out["bijections"] = [{str(k): v for k, v in sorted(decomp.find_brick_bijection(ds[0], d).items())}
                             for d in ds[1:]]
    if not rep.equivalent:
        i, j = rep.counterexample
        out["counterexample"] = {"first": ds[i].to_dict(), "second": ds[j].to_dict()}
    return Answer(out, rep.equivalent)


def cmd_polytope_member(hg, args):
    mem = polytope.matching_polytope_membership(hg, _vector(args.vector), args.budget)
    return Answer(mem.to_dict(), mem.inside)


def cmd_polytope_integral(hg, args):
    x = polytope.find_fractional_vertex(hg, args.budget)
    if x is not None:
        return Answer({"integral": False, "fractional_vertex": polytope.vector_to_dict(x)}, False)
    return Answer({"integral": True, "vertices": [polytope.vector_to_dict(v)
                                                  for v in polytope.fractional_vertices(hg, args.budget)]})


def cmd_split(hg, args):
    sp = polytope.split(hg, _shore(hg, args.shore), _vector(args.vector), force=args.force, budget=args.budget)
    return Answer({"h_s": sp.pair.h_s.to_dict(), "h_s_bar": sp.pair.h_s_bar.to_dict(),
                   "x_s": _vec(sp.x_s), "x_s_bar": _vec(sp.x_s_bar)})


def cmd_join(hg, args):
    x = polytope.join(hg, _shore(hg, args.shore), _vector(args.x_s, "--x-s"),
                      _vector(args.x_s_bar, "--x-s-bar"), force=args.force, budget=args.budget)
    return Answer({"x": _vec(x)})


def cmd_witness(hg, args):
    w = polytope.separating_witness(hg, _shore(hg, args.shore), args.budget)
    return Answer(w.to_dict())


def cmd_balanced(hg, args):
    cyc = polytope.find_strong_odd_cycle(hg, args.budget)
    if cyc is not None:
        return Answer({"balanced": False, "strong_odd_cycle": [
            {"vertex": v, "edge": e, "label": hg.labels[e]} for v, e in cyc]}, False)
    return Answer({"balanced": True})


def cmd_r_partite(hg, args):
    r = args.r if args.r is not None else hg.rank()
    part = polytope.find_r_partition(hg, r, args.budget)
    if part is None:
        return Answer({"r": r, "r_partite": False, "reason": "backtracking search exhausted"}, False)
    return Answer({"r": r, "r_partite": True, "partition": part})


def cmd_find_tight_cut(hg, args):
    res = cutfinder.find_nontrivial_tight_cut(hg, budget=args.budget)
    return Answer(res.to_dict(hg))


COMMANDS = {
    "info": cmd_info, "matchings": cmd_matchings, "covered": cmd_covered, "uniformable": cmd_uniformable,
    "tight-cuts": cmd_tight_cuts, "contract": cmd_contract, "decompose": cmd_decompose,
    "all-decompositions": cmd_all_decompositions, "verify-uniqueness": cmd_verify_uniqueness,
    "polytope-member": cmd_polytope_member, "polytope-integral": cmd_polytope_integral,
    "split": cmd_split, "join": cmd_join, "witness": cmd_witness, "balanced": cmd_balanced,
    "r-partite": cmd_r_partite, "find-tight-cut": cmd_find_tight_cut,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperbricks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-", help="hypergraph JSON file, '-' for stdin")
        p.add_argument("--budget", type=int, default=matching.DEFAULT_BUDGET, help="search node ceiling")
        p.add_argument("--seed", type=int, default=0, help="seed for the random strategy")
        p.add_argument("--shore", help="comma separated vertex list")
        p.add_argument("--strategy", choices=["first", "random", "scripted"], default="first")
        p.add_argument("--shores", help="scripted shores, ';' between shores, ',' between vertices")
        p.add_argument("--vector", help="comma separated rationals, one per edge")
        p.add_argument("--x-s", dest="x_s", help="vector over the edges of the shore-contracted side")
        p.add_argument("--x-s-bar", dest="x_s_bar", help="vector over the edges of the complement-contracted side")
        p.add_argument("--force", action="store_true", help="contract even if the cut is not tight")
        p.add_argument("-r", type=int, help="number of classes for r-partite")
        p.add_argument("--out", help="also write the report to this file")
        p.add_argument("--timing", action="store_true", help="add wall-clock time (output no longer reproducible)")
    return parser


def run(argv: list[str] | None = None, stdin=None) -> tuple[int, dict]:
    """Execute one subcommand; returns the exit code and the report."""
    args = build_parser().parse_args(argv)
    report: dict = {"command": args.command}
    start = time.perf_counter()
    try:
        if args.input == "-":
            text = (stdin or sys.stdin).read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        report["input_digest"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
        hg = parse(text)
        answer = COMMANDS[args.command](hg, args)
        report["result"] = answer.result
        code = EXIT_OK if answer.holds else EXIT_FALSE
    except OSError as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        code = EXIT_INPUT
    except (ParseError, PreconditionError) as exc:
        report["error"] = {"kind": "parse" if isinstance(exc, ParseError) else "precondition",
                           "message": str(exc)}
        code = EXIT_INPUT
    except BudgetExceeded as exc:
        report["error"] = {"kind": "budget", "message": str(exc)}
        code = EXIT_BUDGET
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 6)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump(report))
    return code, report


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    sys.stdout.write(dump(report))
    if "error" in report:
        print(f"hyperbricks: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
