"""Command line front end.

Subcommands: product, construct, solve, wellbehaved, whp, scenario,
suite. Machine output is canonical JSON (sorted keys, two-space indent,
a trailing newline) so repeated runs are byte-identical; wall-clock
timings never enter JSON payloads. Exit codes: 0 all good, 1 an
expectation failed, 2 bad input, 3 a search budget ran out under
--strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool
from pathlib import Path
from random import Random

from .constructions import CONSTRUCTORS, predicted_size_for
from .corpus import connected_graphs_upto, corpus_names, load_corpus_dir
from .errors import InconsistentInputs, KmatchError
from .graphs import Graph, graph_to_json_obj, parse_edge_pairs, parse_graph, to_dot
from .matchings import DEFAULT_NODE_BUDGET, enumerate_k_matchings, max_k_matching, validate_k_matching
from .products import KINDS, product
from .scenarios import SCENARIOS, RunReport, run_scenario
from .weakhom import allowed_edges, enumerate_whp_k_matchings, max_whp_k_matching
from .wellbehaved import CHECKERS, equivalence_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _print(text: str) -> None:
    sys.stdout.write(text)


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise KmatchError(f"cannot read graph file {path}: {exc}") from exc
    return parse_graph(text)


def _load_matching(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise KmatchError(f"cannot read matching file {path}: {exc}") from exc
    return parse_edge_pairs(text)


def _oracle_json(r) -> dict:
    return {
        "k": r.k,
        "size": r.size,
        "unmatched": r.unmatched,
        "witness": list(r.witness),
        "exhaustive": r.exhaustive,
        "nodes": r.nodes,
    }


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_product(args) -> int:
    g = _load_graph(args.left)
    h = _load_graph(args.right)
    p = product(g, h, args.kind)
    if args.out == "dot":
        _print(to_dot(p.graph, name="product"))
        return EXIT_OK
    payload = {
        "kind": p.kind,
        "left": graph_to_json_obj(g),
        "right": graph_to_json_obj(h),
        "product": graph_to_json_obj(p.graph),
        "counts": {"vertices": p.graph.n, "edges": p.graph.m},
    }
    if args.out == "table":
        _print(
            f"{p.kind} product: {p.graph.n} vertices, {p.graph.m} edges "
            f"(left {g.n}/{g.m}, right {h.n}/{h.m})\n"
        )
        return EXIT_OK
    _print(canonical_json(payload))
    return EXIT_OK


def _cmd_construct(args) -> int:
    g = _load_graph(args.left)
    h = _load_graph(args.right)
    p = product(g, h, args.product)
    build = CONSTRUCTORS[args.kind]
    if args.kind == "boxast":
        result = build(p, _load_matching(args.mg), _load_matching(args.mh),
                       orientation=args.orientation, normalize=not args.no_normalize)
    else:
        result = build(p, _load_matching(args.mg), _load_matching(args.mh))
    cls = result.classification
    try:
        predicted = predicted_size_for(result)
    except InconsistentInputs:
        predicted = None
    validated = None
    if cls.is_k_matching and cls.k is not None:
        validated, _ = validate_k_matching(p.graph, result.edges, cls.k)
    payload = {
        "kind": result.kind,
        "orientation": result.orientation,
        "product_kind": p.kind,
        "m_g": list(result.m_g),
        "m_h": list(result.m_h),
        "edges": list(result.edges),
        "parts": {name: list(part) for name, part in result.parts.items()},
        "classification": {
            "is_k_matching": cls.is_k_matching,
            "k": cls.k,
            "factor_ks": list(cls.factor_ks) if cls.factor_ks else None,
            "condition": cls.condition,
        },
        "size": {"actual": len(result.edges), "predicted": predicted},
        "validated_k_matching": validated,
    }
    _print(canonical_json(payload))
    return EXIT_OK


def _cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    report = max_k_matching(g, args.k, budget=args.budget)
    payload = {"oracle": _oracle_json(report)}
    if args.enumerate:
        all_matchings = list(enumerate_k_matchings(g, args.k))
        payload["enumeration"] = {
            "count": len(all_matchings),
            "matchings": [list(m) for m in all_matchings],
        }
    _print(canonical_json(payload))
    if args.strict and not report.exhaustive:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_wellbehaved(args) -> int:
    g = _load_graph(args.left)
    h = _load_graph(args.right)
    if args.equivalence:
        rep = equivalence_suite(g, h, args.star, args.k, budget=args.budget)
        payload = {
            "star": rep.star,
            "k": rep.k,
            "conditions": rep.conditions,
            "agree": rep.agree,
            "numbers": rep.numbers,
            "exhaustive": rep.exhaustive,
        }
        _print(canonical_json(payload))
        if args.strict and not rep.exhaustive:
            return EXIT_BUDGET
        return EXIT_OK
    rep = CHECKERS[args.flavor](g, h, args.star, args.k, budget=args.budget)
    payload = {
        "flavor": rep.flavor,
        "star": rep.star,
        "k": rep.k,
        "verdict": rep.verdict,
        "evidence": rep.evidence,
        "exhaustive": rep.exhaustive,
    }
    _print(canonical_json(payload))
    if args.strict and not rep.exhaustive:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_whp(args) -> int:
    g = _load_graph(args.left)
    h = _load_graph(args.right)
    p = product(g, h, args.product)
    m_g = _load_matching(args.mg)
    m_h = _load_matching(args.mh)
    universe = allowed_edges(p, m_g, m_h)
    payload = {
        "product_kind": p.kind,
        "universe": {"size": len(universe.edges), "edges": list(universe.edges)},
    }
    exhausted = True
    if args.max:
        report = max_whp_k_matching(p, m_g, m_h, args.k, budget=args.budget)
        payload["maximum"] = _oracle_json(report)
        exhausted = report.exhaustive
    if args.enumerate:
        members = list(enumerate_whp_k_matchings(p, m_g, m_h, args.k))
        payload["enumeration"] = {"count": len(members)}
    _print(canonical_json(payload))
    if args.strict and not exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def _scenario_report_json(rep: RunReport) -> dict:
    # seconds stay out of the JSON payload: byte-identical reruns.
    return {
        "name": rep.name,
        "measured": rep.measured,
        "checks": list(rep.checks),
        "passed": rep.passed,
    }


def _cmd_scenario(args) -> int:
    if args.list:
        payload = {
            name: {
                "description": spec.description,
                "factors": list(spec.factors),
                "star": spec.star,
                "k": spec.k,
                "construction": spec.construction,
            }
            for name, spec in sorted(SCENARIOS.items())
        }
        _print(canonical_json(payload))
        return EXIT_OK
    names = sorted(SCENARIOS) if args.name in (None, "all") else [args.name]
    reports = [run_scenario(name, budget=args.budget) for name in names]
    if args.out == "table":
        for rep in reports:
            state = "pass" if rep.passed else "FAIL"
            _print(f"{rep.name:<16} {state}  ({rep.seconds:.2f}s)\n")
            for check in rep.checks:
                mark = "ok " if check["ok"] else "BAD"
                _print(
                    f"  {mark} {check['label']} = {check['actual']!r} "
                    f"(expected {check['expected']!r}, {check['provenance']})\n"
                )
    else:
        payload = {"scenarios": [_scenario_report_json(r) for r in reports]}
        _print(canonical_json(payload))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


# the suite ------------------------------------------------------------------


def _suite_row(task) -> dict:
    left_name, left, right_name, right, k, budget = task
    stars = {}
    unknown = False
    failed = False
    verdicts = {}
    for star in ("cartesian", "strong", "lex"):
        rep = equivalence_suite(left, right, star, k, budget=budget)
        stars[star] = {
            "agree": rep.agree,
            "wellbehaved": rep.conditions["unmatched-product"],
        }
        verdicts[star] = rep.conditions["unmatched-product"]
        if rep.agree is None:
            unknown = True
        elif rep.agree is False:
            failed = True
    if any(v is None for v in verdicts.values()):
        implications = None
        unknown = True
    else:
        implications = (not verdicts["lex"] or verdicts["strong"]) and (
            not verdicts["strong"] or verdicts["cartesian"]
        )
        if not implications:
            failed = True
    return {
        "left": left_name,
        "right": right_name,
        "k": k,
        "stars": stars,
        "implications_ok": implications,
        "failed": failed,
        "unknown": unknown,
    }


def _cmd_suite(args) -> int:
    if args.corpus:
        named = list(load_corpus_dir(args.corpus))
    else:
        graphs = connected_graphs_upto(args.max_n)
        named = list(zip(corpus_names(graphs), graphs))
    try:
        ks = [int(tok) for tok in args.k.split(",") if tok.strip()]
    except ValueError as exc:
        raise KmatchError(f"bad --k list {args.k!r}") from exc
    tasks = [
        (ln, lg, rn, rg, k, args.budget)
        for ln, lg in named
        for rn, rg in named
        for k in ks
    ]
    if args.sample is not None:
        rng = Random(args.seed)
        tasks = [t for t in tasks if rng.random() < args.sample]
    if args.workers > 1 and tasks:
        with Pool(args.workers) as pool:
            rows = pool.map(_suite_row, tasks, chunksize=8)
    else:
        rows = [_suite_row(t) for t in tasks]
    failures = sum(1 for r in rows if r["failed"])
    unknown = sum(1 for r in rows if r["unknown"])
    payload = {
        "rows": rows,
        "summary": {"tasks": len(rows), "failures": failures, "unknown": unknown},
    }
    if args.out == "table":
        for r in rows:
            cells = " ".join(
                f"{star}:{_tri(r['stars'][star]['wellbehaved'])}"
                for star in ("cartesian", "strong", "lex")
            )
            state = "FAIL" if r["failed"] else ("?" if r["unknown"] else "ok")
            _print(f"{r['left']:<10} {r['right']:<10} k={r['k']} {cells} {state}\n")
        _print(
            f"tasks={len(rows)} failures={failures} unknown={unknown}\n"
        )
    else:
        _print(canonical_json(payload))
    if failures:
        return EXIT_FAILURE
    if unknown and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def _tri(v) -> str:
    return "?" if v is None else ("y" if v else "n")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "dot", "table"), default="json",
                        help="output format (dot applies to graph payloads only)")
    common.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="search-node budget for the exact oracles")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when any oracle result is non-exhaustive")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled suites (generation itself is deterministic)")

    parser = argparse.ArgumentParser(
        prog="kmatch",
        description="k-matchings in graph products: products, constructions, "
        "exact oracles, and well-behavedness deciders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_prod = sub.add_parser("product", parents=[common], help="build one of the four products")
    p_prod.add_argument("--kind", choices=KINDS, required=True)
    p_prod.add_argument("--left", required=True, help="left factor graph file")
    p_prod.add_argument("--right", required=True, help="right factor graph file")
    p_prod.set_defaults(handler=_cmd_product)

    p_con = sub.add_parser("construct", parents=[common],
                           help="build a matching construction on a product")
    p_con.add_argument("--kind", choices=("boxast", "ast", "circledast"), required=True)
    p_con.add_argument("--product", choices=KINDS, required=True, dest="product")
    p_con.add_argument("--left", required=True)
    p_con.add_argument("--right", required=True)
    p_con.add_argument("--mg", required=True, help="left factor matching file")
    p_con.add_argument("--mh", required=True, help="right factor matching file")
    p_con.add_argument("--orientation", choices=("gh", "hg"), default="gh")
    p_con.add_argument("--no-normalize", action="store_true",
                       help="keep the secondary matching even when the primary is perfect")
    p_con.set_defaults(handler=_cmd_construct)

    p_solve = sub.add_parser("solve", parents=[common], help="exact maximum k-matching")
    p_solve.add_argument("--graph", required=True)
    p_solve.add_argument("--k", type=int, required=True)
    p_solve.add_argument("--enumerate", action="store_true",
                         help="also list every k-matching (small graphs only)")
    p_solve.set_defaults(handler=_cmd_solve)

    p_wb = sub.add_parser("wellbehaved", parents=[common],
                          help="decide whether m_k of a product is attained by a construction")
    p_wb.add_argument("--flavor", choices=("boxast", "ast", "circledast"), default="boxast")
    p_wb.add_argument("--left", required=True)
    p_wb.add_argument("--right", required=True)
    p_wb.add_argument("--star", choices=KINDS, required=True)
    p_wb.add_argument("--k", type=int, required=True)
    p_wb.add_argument("--equivalence", action="store_true",
                      help="run the seven-condition equivalence suite instead")
    p_wb.set_defaults(handler=_cmd_wellbehaved)

    p_whp = sub.add_parser("whp", parents=[common],
                           help="weak-homomorphism preserving matchings of a product")
    p_whp.add_argument("--product", choices=KINDS, required=True, dest="product")
    p_whp.add_argument("--left", required=True)
    p_whp.add_argument("--right", required=True)
    p_whp.add_argument("--mg", required=True)
    p_whp.add_argument("--mh", required=True)
    p_whp.add_argument("--k", type=int, required=True)
    p_whp.add_argument("--max", action="store_true", help="compute the maximum member")
    p_whp.add_argument("--enumerate", action="store_true", help="count all members (bounded)")
    p_whp.set_defaults(handler=_cmd_whp)

    p_scen = sub.add_parser("scenario", parents=[common], help="run a bundled worked example")
    p_scen.add_argument("name", nargs="?", help="scenario name, or 'all'")
    p_scen.add_argument("--list", action="store_true", help="list available scenarios")
    p_scen.set_defaults(handler=_cmd_scenario)

    p_suite = sub.add_parser("suite", parents=[common],
                             help="equivalence + implication ledger over a corpus")
    p_suite.add_argument("--corpus", help="directory of graph files (default: built-in corpus)")
    p_suite.add_argument("--max-n", type=int, default=4, dest="max_n",
                         help="built-in corpus bound (connected graphs up to this order)")
    p_suite.add_argument("--k", default="1,2,3", help="comma-separated k values")
    p_suite.add_argument("--workers", type=int, default=1)
    p_suite.add_argument("--sample", type=float, default=None,
                         help="keep each task with this probability (uses --seed)")
    p_suite.set_defaults(handler=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "scenario" and not args.list and args.name is None:
        args.list = True
    try:
        return args.handler(args)
    except KmatchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
