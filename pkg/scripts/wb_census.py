#!/usr/bin/env python3
"""Census of well-behavedness verdicts over the built-in corpus.

For every ordered factor pair from the connected-graph corpus, every k,
and every product kind a flavor supports, ask the decider and tally the
verdicts. The output is one row per (flavor, star, k) with true/false
counts; --list-false additionally prints the failing pairs, which is a
quick way to find interesting instances.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from itertools import product as iproduct

from kmatch.corpus import connected_graphs_upto, corpus_names
from kmatch.matchings import DEFAULT_NODE_BUDGET
from kmatch.wellbehaved import AST_STARS, BOXAST_STARS, CHECKERS, CIRCLEDAST_STARS

FLAVOR_STARS = {
    "boxast": BOXAST_STARS,
    "circledast": CIRCLEDAST_STARS,
    "ast": AST_STARS,
}


@dataclass
class CensusConfig:
    max_n: int = 4
    ks: tuple[int, ...] = (1, 2, 3)
    flavors: tuple[str, ...] = ("boxast", "circledast", "ast")
    budget: int = DEFAULT_NODE_BUDGET
    list_false: bool = False


@dataclass
class Tally:
    true: int = 0
    false: int = 0
    unknown: int = 0
    false_pairs: list = field(default_factory=list)


def run_census(cfg: CensusConfig) -> dict[tuple[str, str, int], Tally]:
    graphs = list(connected_graphs_upto(cfg.max_n))
    corpus = list(zip(corpus_names(graphs), graphs))
    tallies: dict[tuple[str, str, int], Tally] = {}
    for flavor in cfg.flavors:
        check = CHECKERS[flavor]
        for star in FLAVOR_STARS[flavor]:
            for k in cfg.ks:
                tally = tallies.setdefault((flavor, star, k), Tally())
                for (gn, g), (hn, h) in iproduct(corpus, corpus):
                    report = check(g, h, star, k, budget=cfg.budget)
                    if report.verdict is True:
                        tally.true += 1
                    elif report.verdict is False:
                        tally.false += 1
                        tally.false_pairs.append((gn, hn))
                    else:
                        tally.unknown += 1
    return tallies


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=4, dest="max_n")
    parser.add_argument("--k", default="1,2,3", help="comma-separated k values")
    parser.add_argument("--flavor", action="append", choices=sorted(FLAVOR_STARS),
                        help="restrict to one flavor (repeatable)")
    parser.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    parser.add_argument("--list-false", action="store_true", dest="list_false")
    args = parser.parse_args(argv)

    cfg = CensusConfig(
        max_n=args.max_n,
        ks=tuple(int(tok) for tok in args.k.split(",") if tok.strip()),
        flavors=tuple(args.flavor) if args.flavor else ("boxast", "circledast", "ast"),
        budget=args.budget,
        list_false=args.list_false,
    )
    tallies = run_census(cfg)

    print(f"{'flavor':<12} {'star':<10} {'k':>2} {'true':>6} {'false':>6} {'unknown':>8}")
    for (flavor, star, k), tally in tallies.items():
        print(f"{flavor:<12} {star:<10} {k:>2} {tally.true:>6} {tally.false:>6} "
              f"{tally.unknown:>8}")
        if cfg.list_false and tally.false_pairs:
            shown = ", ".join(f"{a}|{b}" for a, b in tally.false_pairs[:12])
            more = "" if len(tally.false_pairs) <= 12 else f" (+{len(tally.false_pairs) - 12})"
            print(f"  false: {shown}{more}")
    unknown = sum(t.unknown for t in tallies.values())
    if unknown:
        print(f"warning: {unknown} cells hit the search budget", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
