#!/usr/bin/env python3
"""Differential experiment: oracle vs. both rule systems over a seeded batch.

Prints the report JSON plus a small per-strategy node-count summary and, when
the configuration exercises backtracking, the trials where the optimized
system expanded strictly fewer nodes.

Usage:
    python scripts/run_fuzz.py [--trials N] [--seed N] [--max-depth N]
                               [--names N] [--roles N] [--structured]
"""

from __future__ import annotations

import argparse
import json

from alcsat.harness import GenConfig, run_differential

STRUCTURED_WEIGHTS = {
    "name": 2.0,
    "top": 0.3,
    "bot": 0.3,
    "not": 1.5,
    "and": 2.5,
    "or": 2.5,
    "exists": 2.0,
    "forall": 2.0,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=2025)
    parser.add_argument("--max-depth", type=int, default=3)
    parser.add_argument("--names", type=int, default=4)
    parser.add_argument("--roles", type=int, default=2)
    parser.add_argument(
        "--structured",
        action="store_true",
        help="bias generation toward connectives and quantifiers",
    )
    args = parser.parse_args()

    cfg = GenConfig(
        max_depth=args.max_depth,
        num_names=args.names,
        num_roles=args.roles,
        connective_weights=STRUCTURED_WEIGHTS if args.structured else {},
        seed=args.seed,
    )
    report = run_differential(cfg, args.trials)
    print(json.dumps(report.to_json(), indent=2))

    saved = [t for t in report.trial_log if t.basic_nodes > t.plus_nodes]
    print(f"\ntrials where the optimized system expanded fewer nodes: {len(saved)}")
    for t in saved[:10]:
        print(
            f"  trial {t.index}: basic={t.basic_nodes} plus={t.plus_nodes}"
            f"  {t.concept}"
        )
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
