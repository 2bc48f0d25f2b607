#!/usr/bin/env python3
"""Term ablation study on one synthetic corpus.

Trains the full model and each single-term variant on the same network and
prints a Macro/Micro F1 table across training fractions, showing how much
each term contributes when content carries the community signal.
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from unra.evaluation import evaluate
from unra.synth import SynthConfig, generate
from unra.trainer import TrainConfig, train


VARIANTS = [
    ("full", {}),
    ("structure only", {"use_content": False, "use_labels": False}),
    ("content+labels", {"use_structure": False, "alpha": 0.0}),
    ("no labels", {"use_labels": False}),
]


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--communities", type=int, default=4)
    ap.add_argument("--papers", type=int, default=200)
    ap.add_argument("--authors", type=int, default=120)
    ap.add_argument("--overlap", type=float, default=0.1)
    ap.add_argument("--fractions", type=float, nargs="+", default=[0.1, 0.3, 0.5])
    ap.add_argument("--repeats", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    return ap.parse_args()


def main():
    args = parse_args()
    net = generate(
        SynthConfig(
            communities=args.communities,
            papers=args.papers,
            authors=args.authors,
            overlap=args.overlap,
            seed=args.seed,
        )
    )

    results = {}
    for name, overrides in VARIANTS:
        config = TrainConfig(seed=args.seed, **overrides)
        start = time.perf_counter()
        model = train(net, config).model
        report = evaluate(
            model, net, fractions=args.fractions, repeats=args.repeats, seed=args.seed
        )
        elapsed = time.perf_counter() - start
        results[name] = report
        print(f"trained '{name}' in {elapsed:.1f}s", file=sys.stderr)

    width = max(len(name) for name, _ in VARIANTS)
    header = "variant".ljust(width) + "".join(
        f"  macro@{f:g}  micro@{f:g}" for f in args.fractions
    )
    print(header)
    print("-" * len(header))
    for name, _ in VARIANTS:
        cells = []
        for frac, macro_mean, _, micro_mean, _ in results[name].summary():
            cells.append(f"  {macro_mean:9.4f}  {micro_mean:9.4f}")
        print(name.ljust(width) + "".join(cells))


if __name__ == "__main__":
    main()
