#!/usr/bin/env python3
"""Corner census over random global actions.

Draws random cyclic global actions on products of small finite fields,
restricts each at every idempotent, and tabulates how often the corner
is a partial Galois extension and which cohomology orders appear.

    python3 scripts/census_sweep.py --count 40 --seed 7 --max-order 512
"""
import argparse
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pargal.cohomology import cohomology_group
from pargal.finring import idempotents
from pargal.fixtures import random_global_instance
from pargal.galois import GaloisCertificate, find_certificate
from pargal.partial_action import restrict_global


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=25, help="global actions drawn")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-order", type=int, default=512)
    ap.add_argument("--engine", default="auto",
                    choices=("auto", "enumerate", "structure", "both"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    galois_votes = Counter()
    h1_orders = Counter()
    h2_orders = Counter()
    strategies = Counter()
    corners = 0

    for i in range(args.count):
        glob, _ = random_global_instance(rng, max_order=args.max_order)
        for e in idempotents(glob.ring):
            act = restrict_global(glob, e)
            corners += 1
            res = find_certificate(act)
            if isinstance(res, GaloisCertificate):
                galois_votes["yes"] += 1
                strategies[res.strategy] += 1
            else:
                galois_votes["no" if res.conclusive else "undecided"] += 1
            h1_orders[cohomology_group(act, 1, engine=args.engine).h_order] += 1
            h2_orders[cohomology_group(act, 2, engine=args.engine).h_order] += 1
        print(f"[{i + 1:3d}/{args.count}] {glob!r}: "
              f"{len(idempotents(glob.ring))} corners", flush=True)

    print()
    print(f"corners examined: {corners}")
    for verdict, n in sorted(galois_votes.items()):
        print(f"  galois {verdict}: {n}")
    for strat, n in sorted(strategies.items()):
        print(f"  certificate via {strat}: {n}")
    print("  |H^1| spectrum: "
          + ", ".join(f"{k}:{v}" for k, v in sorted(h1_orders.items())))
    print("  |H^2| spectrum: "
          + ", ".join(f"{k}:{v}" for k, v in sorted(h2_orders.items())))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
