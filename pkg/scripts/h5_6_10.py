"""Count H(5;6;10) and its edge-addition-critical members.

Expected: 1724440 graphs, 3633 critical.  Generates every 10-vertex graph
with clique number below 6, so budget several hours per core.

    python scripts/h5_6_10.py --jobs 8 --out h5_6_10.g6
"""

import argparse
import os

from folkman.extend import edge_addition_critical
from folkman.gen import GenConstraints, iter_graphs
from folkman.graph import clique_number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", help="write the critical graphs here")
    args = ap.parse_args()
    members = critical = 0
    out = open(args.out, "w") if args.out else None
    for g in iter_graphs(GenConstraints(10, max_clique=6), jobs=args.jobs):
        if clique_number(g) != 5:
            continue
        members += 1
        if edge_addition_critical(g, 6):
            critical += 1
            if out:
                out.write(g.to_g6() + "\n")
    if out:
        out.close()
    print(f"H(5;6;10): {members} graphs, {critical} edge-addition-critical")
    print(f"expected:  1724440 graphs, 3633 edge-addition-critical")
    return 0 if (members, critical) == (1724440, 3633) else 1


if __name__ == "__main__":
    raise SystemExit(main())
