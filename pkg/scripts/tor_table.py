"""Tor_d(1, 1) over HB_n (or H_n) and the stabilisation verdicts.

    python scripts/tor_table.py --n-max 3 --d-max 1 --q -1
"""

import argparse

from heckestab.fields import ScalarConfig
from heckestab.homology import SizeGuardError, bar_tor_dims, stabilization_map


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=1)
    ap.add_argument("--q", default="2")
    ap.add_argument("--field", default="Q")
    ap.add_argument("--type", choices=("A", "B"), default="B")
    ap.add_argument("--guard", type=int, default=None)
    args = ap.parse_args()
    sc = ScalarConfig.parse(args.field, args.q)

    print(f"type {args.type}, {sc.label}", flush=True)
    for n in range(0, args.n_max + 1):
        try:
            dims = bar_tor_dims(args.type, n, args.d_max, sc, guard=args.guard)
        except SizeGuardError as e:
            print(f"n={n}: skipped ({e})", flush=True)
            continue
        print(f"n={n}: Tor_0..{args.d_max} = {dims}", flush=True)
    print("stabilisation HB_{n-1} -> HB_n", flush=True)
    for n in range(1, args.n_max + 1):
        for d in range(args.d_max + 1):
            try:
                rep = stabilization_map(n, d, sc, kind=args.type, guard=args.guard)
            except SizeGuardError:
                continue
            tag = "stable" if rep.in_stable_range else "      "
            print(f"  n={n} d={d} {tag} {rep.dim_source}->{rep.dim_target} rank {rep.rank}"
                  f"{'  iso' if rep.isomorphism else ''}")


if __name__ == "__main__":
    main()
