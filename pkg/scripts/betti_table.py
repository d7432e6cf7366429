"""Betti table of C, C+-, D and D+- over a few scalar settings.

    python scripts/betti_table.py --n-max 4 --q 1 2 1/3 -1
"""

import argparse

from heckestab import complexes as C
from heckestab.fields import ScalarConfig
from heckestab.homology import homology_dims


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--q", nargs="+", default=["1", "2", "1/3", "-1"])
    ap.add_argument("--field", default="Q")
    ap.add_argument("--complex", nargs="+", default=["C", "Cpm", "D", "Dpm"],
                    choices=sorted(C.BUILDERS))
    args = ap.parse_args()

    print(f"{'complex':8} {'q':>6} {'n':>2}  betti(-1..n-1)")
    for name in args.complex:
        qs = ["1"] if name in ("C", "Cpm") else args.q
        for q in qs:
            sc = ScalarConfig.parse(args.field, q)
            for n in range(1, args.n_max + 1):
                rep = homology_dims(C.BUILDERS[name](n, sc))
                row = " ".join(f"{rep.betti[r]:>4}" for r in sorted(rep.betti))
                flag = "" if rep.vanishes_through(n - 2) else "  <- not acyclic below top"
                print(f"{name:8} {q:>6} {n:>2}  {row}{flag}")


if __name__ == "__main__":
    main()
