"""Infinity crossings and cusp counts of the n-th caustic as n grows.

    python3 scripts/complexity_table.py --a 2 --b 1 --source 0.8,0.3 --n-max 12
"""

import argparse

from billiard_caustics.cusps import find_cusps
from billiard_caustics.envelope import caustic, infinity_crossings
from billiard_caustics.geometry import ConicTable, Point


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--source", default="0.8,0.3")
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--samples", type=int, default=4096)
    args = ap.parse_args()

    table = ConicTable(args.a, args.b)
    O = Point(*map(float, args.source.split(",")))
    print(f"{'n':>3} {'crossings':>10} {'cusps':>6} {'at infinity':>12}")
    for n in range(1, args.n_max + 1):
        c = caustic(table, O, n, args.samples)
        cusps = find_cusps(c, classify=False)
        far = sum(k.location.is_infinite for k in cusps)
        print(f"{n:>3} {infinity_crossings(c):>10} {len(cusps):>6} {far:>12}")


if __name__ == "__main__":
    main()
