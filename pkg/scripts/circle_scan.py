"""Cusp count and layout for circle caustics over a grid of sources and n.

Prints one row per (d, n): number of cusps, how many sit on the line
through the source and the centre, how many on the circle of radius d,
and their orders.
"""

import argparse

import numpy as np

from billiard_caustics.cusps import circle_cusp_layout, find_cusps
from billiard_caustics.envelope import caustic
from billiard_caustics.geometry import ConicTable, Point


def main():
    ap = argparse.ArgumentParser(description="scan circle caustics")
    ap.add_argument("--d", type=float, nargs="+", default=[0.1, 0.25, 0.4, 0.7, 0.9])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--angle", type=float, default=0.0, help="polar angle of the source")
    args = ap.parse_args()

    table = ConicTable(1.0, 1.0)
    bad = 0
    print(f"{'d':>5} {'n':>3} {'cusps':>6} {'line':>5} {'circle':>7}  orders")
    for d in args.d:
        O = Point(d * np.cos(args.angle), d * np.sin(args.angle))
        for n in range(1, args.n_max + 1):
            cusps = find_cusps(caustic(table, O, n))
            line, circ = circle_cusp_layout(O, cusps)
            orders = [k.order for k in cusps]
            bad += (len(cusps), line, circ) != (4, 2, 2) or orders != [2] * 4
            print(f"{d:>5} {n:>3} {len(cusps):>6} {line:>5} {circ:>7}  {orders}")
    print(f"configurations off the expected pattern: {bad}")


if __name__ == "__main__":
    main()
