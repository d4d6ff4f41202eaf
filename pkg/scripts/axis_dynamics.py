"""On-axis cusps from Mobius iteration, checked against the detected caustic cusps."""

import argparse
import math

from billiard_caustics.axis import MAJOR, MINOR, fixed_point_analysis, iterate_axis_cusps, mobius_f, mobius_g
from billiard_caustics.cusps import find_cusps
from billiard_caustics.envelope import caustic
from billiard_caustics.geometry import ConicTable, Point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--x0", type=float, default=0.2)
    ap.add_argument("--axis", choices=[MAJOR, MINOR], default=MAJOR)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--check-up-to", type=int, default=6, help="compare with detected cusps for n up to this")
    args = ap.parse_args()

    table = ConicTable(args.a, args.b)
    for name, m in (("f", mobius_f(table)), ("g", mobius_g(table))):
        rep = fixed_point_analysis(m)
        extra = f" rotation {rep.rotation_angle:.12f} order {rep.order}" if rep.kind == "elliptic" else ""
        print(f"{name}: {rep.kind}, fixed points {rep.fixed_points}, multipliers {rep.multipliers}{extra}")

    source = Point(args.x0, 0.0) if args.axis == MAJOR else Point(0.0, args.x0)
    print(f"{'n':>3} {'forward':>22} {'backward':>22} {'max gap':>10}")
    for n in range(1, args.n_max + 1):
        fwd, back = iterate_axis_cusps(table, args.x0, n, args.axis)
        gap = ""
        if n <= args.check_up_to:
            detected = find_cusps(caustic(table, source, n), classify=False)
            gap = f"{max(min(pt.distance(k.location) for k in detected) for pt in (fwd, back)):.1e}"

        def show(pt):
            return "inf" if pt.is_infinite else f"{pt.x if args.axis == MAJOR else pt.y:.15f}"

        print(f"{n:>3} {show(fwd):>22} {show(back):>22} {gap:>10}")
    if not table.is_circle:
        print(f"focal distance c = {math.sqrt(args.a ** 2 - args.b ** 2):.15f}")


if __name__ == "__main__":
    main()
