"""Cusps of the refraction caustic of a parallel beam entering a disc."""

import argparse

from billiard_caustics.cusps import find_cusps
from billiard_caustics.refraction import (
    RefractionSetup, cusp_radii, on_axis_radii, refraction_caustic, refraction_cusps,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mu", type=float, nargs="+", default=[1.2, 1.5, 2.0, 3.0, 4.0])
    ap.add_argument("--radius", type=float, default=1.0)
    args = ap.parse_args()

    print(f"{'mu':>5} {'R/mu':>9} {'off-axis radii':>40} {'on-axis radii':>28} {'lit side':>9}")
    for mu in args.mu:
        setup = RefractionSetup(mu, args.radius)
        off, on = refraction_cusps(setup)
        lit = find_cusps(refraction_caustic(setup, lit_only=True))
        inner, outer = on_axis_radii(setup)
        off_r = ", ".join(f"{r:.6f}" for r in sorted(cusp_radii(off)))
        on_r = ", ".join(f"{r:.4f}" for r in sorted(set(round(r, 10) for r in cusp_radii(on))))
        print(f"{mu:>5} {args.radius / mu:>9.6f} {off_r:>40} {on_r:>28} {len(lit):>9}")
        assert abs(inner - min(cusp_radii(on))) < 1e-6 and abs(outer - max(cusp_radii(on))) < 1e-6


if __name__ == "__main__":
    main()
