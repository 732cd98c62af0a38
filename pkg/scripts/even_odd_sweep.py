"""Chart class along the even-to-odd interpolation, with and without a ground plane.

For each geometry, prints the bisected bifurcation intervals and a dense class
scan so the two can be compared by eye.
"""
import argparse

import numpy as np

from emqubit.field import Box, FieldModel, extract_chart, sweep_bifurcations
from emqubit.field.chart import ChartOptions


def family_for(sep, height, ground):
    x = sep / 2
    y = height if ground else 0.0

    def family(t):
        return FieldModel([((-x, y), 1.0), ((x, y), 1.0 - 2.0 * t)], ground, 0.05)
    return family


def run(name, family, region, samples, tol, dense):
    print(f"== {name}")
    for b in sweep_bifurcations(family, (0.0, 1.0), samples, tol, region):
        print(f"  interval [{b.lo:.6f}, {b.hi:.6f}]  width {b.width:.2e}")
        print(f"    before {b.before}")
        print(f"    after  {b.after}")
    opts = ChartOptions(strict=False)
    last = None
    for t in np.linspace(0, 1, dense):
        label = extract_chart(family(float(t)), region, opts).class_label
        if label != last:
            print(f"  t >= {t:.3f}: {label}")
            last = label


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=21)
    ap.add_argument("--tol", type=float, default=1e-4)
    ap.add_argument("--dense", type=int, default=201)
    args = ap.parse_args()
    free = family_for(2.0, 0.5, False)
    run("free pair, window between conductors", free, Box(-1, 1, -1, 1), args.samples, args.tol, args.dense)
    run("free pair, wide box", free, Box(-3, 3, -3, 3), args.samples, args.tol, args.dense)
    grounded = family_for(1.0, 0.5, True)
    run("pair over ground, default box", grounded, grounded(0).default_region(),
        args.samples, args.tol, args.dense)


if __name__ == "__main__":
    main()
