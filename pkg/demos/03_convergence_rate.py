#!/usr/bin/env python3
"""Measure the geometric convergence rate of the root sequences.

Two displacements are tracked side by side (their common limit is the
consistency check on the method), the per-dimension deltas are fitted with
a least-squares line in log10, and the figure-ready CSV is written next to
this script for external plotting.
"""

import io
import pathlib
import time

from hankelpade import convergence_fit, root_sequence
from hankelpade.cli import FIGURE_COLUMNS, emit_figure_data

DMAX = 16
OUT = pathlib.Path(__file__).with_name("convergence_rate.csv")


def main():
    sequences = []
    for disp in (3, 4):
        started = time.time()
        seq = root_sequence(disp, DMAX)
        print(f"displacement {disp}: sequence to D={DMAX} "
              f"in {time.time() - started:.1f}s")
        sequences.append(seq)

    print()
    for seq in sequences:
        fit = convergence_fit(seq, 5, DMAX)
        print(f"  d={seq.disp}: log10 |2 delta| ~ {fit.level:+.3f} "
              f"{fit.slope_per_D:+.3f} * D over D in {fit.Drange}")
        print(f"        i.e. roughly {10 ** fit.level:.1f} * 10^("
              f"{fit.slope_per_D:.3f} D)")

    buf = io.StringIO()
    buf.write(",".join(FIGURE_COLUMNS) + "\n")
    for seq in sequences:
        emit_figure_data(seq, buf)
    OUT.write_text(buf.getvalue(), encoding="utf-8")
    print(f"\nfigure data written to {OUT.name} "
          f"({len(buf.getvalue().splitlines()) - 1} rows)")


if __name__ == "__main__":
    main()
