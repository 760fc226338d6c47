#!/usr/bin/env python3
"""Trend-line data for the tilted-cone model: predictions across an arc-length ratio sweep.

Writes a CSV with columns ratio, x_mm, h_mm, theta_deg, axial_ratio for a
fixed shorter-side arc length and base radius.
"""

import argparse
from pathlib import Path

import numpy as np

from teleact.bend import BendInputs, InfeasibleConeError, solve_tilted_cone


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s0", type=float, default=70.0, help="shorter side arc length (mm)")
    parser.add_argument("--r", type=float, default=30.0, help="base radius (mm)")
    parser.add_argument("--h0", type=float, default=20.0, help="rest height (mm)")
    parser.add_argument("--ratio-max", type=float, default=1.3)
    parser.add_argument("--steps", type=int, default=61)
    parser.add_argument("--out", type=Path, default=Path("bend_ratio_curve.csv"))
    args = parser.parse_args()

    lines = ["ratio,x_mm,h_mm,theta_deg,axial_ratio"]
    for ratio in np.linspace(1.0, args.ratio_max, args.steps):
        try:
            p = solve_tilted_cone(BendInputs(args.s0, args.s0 * ratio, args.r, h0=args.h0))
        except InfeasibleConeError:
            break
        lines.append(f"{ratio:.9g},{p.x:.9g},{p.h:.9g},{p.theta_deg:.9g},{p.axial_ratio:.9g}")
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out} ({len(lines) - 1} rows)")


if __name__ == "__main__":
    main()
