#!/usr/bin/env python3
"""Generate a synthetic silhouette sequence (growing rectangle) as PGM frames.

Useful as a quick end-to-end check of the silhouette tool:

    python scripts/make_demo_frames.py --out frames/
    teleact silhouette --frames frames/ --mm-per-px 0.25 --out series.csv
"""

import argparse
from pathlib import Path

import numpy as np

from teleact.silhouette import write_pgm


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("demo_frames"))
    parser.add_argument("--frames", type=int, default=10)
    parser.add_argument("--growth-px", type=int, default=12, help="height growth per frame")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    height, width = 480, 240
    base_row = height - 40
    for k in range(args.frames):
        frame = np.zeros((height, width), dtype=np.uint8)
        top = base_row - 60 - args.growth_px * k
        frame[top:base_row, 90:150] = 255
        write_pgm(args.out / f"frame_{k:04d}.pgm", frame)
    print(f"wrote {args.frames} frames to {args.out}")


if __name__ == "__main__":
    main()
