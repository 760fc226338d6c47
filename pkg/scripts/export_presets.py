#!/usr/bin/env python3
"""Export every named preset as STL + metrics JSON into an output directory."""

import argparse
import json
from pathlib import Path

from teleact import bend, sweep
from teleact.presets import preset, preset_names
from teleact.solid import loft, mesh_diagnostics, write_stl


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("preset_meshes"))
    parser.add_argument("--angular-step", type=float, default=5.0)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for name in preset_names():
        design = preset(name)
        mesh = loft(design)
        stl_path = args.out / f"{name}.stl"
        write_stl(mesh, stl_path)
        report = mesh_diagnostics(mesh)
        payload = {
            "diagnostics": report.to_dict(),
            "bend": bend.predict_from_design(design).to_dict(),
            "metrics": sweep.evaluate_design(design),
        }
        (args.out / f"{name}.metrics.json").write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n"
        )
        print(f"{name}: {report.n_triangles} triangles, volume {report.enclosed_volume:.1f} mm^3")


if __name__ == "__main__":
    main()
