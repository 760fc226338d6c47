"""Command-line front end: generate, sweep, bend, silhouette, serve.

All file outputs are deterministic: no timestamps, fixed float formatting,
fixed STL header tag.  Errors print a single line to stderr and exit 1;
usage problems exit 2 (argparse default).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bend, silhouette, solid, sweep
from .midline import build_midline, midline_to_csv
from .cross_section import contour_to_csv, resample_contour, thickness_profile, union_of_circles
from .params import ValidationError, load_design, validate, with_resolution
from .presets import preset, preset_names

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleact",
        description="Telescopic soft pneumatic actuator design toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a printable STL plus a metrics report")
    src = gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="design config JSON file")
    src.add_argument("--preset", choices=preset_names(), help="named preset design")
    gen.add_argument("--out", type=Path, required=True, help="output STL path")
    gen.add_argument("--angular-step", type=float, help="override angular step (degrees)")
    gen.add_argument("--contour-points", type=int, help="override contour resample count")
    gen.add_argument("--samples-per-segment", type=int, help="override midline samples per segment")
    gen.add_argument("--cell", type=float, help="override distance-field cell size (mm)")
    gen.add_argument("--dump-midline", type=Path, help="also write the theta=0 midline as CSV")
    gen.add_argument("--dump-contour", type=Path, help="also write the theta=0 contour as CSV")

    sw = sub.add_parser("sweep", help="run a one-factor design sweep")
    sw.add_argument("--spec", type=Path, required=True, help="sweep spec JSON file")
    sw.add_argument("--out", type=Path, required=True, help="output directory")

    bd = sub.add_parser("bend", help="tilted-cone bend prediction from arc lengths")
    bd.add_argument("--s0", type=float, required=True, help="shorter side arc length (mm)")
    bd.add_argument("--s1", type=float, required=True, help="opposed side arc length (mm)")
    bd.add_argument("--r", type=float, required=True, help="base radius (mm)")
    bd.add_argument("--h0", type=float, help="rest height (mm), enables the axial ratio")

    sil = sub.add_parser("silhouette", help="measure deformation from PGM frames")
    sil.add_argument("--frames", type=Path, required=True, help="directory of P5 .pgm frames")
    sil.add_argument("--mm-per-px", type=float, required=True, help="pixel scale alpha (mm/px)")
    sil.add_argument("--out", type=Path, required=True, help="output CSV path")
    sil.add_argument("--threshold", type=int, default=128, help="foreground threshold (0-255)")

    srv = sub.add_parser("serve", help="start the HTTP design service")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--host", default="127.0.0.1")

    return parser


def _load(args) -> "sweep.DesignParams":
    design = preset(args.preset) if args.preset else load_design(args.config)
    overrides = {}
    if args.angular_step is not None:
        overrides["angular_step_deg"] = args.angular_step
    if args.contour_points is not None:
        overrides["contour_points"] = args.contour_points
    if args.samples_per_segment is not None:
        overrides["samples_per_segment"] = args.samples_per_segment
    if args.cell is not None:
        overrides["cell_mm"] = args.cell
    if overrides:
        design = with_resolution(design, **overrides)
    return validate(design)


def _cmd_generate(args) -> int:
    design = _load(args)
    mesh = solid.loft(design)
    report = solid.mesh_diagnostics(mesh)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    solid.write_stl(mesh, args.out)

    prediction = bend.predict_from_design(design)
    metrics = sweep.evaluate_design(design)
    payload = {
        "design_digest": mesh.provenance,
        "diagnostics": report.to_dict(),
        "bend": prediction.to_dict(),
        "metrics": metrics,
    }
    metrics_path = args.out.with_suffix(".metrics.json")
    metrics_path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")

    if args.dump_midline:
        m, _ = solid.interpolate_sections(design.sections, 0.0)
        args.dump_midline.write_text(
            midline_to_csv(build_midline(m, design.resolution.samples_per_segment)), encoding="utf-8"
        )
    if args.dump_contour:
        mparams, tspec = solid.interpolate_sections(design.sections, 0.0)
        m = build_midline(mparams, design.resolution.samples_per_segment)
        contour = union_of_circles(m, thickness_profile(m, tspec), cell=design.resolution.cell_mm)
        contour = resample_contour(contour, design.resolution.contour_points)
        args.dump_contour.write_text(contour_to_csv(contour), encoding="utf-8")

    print(f"wrote {args.out} ({report.n_triangles} triangles) and {metrics_path}")
    return 0


def _cmd_sweep(args) -> int:
    base, factor_codes = sweep.load_sweep_spec(args.spec)
    results_path, sens_path = sweep.run_sweep(base, factor_codes, args.out)
    print(f"wrote {results_path} and {sens_path}")
    return 0


def _cmd_bend(args) -> int:
    inputs = bend.BendInputs(s0=args.s0, s1=args.s1, r=args.r, h0=args.h0)
    prediction = bend.solve_tilted_cone(inputs)
    print(json.dumps(prediction.to_dict(), sort_keys=True))
    return 0


def _cmd_silhouette(args) -> int:
    names, series = silhouette.measure_directory(
        args.frames, alpha=args.mm_per_px, threshold=args.threshold
    )
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(silhouette.series_to_csv(names, series), encoding="utf-8")
    print(f"wrote {args.out} ({len(names)} frames)")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "sweep": _cmd_sweep,
    "bend": _cmd_bend,
    "silhouette": _cmd_silhouette,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: invalid design: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
