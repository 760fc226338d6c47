"""Acceptance suite: one test per release criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to get one pass/fail line
per criterion (failures surface as the usual pytest FAILED lines).
"""

import math
import time
import warnings

import numpy as np
import pytest

from test_midline import nurbs_point_oracle, random_segment
from test_solid import edge_count_brute_force, parse_stl_independent

from teleact.bend import BendInputs, expansion_ratio, solve_tilted_cone
from teleact.cli import main
from teleact.cross_section import ThicknessProfile, union_of_circles
from teleact.midline import eval_nurbs_many, straight_midline
from teleact.params import design_to_dict, with_resolution
from teleact.presets import FACTORS, apply_factor, baseline
from teleact.silhouette import AmbiguousTipWarning, FrameMeasurement, bend_angle, deformation_metrics
from teleact.solid import loft, mesh_diagnostics, mesh_digest, revolve_contours
from teleact.sweep import evaluate_designs, generate_doe, rows_to_csv, sensitivity, SweepRow


def _report(name: str):
    print(f"[acceptance] PASS  {name}")


def test_criterion_nurbs_oracle_equivalence():
    """1000 random segments x 100 samples vs recursive summation, <1e-9, <10 s."""
    rng = np.random.default_rng(20240917)
    us = np.linspace(0.0, 1.0, 100)
    t0 = time.time()
    worst = 0.0
    for _ in range(1000):
        seg = random_segment(rng)
        got = eval_nurbs_many(seg, us)
        expected = np.array([nurbs_point_oracle(seg, u) for u in us])
        scale = np.maximum(np.abs(expected), 1.0)
        worst = max(worst, float(np.max(np.abs(got - expected) / scale)))
    elapsed = time.time() - t0
    assert worst < 1e-9, f"max relative error {worst:.3e}"
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    _report(f"NURBS oracle equivalence (err {worst:.1e}, {elapsed:.1f}s)")


def test_criterion_clamped_endpoints_and_partition_of_unity():
    """Endpoint interpolation and rational partition of unity < 1e-12."""
    rng = np.random.default_rng(7311)
    us = np.linspace(0.0, 1.0, 25)
    worst_endpoint = 0.0
    worst_unity = 0.0
    for _ in range(1000):
        seg = random_segment(rng)
        p0 = eval_nurbs_many(seg, [0.0])[0]
        p4 = eval_nurbs_many(seg, [1.0])[0]
        scale = np.maximum(np.abs(seg.control_points[[0, 4]]), 1.0)
        worst_endpoint = max(
            worst_endpoint,
            float(np.max(np.abs(np.stack([p0, p4]) - seg.control_points[[0, 4]]) / scale)),
        )
        # constant control net: any deviation is a partition-of-unity defect
        const = seg.__class__(
            control_points=np.tile([2.5, -4.0], (5, 1)), weights=seg.weights, knots=seg.knots
        )
        pts = eval_nurbs_many(const, us)
        worst_unity = max(worst_unity, float(np.max(np.abs(pts - [2.5, -4.0]))))
    assert worst_endpoint < 1e-12
    assert worst_unity < 1e-12
    _report(f"clamped endpoints + partition of unity (err {max(worst_endpoint, worst_unity):.1e})")


def test_criterion_capsule():
    """Straight midline L=40, r=2: area/perimeter within 1% of closed form at defaults."""
    m = straight_midline(40.0, 201)
    contour = union_of_circles(m, ThicknessProfile(np.full(201, 2.0)))  # default cell r/4
    area_exact = 2 * 2.0 * 40.0 + math.pi * 4.0  # 172.566
    perim_exact = 2 * 40.0 + 4.0 * math.pi  # 92.566
    area_err = abs(contour.area - area_exact) / area_exact
    perim_err = abs(contour.perimeter - perim_exact) / perim_exact
    assert area_err < 0.01, f"area {contour.area:.3f} vs {area_exact:.3f}"
    assert perim_err < 0.01, f"perimeter {contour.perimeter:.3f} vs {perim_exact:.3f}"
    _report(f"capsule (area err {area_err:.2%}, perimeter err {perim_err:.2%})")


def test_criterion_torus():
    """Circle r=2 at rho=10 revolved: volume and area within 1% of 789.57, watertight."""
    th = np.linspace(0, 2 * np.pi, 257)[:-1]
    ring = np.column_stack([10 + 2 * np.cos(th), 2 * np.sin(th)])
    mesh = revolve_contours([ring] * 72)
    report = mesh_diagnostics(mesh)
    target = 789.57  # 2 pi^2 R r^2 == 4 pi^2 R r at R=10, r=2
    vol_err = abs(report.enclosed_volume - target) / target
    area_err = abs(report.surface_area - target) / target
    assert vol_err < 0.01 and area_err < 0.01
    counts = edge_count_brute_force(mesh.triangles.tolist())
    assert all(c == 2 for c in counts.values()), "edge census found non-manifold edges"
    _report(f"torus (volume err {vol_err:.2%}, area err {area_err:.2%}, watertight)")


def test_criterion_baseline_mesh():
    """Baseline at defaults: watertight, stable digest x3, <0.5% volume on step halving, <30 s."""
    design = baseline()
    t0 = time.time()
    meshes = [loft(design) for _ in range(3)]
    elapsed_one = (time.time() - t0) / 3
    digests = {mesh_digest(m) for m in meshes}
    assert len(digests) == 1, "digest varies across runs"
    report = mesh_diagnostics(meshes[0])
    assert report.watertight and report.euler_characteristic == 0
    v1 = report.enclosed_volume
    v2 = mesh_diagnostics(loft(with_resolution(design, angular_step_deg=2.5))).enclosed_volume
    drift = abs(v2 - v1) / v1
    assert drift < 0.005, f"volume drift {drift:.3%} on step halving"
    assert elapsed_one < 30.0, f"generation took {elapsed_one:.1f}s"
    _report(f"baseline mesh (volume drift {drift:.3%}, {elapsed_one:.1f}s/run)")


def test_criterion_bend_model():
    """Worked example, 10k random back-substitutions <1e-9, exact zero, scale invariance."""
    pred = solve_tilted_cone(BendInputs(100.0, 120.0, 20.0))
    assert pred.x == 55.0
    assert abs(pred.h - 93.675) < 1e-3
    assert abs(pred.theta_deg - 30.42) < 0.01

    rng = np.random.default_rng(5150)
    checked = 0
    worst = 0.0
    while checked < 10_000:
        s0 = rng.uniform(1.0, 500.0)
        s1 = s0 * rng.uniform(1.0, 1.5)
        r = rng.uniform(1.0, 200.0)
        x = (s1 * s1 - s0 * s0) / (4 * r)
        if s0 * s0 < (x - r) ** 2:
            continue
        p = solve_tilted_cone(BendInputs(s0, s1, r))
        r1 = abs(s1 * s1 - (p.h**2 + (p.x + r) ** 2)) / (s1 * s1)
        r0 = abs(s0 * s0 - (p.h**2 + (p.x - r) ** 2)) / (s0 * s0)
        worst = max(worst, r0, r1)
        checked += 1
    assert worst < 1e-9, f"back-substitution residual {worst:.2e}"

    assert solve_tilted_cone(BendInputs(77.3, 77.3, 19.0)).theta_deg == 0.0

    k = 4.25
    a = solve_tilted_cone(BendInputs(90.0, 105.0, 30.0))
    b = solve_tilted_cone(BendInputs(k * 90.0, k * 105.0, k * 30.0))
    assert abs(b.x - k * a.x) / (k * a.x) < 1e-12
    assert abs(b.h - k * a.h) / (k * a.h) < 1e-12
    assert abs(b.theta_deg - a.theta_deg) < 1e-12
    _report(f"bend model (10k residual {worst:.1e})")


def test_criterion_expansion_ratio():
    """(l0=20, l1=150) -> 6.5."""
    assert expansion_ratio(20.0, 150.0) == pytest.approx(6.5, abs=1e-12)
    _report("expansion ratio 6.5")


def test_criterion_silhouette_metrology():
    """Growing rectangle 12 px/frame at alpha=0.25 -> exact 3.0 mm steps; angle example; invariances."""
    def rect(shape, top, left, height, width):
        f = np.zeros(shape, dtype=np.uint8)
        f[top : top + height, left : left + width] = 255
        return f

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AmbiguousTipWarning)

        frames = [rect((400, 200), 360 - 12 * k, 80, 30 + 12 * k, 40) for k in range(8)]
        series = deformation_metrics(frames, alpha=0.25)
        assert np.array_equal(series.dl_mm, 3.0 * np.arange(8)), "programmed increments missed"

        angle = bend_angle(FrameMeasurement(h=181, w=11, base=(40.0, 190.0), tip=(50.0, 10.0), area=100))
        assert abs(angle - 3.18) < 0.01

        rng = np.random.default_rng(99)
        for _ in range(20):
            heights = rng.integers(20, 70, size=4)
            dx, dy = int(rng.integers(-12, 12)), int(rng.integers(-12, 12))
            alpha = float(rng.uniform(0.05, 1.5))

            def scene(sx, sy):
                return [
                    rect((220, 220), 110 - h // 2 + sy, 70 + sx, int(h), 24 + int(h) // 3)
                    for h in heights
                ]

            a = deformation_metrics(scene(0, 0), alpha=alpha)
            b = deformation_metrics(scene(dx, dy), alpha=alpha)
            c = deformation_metrics(scene(0, 0), alpha=2 * alpha)
            assert np.allclose(a.dl_mm, b.dl_mm) and np.allclose(a.dr_mm, b.dr_mm)
            assert np.allclose(a.theta_deg, b.theta_deg)
            assert np.allclose(c.dl_mm, 2 * a.dl_mm) and np.allclose(c.dr_mm, 2 * a.dr_mm)
            assert np.allclose(c.theta_deg, a.theta_deg)
    _report("silhouette metrology (increments, angle example, invariances)")


def test_criterion_sweep():
    """15 designs, OFAT reconstruction, exact slope on linear data, byte-identical CSV."""
    base = baseline()
    designs = generate_doe(base)
    assert len(designs) == 15

    for design_id, factor, level, design in designs[1:]:
        rebuilt = apply_factor(base, factor, level)
        assert design_to_dict(rebuilt) == design_to_dict(design), f"OFAT delta broken for {design_id}"

    linear = [
        SweepRow("BAS", "BAS", "", 5.0, 5.0, 5.0, 5.0, 5.0),
        SweepRow("AMP-low", "AMP", "low", 3.0, 3.0, 3.0, 3.0, 3.0),
        SweepRow("AMP-high", "AMP", "high", 7.0, 7.0, 7.0, 7.0, 7.0),
    ]
    for entry in sensitivity(linear):
        assert entry.slope == 2.0, "least-squares slope must be exact on linear data"

    rows_a = evaluate_designs(designs)
    rows_b = evaluate_designs(designs)
    assert all(r.status == "ok" for r in rows_a)
    csv_a, csv_b = rows_to_csv(rows_a), rows_to_csv(rows_b)
    assert csv_a.encode() == csv_b.encode(), "sweep CSV not byte-identical across runs"
    _report("sweep (15 designs, OFAT, exact slope, byte-identical CSV)")


def test_criterion_cli_golden_files(tmp_path, capsys):
    """bend, generate, sweep outputs match the stored goldens byte for byte."""
    from pathlib import Path

    golden = Path(__file__).parent / "golden"

    assert main(["bend", "--s0", "100", "--s1", "120", "--r", "20"]) == 0
    assert capsys.readouterr().out.encode() == (golden / "bend.txt").read_bytes()

    out_stl = tmp_path / "mesh.stl"
    assert main(["generate", "--config", str(golden / "generate_config.json"), "--out", str(out_stl)]) == 0
    capsys.readouterr()
    assert out_stl.read_bytes() == (golden / "generate.stl").read_bytes()
    assert (tmp_path / "mesh.metrics.json").read_bytes() == (golden / "generate.metrics.json").read_bytes()
    # independent reader agrees on the triangle count
    assert len(parse_stl_independent(out_stl.read_bytes())) == 1536

    assert main(["sweep", "--spec", str(golden / "sweep_spec.json"), "--out", str(tmp_path / "sw")]) == 0
    capsys.readouterr()
    assert (tmp_path / "sw" / "results.csv").read_bytes() == (golden / "sweep_out" / "results.csv").read_bytes()
    assert (tmp_path / "sw" / "sensitivity.csv").read_bytes() == (golden / "sweep_out" / "sensitivity.csv").read_bytes()
    _report("CLI golden files (bend, generate, sweep)")


def test_criterion_primary_standalone():
    """The primary component runs without any secondary build artifacts."""
    import sys

    assert not any(name.startswith("frontend") for name in sys.modules), (
        "primary suite must not import secondary component code"
    )
    for mod in list(sys.modules):
        if mod.startswith("teleact"):
            path = getattr(sys.modules[mod], "__file__", "") or ""
            assert "frontend" not in path
    _report("primary suite standalone (no secondary component required)")
