import json

import numpy as np
import pytest

from teleact.params import design_to_dict, with_resolution
from teleact.presets import FACTORS, apply_factor, baseline
from teleact.sweep import (
    SweepRow,
    analyze_contact,
    evaluate_design,
    evaluate_designs,
    generate_doe,
    load_sweep_spec,
    rows_to_csv,
    run_sweep,
    sensitivity,
    sensitivity_to_csv,
)


def _fast_base():
    return with_resolution(baseline(), angular_step_deg=30.0, contour_points=64, samples_per_segment=32)


def _stub_rows(metric_values: dict[str, tuple[float, float, float]]):
    """Rows with every metric set per factor to (low, bas, high) for slope tests."""
    def row(design_id, factor, level, value):
        return SweepRow(
            design_id, factor, level,
            axial_expansion_ratio=value, radial_expansion_ratio=value,
            mesh_volume_mm3=value, arc_length_ratio=value, bend_theta_deg=value,
        )

    rows = []
    for factor, (low, bas, high) in metric_values.items():
        if not rows:
            rows.append(row("BAS", "BAS", "", bas))
        rows.append(row(f"{factor}-low", factor, "low", low))
        rows.append(row(f"{factor}-high", factor, "high", high))
    return rows


class TestGenerateDoe:
    def test_full_table_yields_fifteen(self):
        designs = generate_doe(baseline())
        assert len(designs) == 15
        assert designs[0][0] == "BAS"
        assert [d[0] for d in designs[1:3]] == ["AMP-low", "AMP-high"]

    def test_empty_factor_set_baseline_only(self):
        designs = generate_doe(baseline(), [])
        assert len(designs) == 1
        assert designs[0][0] == "BAS"

    def test_each_variant_is_single_factor_delta(self):
        base = baseline()
        designs = generate_doe(base)
        for design_id, factor, level, design in designs[1:]:
            rebuilt = apply_factor(base, factor, level)
            assert design_to_dict(rebuilt) == design_to_dict(design)

    def test_unknown_factor_rejected(self):
        with pytest.raises(KeyError):
            generate_doe(baseline(), ["AMP", "ZZZ"])

    def test_deterministic_order(self):
        ids = [d[0] for d in generate_doe(baseline())]
        expected = ["BAS"]
        for f in FACTORS:
            expected += [f"{f.code}-low", f"{f.code}-high"]
        assert ids == expected


class TestEvaluateDesigns:
    def test_duplicated_baseline_rows_identical(self):
        base = _fast_base()
        rows = evaluate_designs([("BAS", "BAS", "", base)] * 3)
        assert len(rows) == 3
        assert rows_to_csv(rows[:1]) * 1  # smoke: formatting works
        first = rows[0]
        for row in rows[1:]:
            for m in ("axial_expansion_ratio", "mesh_volume_mm3", "bend_theta_deg"):
                assert row.metric(m) == first.metric(m)

    def test_volume_ordered_by_thickness(self):
        base = _fast_base()
        rows = evaluate_designs([
            ("THV-low", "THV", "low", apply_factor(base, "THV", "low")),
            ("BAS", "BAS", "", base),
            ("THV-high", "THV", "high", apply_factor(base, "THV", "high")),
        ])
        volumes = [r.mesh_volume_mm3 for r in rows]
        assert volumes[0] < volumes[1] < volumes[2]

    def test_axisymmetric_designs_have_zero_theta(self):
        base = _fast_base()
        rows = evaluate_designs(generate_doe(base, ["AMP", "THV"]))
        assert all(r.bend_theta_deg == 0.0 for r in rows)
        assert all(r.arc_length_ratio == pytest.approx(1.0) for r in rows)

    def test_failure_recorded_per_row_run_continues(self):
        base = _fast_base()
        broken = with_resolution(base, cell_mm=10.0)  # too coarse for the thinnest wall
        rows = evaluate_designs([
            ("bad", "THV", "low", broken),
            ("BAS", "BAS", "", base),
        ])
        assert rows[0].status.startswith("error:")
        assert rows[0].mesh_volume_mm3 is None
        assert rows[1].status == "ok"

    def test_metrics_match_single_evaluation(self):
        base = _fast_base()
        row = evaluate_designs([("BAS", "BAS", "", base)])[0]
        metrics = evaluate_design(base)
        for name, value in metrics.items():
            assert row.metric(name) == value


class TestSensitivity:
    def test_exact_linear_data(self):
        entries = sensitivity(_stub_rows({"AMP": (3.0, 5.0, 7.0)}))
        assert all(e.slope == pytest.approx(2.0, abs=1e-12) for e in entries)

    def test_constant_metric_zero_slope(self):
        entries = sensitivity(_stub_rows({"THV": (4.2, 4.2, 4.2)}))
        assert all(e.slope == pytest.approx(0.0, abs=1e-12) for e in entries)

    def test_least_squares_over_three_points(self):
        # normal-equation oracle: slope = sum(x*y) / sum(x^2) over x = {-1,0,1}
        values = (0.0, 1.0, 4.0)
        expected = (values[2] * 1 + values[0] * -1) / 2.0
        entries = sensitivity(_stub_rows({"XOF": values}))
        assert all(e.slope == pytest.approx(expected) for e in entries)
        assert expected == 2.0

    def test_missing_level_rejected(self):
        rows = _stub_rows({"AMP": (1.0, 2.0, 3.0)})
        rows = [r for r in rows if r.design_id != "AMP-high"]
        with pytest.raises(ValueError, match="low or high"):
            sensitivity(rows)

    def test_rescaling_scales_slopes_and_keeps_ranking(self):
        rows = _stub_rows({"AMP": (3.0, 5.0, 7.0), "THV": (0.0, 1.0, 4.0), "XOF": (5.0, 5.0, 5.5)})
        before = {e.factor: e.slope for e in sensitivity(rows) if e.metric == "mesh_volume_mm3"}
        for r in rows:
            r.mesh_volume_mm3 *= 10.0
        after = {e.factor: e.slope for e in sensitivity(rows) if e.metric == "mesh_volume_mm3"}
        for factor in before:
            assert after[factor] == pytest.approx(10.0 * before[factor])
        rank = lambda d: sorted(d, key=lambda k: abs(d[k]), reverse=True)
        assert rank(before) == rank(after)


class TestAnalyzeContact:
    def test_ideal_spring(self):
        x = np.linspace(0.0, 5.0, 11)
        out = analyze_contact(x, 2.0 * x)
        assert out["avg_stiffness_n_per_mm"] == pytest.approx(2.0, abs=1e-12)
        assert out["work_n_mm"] == pytest.approx(25.0, abs=1e-9)

    def test_constant_force(self):
        x = np.linspace(0.0, 10.0, 21)
        out = analyze_contact(x, np.ones_like(x))
        assert out["avg_stiffness_n_per_mm"] == pytest.approx(0.0, abs=1e-12)
        assert out["work_n_mm"] == pytest.approx(10.0)

    def test_noisy_slope_recovered(self):
        rng = np.random.default_rng(3)
        x = np.linspace(0.0, 8.0, 200)
        noise = rng.normal(0.0, 0.05, size=x.shape)
        out = analyze_contact(x, 3.0 * x + noise)
        assert out["avg_stiffness_n_per_mm"] == pytest.approx(3.0, abs=0.02)

    def test_input_validation(self):
        with pytest.raises(ValueError, match="2 samples"):
            analyze_contact([0.0], [1.0])
        with pytest.raises(ValueError, match="nondecreasing"):
            analyze_contact([0.0, 2.0, 1.0], [1.0, 2.0, 3.0])


class TestSweepFiles:
    def test_csv_byte_identical_across_runs(self):
        base = _fast_base()
        designs = generate_doe(base, ["AMP", "THV"])
        csv1 = rows_to_csv(evaluate_designs(designs))
        csv2 = rows_to_csv(evaluate_designs(designs))
        assert csv1 == csv2

    def test_run_sweep_writes_both_files(self, tmp_path):
        spec = {"baseline": design_to_dict(_fast_base()), "factors": ["AMP"]}
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(spec))
        base, codes = load_sweep_spec(spec_path)
        results, sens = run_sweep(base, codes, tmp_path / "out")
        lines = results.read_text().strip().split("\n")
        assert len(lines) == 1 + 3  # header + BAS + AMP-low + AMP-high
        assert lines[0].startswith("design_id,factor,level,")
        sens_lines = sens.read_text().strip().split("\n")
        assert sens_lines[0] == "factor,metric,slope"
        assert len(sens_lines) == 1 + 5  # one factor x five metrics

    def test_spec_without_baseline_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"factors": ["AMP"]}))
        with pytest.raises(ValueError, match="baseline"):
            load_sweep_spec(path)
