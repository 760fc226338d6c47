"""One-factor-at-a-time design sweep: generation, geometric metrics, sensitivities.

The sweep builds the baseline plus a low/high variant per factor, runs the
full geometry pipeline on each, and fits per-factor linear sensitivities
over the normalized levels {-1, 0, +1}.  Expansion ratios are geometric
proxies computed from the rest geometry and the inextensible bend model;
they deliberately carry no inflation physics and are labelled as such.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bend import BendInputs, expansion_ratio, solve_tilted_cone
from .cross_section import thickness_profile, union_of_circles
from .midline import build_midline
from .params import DesignParams, design_from_dict, design_to_dict, validate
from .presets import FACTORS, apply_factor, baseline
from .solid import interpolate_sections, loft, mesh_diagnostics

__all__ = [
    "SweepRow",
    "SensitivityEntry",
    "generate_doe",
    "evaluate_design",
    "evaluate_designs",
    "sensitivity",
    "analyze_contact",
    "rows_to_csv",
    "sensitivity_to_csv",
    "run_sweep",
    "load_sweep_spec",
]

METRIC_NAMES = (
    "axial_expansion_ratio",
    "radial_expansion_ratio",
    "mesh_volume_mm3",
    "arc_length_ratio",
    "bend_theta_deg",
)


@dataclass
class SweepRow:
    design_id: str
    factor: str  # factor code, "BAS" for the baseline row
    level: str  # "low" / "high" / "" for the baseline
    axial_expansion_ratio: float | None
    radial_expansion_ratio: float | None
    mesh_volume_mm3: float | None
    arc_length_ratio: float | None
    bend_theta_deg: float | None
    status: str = "ok"

    def metric(self, name: str) -> float | None:
        return getattr(self, name)


@dataclass(frozen=True)
class SensitivityEntry:
    factor: str
    metric: str
    slope: float


def generate_doe(
    base: DesignParams, factor_codes: list[str] | None = None
) -> list[tuple[str, str, str, DesignParams]]:
    """Baseline plus one design per (factor, level): (id, factor, level, design) tuples.

    Order is deterministic: BAS first, then factor-table order, low before high.
    """
    validate(base)
    if factor_codes is None:
        factor_codes = [f.code for f in FACTORS]
    known = {f.code for f in FACTORS}
    unknown = [c for c in factor_codes if c not in known]
    if unknown:
        raise KeyError(f"unknown factor codes {unknown}; expected a subset of {sorted(known)}")

    out: list[tuple[str, str, str, DesignParams]] = [("BAS", "BAS", "", base)]
    for factor in FACTORS:
        if factor.code not in factor_codes:
            continue
        for level in ("low", "high"):
            design = apply_factor(base, factor.code, level)
            try:
                validate(design)
            except Exception as exc:
                raise ValueError(f"factor {factor.code} {level} produces an invalid design: {exc}") from exc
            out.append((f"{factor.code}-{level}", factor.code, level, design))
    return out


def evaluate_design(design: DesignParams) -> dict[str, float]:
    """Geometric performance metrics of one design.

    axial ratio: deployed-length proxy (mean opposed wall arc length) against
    the rest fold height; radial ratio: wall envelope reach beyond the outer
    midline radius; plus shell volume, opposed arc-length ratio, and the
    tilted-cone bend angle.
    """
    validate(design)
    res = design.resolution

    m_a, t_a = interpolate_sections(design.sections, 0.0)
    m_b, t_b = interpolate_sections(design.sections, 180.0)
    mid_a = build_midline(m_a, res.samples_per_segment)
    mid_b = build_midline(m_b, res.samples_per_segment)
    s_a, s_b = mid_a.total_length, mid_b.total_length
    s0, s1 = min(s_a, s_b), max(s_a, s_b)

    h0 = max(mid_a.z_extent, mid_b.z_extent)
    r = 0.5 * (m_a.radius + m_b.radius)
    bendp = solve_tilted_cone(BendInputs(s0=s0, s1=s1, r=r, h0=h0))

    prof_a = thickness_profile(mid_a, t_a)
    contour_a = union_of_circles(mid_a, prof_a, cell=res.cell_mm)
    rho_rest = float(mid_a.samples[:, 0].max())
    rho_max = float(contour_a.vertices[:, 0].max())

    report = mesh_diagnostics(loft(design))

    return {
        "axial_expansion_ratio": expansion_ratio(h0, 0.5 * (s0 + s1)),
        "radial_expansion_ratio": expansion_ratio(rho_rest, rho_max),
        "mesh_volume_mm3": report.enclosed_volume,
        "arc_length_ratio": s1 / s0,
        "bend_theta_deg": bendp.theta_deg,
    }


def evaluate_designs(designs: list[tuple[str, str, str, DesignParams]]) -> list[SweepRow]:
    """One row per design, in input order; per-row failures are recorded, not raised."""
    rows = []
    for design_id, factor, level, design in designs:
        try:
            metrics = evaluate_design(design)
            rows.append(SweepRow(design_id, factor, level, status="ok", **metrics))
        except Exception as exc:
            rows.append(
                SweepRow(
                    design_id, factor, level,
                    axial_expansion_ratio=None, radial_expansion_ratio=None,
                    mesh_volume_mm3=None, arc_length_ratio=None, bend_theta_deg=None,
                    status=f"error: {exc}",
                )
            )
    return rows


def sensitivity(rows: list[SweepRow]) -> list[SensitivityEntry]:
    """Least-squares slope of each metric over normalized levels {-1, 0, +1} per factor."""
    by_id = {row.design_id: row for row in rows}
    base_row = by_id.get("BAS")
    if base_row is None or base_row.status != "ok":
        raise ValueError("sensitivity needs a successful baseline row 'BAS'")

    entries = []
    codes = []
    for row in rows:
        if row.factor != "BAS" and row.factor not in codes:
            codes.append(row.factor)
    levels = np.array([-1.0, 0.0, 1.0])
    for code in codes:
        low = by_id.get(f"{code}-low")
        high = by_id.get(f"{code}-high")
        if low is None or high is None:
            raise ValueError(f"factor {code} is missing a low or high row")
        if low.status != "ok" or high.status != "ok":
            raise ValueError(f"factor {code} has failed rows; cannot fit a slope")
        for metric in METRIC_NAMES:
            values = np.array([low.metric(metric), base_row.metric(metric), high.metric(metric)], dtype=float)
            # normal equation for the centred level design: slope = sum(x y) / sum(x^2);
            # exact on linear data, unlike an SVD-backed fit
            slope = float(np.dot(levels, values) / np.dot(levels, levels))
            entries.append(SensitivityEntry(factor=code, metric=metric, slope=slope))
    return entries


def analyze_contact(displacement_mm, force_n) -> dict[str, float]:
    """Average stiffness (least-squares N/mm) and work (trapezoidal N*mm) of a contact run."""
    x = np.asarray(displacement_mm, dtype=float)
    f = np.asarray(force_n, dtype=float)
    if x.shape != f.shape or x.ndim != 1:
        raise ValueError("displacement and force must be 1D arrays of equal length")
    if len(x) < 2:
        raise ValueError(f"need at least 2 samples (got {len(x)})")
    if np.any(np.diff(x) < 0):
        raise ValueError("displacement must be nondecreasing")

    stiffness = float(np.polyfit(x, f, 1)[0])
    work = float(0.5 * np.sum((f[1:] + f[:-1]) * np.diff(x)))
    return {"avg_stiffness_n_per_mm": stiffness, "work_n_mm": work}


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.9g}"


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = ["design_id,factor,level," + ",".join(METRIC_NAMES) + ",status"]
    for r in rows:
        metrics = ",".join(_fmt(r.metric(m)) for m in METRIC_NAMES)
        lines.append(f"{r.design_id},{r.factor},{r.level},{metrics},{r.status}")
    return "\n".join(lines) + "\n"


def sensitivity_to_csv(entries: list[SensitivityEntry]) -> str:
    lines = ["factor,metric,slope"]
    for e in entries:
        lines.append(f"{e.factor},{e.metric},{e.slope:.9g}")
    return "\n".join(lines) + "\n"


def load_sweep_spec(path) -> tuple[DesignParams, list[str]]:
    """Sweep spec file: {"baseline": <design doc>, "factors": [codes...]}."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if "baseline" not in doc:
        raise ValueError("sweep spec needs a 'baseline' design document")
    base = validate(design_from_dict(doc["baseline"]))
    factor_codes = doc.get("factors")
    if factor_codes is None:
        factor_codes = [f.code for f in FACTORS]
    return base, list(factor_codes)


def default_sweep_spec() -> dict:
    return {
        "baseline": design_to_dict(baseline()),
        "factors": [f.code for f in FACTORS],
    }


def run_sweep(base: DesignParams, factor_codes: list[str] | None, out_dir) -> tuple[Path, Path]:
    """Evaluate the sweep and write results.csv + sensitivity.csv into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    designs = generate_doe(base, factor_codes)
    rows = evaluate_designs(designs)
    results_path = out / "results.csv"
    sens_path = out / "sensitivity.csv"
    results_path.write_text(rows_to_csv(rows), encoding="utf-8")
    sens_path.write_text(sensitivity_to_csv(sensitivity(rows)), encoding="utf-8")
    return results_path, sens_path
