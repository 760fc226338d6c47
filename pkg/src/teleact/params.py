"""Design parameter schema: types, validation, and JSON (de)serialization.

Every downstream stage (midline construction, cross-section offsetting,
lofting, bend prediction, sweeps) consumes a validated ``DesignParams``.
All lengths are millimetres; every other parameter is dimensionless and
normalized against ``amplitude``/``radius`` so designs scale consistently.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema

__all__ = [
    "MidlineParams",
    "ThicknessMode",
    "ThicknessSpec",
    "Section",
    "GenerationResolution",
    "DesignParams",
    "ValidationError",
    "collect_errors",
    "validate",
    "design_to_dict",
    "design_from_dict",
    "load_design",
    "save_design",
    "canonical_json",
]


class ValidationError(ValueError):
    """Raised with the complete list of violated constraints, not just the first."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class MidlineParams:
    """Reduced parameter set for one 1D profile curve (all offsets/scalings normalized)."""

    amplitude: float  # mm, vertical excursion of each curve segment
    radius: float  # mm, total horizontal span of the midline
    num_curves: int  # number of half-period spline segments
    center_offset: float = 0.0  # [-1, 1], horizontal shift of the central control point
    peak_valley_offset: float = 0.0  # [-1, 1], bulge of the extremum-adjacent control points
    curve_weight: float = 1.0  # > 0, rational weight on the extremum-adjacent control points
    period_scaling: tuple[float, ...] = ()  # per-segment share of the horizontal span
    amplitude_scaling: tuple[float, ...] = ()  # per-segment vertical excursion scale

    def __post_init__(self):
        object.__setattr__(self, "period_scaling", _as_tuple_or_default(self.period_scaling, self.num_curves))
        object.__setattr__(self, "amplitude_scaling", _as_tuple_or_default(self.amplitude_scaling, self.num_curves))


def _as_tuple_or_default(values, n):
    values = tuple(float(v) for v in values)
    if not values and isinstance(n, int) and n > 0:
        return (1.0,) * n
    return values


class ThicknessMode(enum.Enum):
    CONSTANT = "constant"
    VARIABLE = "variable"
    COLLAPSED = "collapsed"
    SBEND = "sbend"


@dataclass(frozen=True)
class ThicknessSpec:
    """Wall thickness specification applied along the midline.

    ``thickness_factors`` are the (start, mid, end) scale factors tied to the
    anchor control points of each segment; how they are interpolated between
    anchors depends on ``mode``.  ``sbend_factors`` is the second factor triple
    consumed only by the S-bend mode.
    """

    max_thickness: float  # mm, global wall thickness scale
    thickness_factors: tuple[float, float, float] = (1.0, 1.0, 1.0)
    mode: ThicknessMode = ThicknessMode.CONSTANT
    sbend_factors: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "thickness_factors", tuple(float(v) for v in self.thickness_factors))
        if self.sbend_factors is not None:
            object.__setattr__(self, "sbend_factors", tuple(float(v) for v in self.sbend_factors))
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", ThicknessMode(self.mode))


@dataclass(frozen=True)
class Section:
    """Cross-section definition on the angular plane at ``theta_deg``."""

    theta_deg: float
    midline: MidlineParams
    thickness: ThicknessSpec


@dataclass(frozen=True)
class GenerationResolution:
    """Discretization knobs for the generation pipeline (not part of the design itself)."""

    samples_per_segment: int = 64
    contour_points: int = 256  # uniform arc-length resample count K
    angular_step_deg: float = 5.0  # must divide 360
    cell_mm: float | None = None  # distance-field grid cell; None = min wall radius / 4


@dataclass(frozen=True)
class DesignParams:
    sections: tuple[Section, ...]
    resolution: GenerationResolution = field(default_factory=GenerationResolution)

    def __post_init__(self):
        object.__setattr__(self, "sections", tuple(self.sections))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _check_midline(m: MidlineParams, where: str, errors: list[str]):
    if not m.amplitude > 0:
        errors.append(f"{where}.amplitude must be > 0 (got {m.amplitude!r})")
    if not m.radius > 0:
        errors.append(f"{where}.radius must be > 0 (got {m.radius!r})")
    if not (isinstance(m.num_curves, int) and m.num_curves >= 1):
        errors.append(f"{where}.num_curves must be a positive integer (got {m.num_curves!r})")
    if not -1.0 <= m.center_offset <= 1.0:
        errors.append(f"{where}.center_offset must be in [-1, 1] (got {m.center_offset!r})")
    if not -1.0 <= m.peak_valley_offset <= 1.0:
        errors.append(f"{where}.peak_valley_offset must be in [-1, 1] (got {m.peak_valley_offset!r})")
    if not m.curve_weight > 0:
        errors.append(f"{where}.curve_weight must be > 0 (got {m.curve_weight!r})")
    for name, scaling in (("period_scaling", m.period_scaling), ("amplitude_scaling", m.amplitude_scaling)):
        if isinstance(m.num_curves, int) and m.num_curves >= 1 and len(scaling) != m.num_curves:
            errors.append(
                f"{where}.{name} must have num_curves entries "
                f"(got length {len(scaling)}, expected {m.num_curves})"
            )
        if any(not s > 0 for s in scaling):
            errors.append(f"{where}.{name} entries must all be > 0 (got {scaling!r})")


def _check_thickness(t: ThicknessSpec, where: str, errors: list[str]):
    if not t.max_thickness > 0:
        errors.append(f"{where}.max_thickness must be > 0 (got {t.max_thickness!r})")
    if len(t.thickness_factors) != 3:
        errors.append(f"{where}.thickness_factors must have 3 entries (got {len(t.thickness_factors)})")
    elif any(not 0 < f <= 1 for f in t.thickness_factors):
        errors.append(f"{where}.thickness_factors must lie in (0, 1] (got {t.thickness_factors!r})")
    if t.mode is ThicknessMode.SBEND:
        if t.sbend_factors is None:
            errors.append(f"{where}.sbend_factors required for sbend mode")
        elif len(t.sbend_factors) != 3 or any(not 0 < f <= 1 for f in t.sbend_factors):
            errors.append(f"{where}.sbend_factors must be 3 factors in (0, 1] (got {t.sbend_factors!r})")
    elif t.sbend_factors is not None:
        errors.append(f"{where}.sbend_factors only allowed in sbend mode (got mode {t.mode.value!r})")


def collect_errors(design: DesignParams) -> list[str]:
    """Return every violated invariant of ``design`` (empty list when valid)."""
    errors: list[str] = []
    if not design.sections:
        errors.append("sections must be nonempty")
        return errors

    prev_theta = None
    for i, sec in enumerate(design.sections):
        where = f"sections[{i}]"
        if not 0.0 <= sec.theta_deg < 360.0:
            errors.append(f"{where}.theta_deg must be in [0, 360) (got {sec.theta_deg!r})")
        if prev_theta is not None and not sec.theta_deg > prev_theta:
            errors.append(
                f"{where}.theta_deg must be strictly increasing "
                f"(got {sec.theta_deg!r} after {prev_theta!r})"
            )
        prev_theta = sec.theta_deg
        _check_midline(sec.midline, where + ".midline", errors)
        _check_thickness(sec.thickness, where + ".thickness", errors)

    first = design.sections[0]
    for i, sec in enumerate(design.sections[1:], start=1):
        if sec.midline.num_curves != first.midline.num_curves:
            errors.append(
                f"sections[{i}].midline.num_curves must match sections[0] "
                f"(got {sec.midline.num_curves} vs {first.midline.num_curves}); "
                "parameter interpolation requires a common segment count"
            )
        if sec.thickness.mode is not first.thickness.mode:
            errors.append(
                f"sections[{i}].thickness.mode must match sections[0] "
                f"(got {sec.thickness.mode.value} vs {first.thickness.mode.value}); "
                "modes are categorical and cannot be interpolated"
            )

    r = design.resolution
    if not (isinstance(r.samples_per_segment, int) and r.samples_per_segment >= 8):
        errors.append(f"resolution.samples_per_segment must be an integer >= 8 (got {r.samples_per_segment!r})")
    if not (isinstance(r.contour_points, int) and r.contour_points >= 16):
        errors.append(f"resolution.contour_points must be an integer >= 16 (got {r.contour_points!r})")
    if not r.angular_step_deg > 0:
        errors.append(f"resolution.angular_step_deg must be > 0 (got {r.angular_step_deg!r})")
    else:
        n = 360.0 / r.angular_step_deg
        if abs(n - round(n)) > 1e-9:
            errors.append(f"resolution.angular_step_deg must divide 360 (got {r.angular_step_deg!r})")
    if r.cell_mm is not None and not r.cell_mm > 0:
        errors.append(f"resolution.cell_mm must be > 0 when given (got {r.cell_mm!r})")
    return errors


def validate(design: DesignParams) -> DesignParams:
    """Return ``design`` unchanged, or raise :class:`ValidationError` listing all violations."""
    errors = collect_errors(design)
    if errors:
        raise ValidationError(errors)
    return design


# ---------------------------------------------------------------------------
# JSON document form
# ---------------------------------------------------------------------------

def _midline_to_dict(m: MidlineParams) -> dict[str, Any]:
    return {
        "amplitude": m.amplitude,
        "radius": m.radius,
        "num_curves": m.num_curves,
        "center_offset": m.center_offset,
        "peak_valley_offset": m.peak_valley_offset,
        "curve_weight": m.curve_weight,
        "period_scaling": list(m.period_scaling),
        "amplitude_scaling": list(m.amplitude_scaling),
    }


def _thickness_to_dict(t: ThicknessSpec) -> dict[str, Any]:
    return {
        "max_thickness": t.max_thickness,
        "thickness_factors": list(t.thickness_factors),
        "mode": t.mode.value,
        "sbend_factors": None if t.sbend_factors is None else list(t.sbend_factors),
    }


def design_to_dict(design: DesignParams) -> dict[str, Any]:
    return {
        "sections": [
            {
                "theta_deg": s.theta_deg,
                "midline": _midline_to_dict(s.midline),
                "thickness": _thickness_to_dict(s.thickness),
            }
            for s in design.sections
        ],
        "resolution": {
            "samples_per_segment": design.resolution.samples_per_segment,
            "contour_points": design.resolution.contour_points,
            "angular_step_deg": design.resolution.angular_step_deg,
            "cell_mm": design.resolution.cell_mm,
        },
    }


def _schema() -> dict:
    text = resources.files("teleact.schemas").joinpath("design_config.schema.json").read_text()
    return json.loads(text)


def design_from_dict(doc: dict[str, Any], *, check_schema: bool = True) -> DesignParams:
    """Build a :class:`DesignParams` from its JSON document form.

    Structural problems (wrong types, missing keys) raise ``ValidationError``
    immediately; semantic constraints are checked separately via ``validate``.
    """
    if check_schema:
        validator = jsonschema.Draft202012Validator(_schema())
        schema_errors = [
            f"{'/'.join(str(p) for p in e.absolute_path) or '<root>'}: {e.message}"
            for e in validator.iter_errors(doc)
        ]
        if schema_errors:
            raise ValidationError(sorted(schema_errors))

    sections = []
    for sd in doc["sections"]:
        md = sd["midline"]
        td = sd["thickness"]
        sections.append(
            Section(
                theta_deg=float(sd["theta_deg"]),
                midline=MidlineParams(
                    amplitude=float(md["amplitude"]),
                    radius=float(md["radius"]),
                    num_curves=int(md["num_curves"]),
                    center_offset=float(md.get("center_offset", 0.0)),
                    peak_valley_offset=float(md.get("peak_valley_offset", 0.0)),
                    curve_weight=float(md.get("curve_weight", 1.0)),
                    period_scaling=md.get("period_scaling", ()),
                    amplitude_scaling=md.get("amplitude_scaling", ()),
                ),
                thickness=ThicknessSpec(
                    max_thickness=float(td["max_thickness"]),
                    thickness_factors=td.get("thickness_factors", (1.0, 1.0, 1.0)),
                    mode=ThicknessMode(td.get("mode", "constant")),
                    sbend_factors=td.get("sbend_factors"),
                ),
            )
        )
    rd = doc.get("resolution") or {}
    resolution = GenerationResolution(
        samples_per_segment=int(rd.get("samples_per_segment", 64)),
        contour_points=int(rd.get("contour_points", 256)),
        angular_step_deg=float(rd.get("angular_step_deg", 5.0)),
        cell_mm=None if rd.get("cell_mm") is None else float(rd["cell_mm"]),
    )
    return DesignParams(sections=tuple(sections), resolution=resolution)


def load_design(path: str | Path) -> DesignParams:
    """Load and validate a design config file (UTF-8 JSON)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return validate(design_from_dict(doc))


def save_design(design: DesignParams, path: str | Path):
    Path(path).write_text(canonical_json(design) + "\n", encoding="utf-8")


def canonical_json(design: DesignParams) -> str:
    """Deterministic serialized form, used for file output and provenance digests."""
    return json.dumps(design_to_dict(design), sort_keys=True, indent=2)


def with_resolution(design: DesignParams, **overrides) -> DesignParams:
    """Copy ``design`` with some resolution fields replaced."""
    return replace(design, resolution=replace(design.resolution, **overrides))


def section_params_at(design: DesignParams, index: int = 0) -> tuple[MidlineParams, ThicknessSpec]:
    sec = design.sections[index]
    return sec.midline, sec.thickness


def _require_finite(value: float, name: str):
    if not math.isfinite(value):
        raise ValidationError([f"{name} must be finite (got {value!r})"])
