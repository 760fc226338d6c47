"""Named design presets: the baseline and its one-factor-at-a-time variants.

The baseline fixes a documented reference geometry; each variant preset
changes exactly one design factor to its low or high sweep level.  Factor
codes: AMP amplitude, PRD period scaling, XOF center-point offset, XMF
peak/valley-point offset, CWT curve weight, THF thickness factors, THV
thickness value.

Notes on two quirks of the factor table:

* CWT-low coincides with the baseline weight of 1, so that preset equals
  BAS; the sweep still carries it as a distinct design id.
* Thickness factors are inert in constant mode, so the THF presets also
  switch the mode to "variable".  A variable profile with factors [1, 1, 1]
  is geometrically identical to constant mode, which keeps the THF axis
  continuous through the baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .params import (
    DesignParams,
    GenerationResolution,
    MidlineParams,
    Section,
    ThicknessMode,
    ThicknessSpec,
)

__all__ = ["baseline", "preset", "preset_names", "FACTORS", "Factor"]


def baseline() -> DesignParams:
    """Reference design: axisymmetric, three half-period folds, 20 mm excursion."""
    midline = MidlineParams(
        amplitude=20.0,
        radius=30.0,
        num_curves=3,
        center_offset=0.0,
        peak_valley_offset=0.0,
        curve_weight=1.0,
        period_scaling=(1.0, 1.0, 1.0),
        amplitude_scaling=(1.0, 1.0, 1.0),
    )
    thickness = ThicknessSpec(
        max_thickness=1.0,
        thickness_factors=(1.0, 1.0, 1.0),
        mode=ThicknessMode.CONSTANT,
    )
    return DesignParams(
        sections=(Section(theta_deg=0.0, midline=midline, thickness=thickness),),
        resolution=GenerationResolution(),
    )


@dataclass(frozen=True)
class Factor:
    """One sweep factor: a code, the low/high levels, and how to apply them."""

    code: str
    description: str
    low: object
    high: object
    apply: Callable[[Section, object], Section]
    # dataclass field names this factor may touch, for delta auditing
    touched_fields: tuple[str, ...]


def _set_midline(section: Section, **kw) -> Section:
    return replace(section, midline=replace(section.midline, **kw))


def _set_thickness(section: Section, **kw) -> Section:
    return replace(section, thickness=replace(section.thickness, **kw))


FACTORS: tuple[Factor, ...] = (
    Factor(
        "AMP", "fold amplitude (mm)", 10.0, 30.0,
        lambda s, v: _set_midline(s, amplitude=v),
        ("midline.amplitude",),
    ),
    Factor(
        "PRD", "period scaling", (1.5, 1.0, 0.5), (0.5, 1.0, 1.5),
        lambda s, v: _set_midline(s, period_scaling=tuple(v)),
        ("midline.period_scaling",),
    ),
    Factor(
        "XOF", "center control point offset", -0.75, 0.75,
        lambda s, v: _set_midline(s, center_offset=v),
        ("midline.center_offset",),
    ),
    Factor(
        "XMF", "peak/valley control point offset", -0.5, 0.5,
        lambda s, v: _set_midline(s, peak_valley_offset=v),
        ("midline.peak_valley_offset",),
    ),
    Factor(
        "CWT", "curve weight", 1.0, 10.0,
        lambda s, v: _set_midline(s, curve_weight=v),
        ("midline.curve_weight",),
    ),
    Factor(
        "THF", "thickness factors (variable mode)", (1.0, 0.5, 1.0), (0.5, 1.0, 0.5),
        lambda s, v: _set_thickness(s, thickness_factors=tuple(v), mode=ThicknessMode.VARIABLE),
        ("thickness.thickness_factors", "thickness.mode"),
    ),
    Factor(
        "THV", "wall thickness (mm)", 0.5, 1.5,
        lambda s, v: _set_thickness(s, max_thickness=v),
        ("thickness.max_thickness",),
    ),
)

_FACTOR_BY_CODE = {f.code: f for f in FACTORS}


def apply_factor(design: DesignParams, code: str, level: str) -> DesignParams:
    """Return ``design`` with one factor set to its named level ("low"/"high")."""
    factor = _FACTOR_BY_CODE.get(code)
    if factor is None:
        raise KeyError(f"unknown factor code {code!r}; expected one of {sorted(_FACTOR_BY_CODE)}")
    if level not in ("low", "high"):
        raise KeyError(f"unknown level {level!r}; expected 'low' or 'high'")
    value = factor.low if level == "low" else factor.high
    return replace(design, sections=tuple(factor.apply(s, value) for s in design.sections))


def preset_names() -> list[str]:
    names = ["BAS"]
    for f in FACTORS:
        names.append(f"{f.code}-low")
        names.append(f"{f.code}-high")
    return names


def preset(name: str) -> DesignParams:
    """Look up a named preset: "BAS" or "<CODE>-low"/"<CODE>-high"."""
    if name == "BAS":
        return baseline()
    code, sep, level = name.partition("-")
    if not sep or code not in _FACTOR_BY_CODE or level not in ("low", "high"):
        raise KeyError(f"unknown preset {name!r}; expected one of {preset_names()}")
    return apply_factor(baseline(), code, level)
