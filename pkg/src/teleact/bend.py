"""Inextensible tilted-cone bending model and expansion-ratio metrics.

The deployed actuator is approximated by a tilted cone whose diametrically
opposed slant lengths equal the wall arc lengths s0 <= s1:

    s1^2 = h^2 + (x + r)^2
    s0^2 = h^2 + (x - r)^2

with base radius r, axial projection h, and transverse tip reach x.
Subtracting gives x = (s1^2 - s0^2) / (4 r) in closed form; h follows by
back-substitution.  The model is a good predictor in the pre-plateau regime
only; material strain at high inflation is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .midline import build_midline
from .params import DesignParams, validate
from .solid import interpolate_sections

__all__ = [
    "BendInputs",
    "BendPrediction",
    "InfeasibleConeError",
    "solve_tilted_cone",
    "predict_from_design",
    "expansion_ratio",
]


class InfeasibleConeError(ValueError):
    """The arc-length pair admits no tilted cone with the given base radius."""


@dataclass(frozen=True)
class BendInputs:
    s0: float  # mm, shorter side arc length
    s1: float  # mm, opposed side arc length, s1 >= s0
    r: float  # mm, base radius
    h0: float | None = None  # mm, rest height, enables the axial ratio


@dataclass(frozen=True)
class BendPrediction:
    x: float  # mm, transverse reach of the tip from the base centre
    h: float  # mm, axial projection
    theta_deg: float  # bend angle
    axial_ratio: float | None = None  # h / h0 when a rest height was given

    def to_dict(self) -> dict:
        return {
            "x_mm": self.x,
            "h_mm": self.h,
            "theta_deg": self.theta_deg,
            "axial_ratio": self.axial_ratio,
        }


def solve_tilted_cone(inputs: BendInputs) -> BendPrediction:
    """Closed-form solution of the cone relations; exact back-substitution by construction."""
    s0, s1, r = inputs.s0, inputs.s1, inputs.r
    if not s0 > 0:
        raise ValueError(f"s0 must be > 0 (got {s0})")
    if not s1 >= s0:
        raise ValueError(f"s1 must be >= s0 (got s1={s1}, s0={s0})")
    if not r > 0:
        raise ValueError(f"r must be > 0 (got {r})")

    x = (s1 * s1 - s0 * s0) / (4.0 * r)
    disc = s0 * s0 - (x - r) * (x - r)
    if disc < 0:
        raise InfeasibleConeError(
            f"no tilted cone exists: s0^2 = {s0 * s0:.6g} < (x - r)^2 = {(x - r) ** 2:.6g} "
            f"(s0={s0}, s1={s1}, r={r}, x={x:.6g})"
        )
    h = math.sqrt(disc)
    theta = math.degrees(math.atan2(x, h))
    axial = None if inputs.h0 is None else h / inputs.h0
    return BendPrediction(x=x, h=h, theta_deg=theta, axial_ratio=axial)


def predict_from_design(design: DesignParams, theta_deg: float = 0.0) -> BendPrediction:
    """Bend prediction from the midline arc lengths of two opposed angular planes."""
    validate(design)
    spp = design.resolution.samples_per_segment

    m_a, _ = interpolate_sections(design.sections, theta_deg)
    m_b, _ = interpolate_sections(design.sections, theta_deg + 180.0)
    mid_a = build_midline(m_a, spp)
    mid_b = build_midline(m_b, spp)

    arcs = sorted([mid_a.total_length, mid_b.total_length])
    r = 0.5 * (m_a.radius + m_b.radius)
    h0 = max(mid_a.z_extent, mid_b.z_extent)
    return solve_tilted_cone(BendInputs(s0=arcs[0], s1=arcs[1], r=r, h0=h0))


def expansion_ratio(l0: float, l1: float) -> float:
    """Signed relative length change (l1 - l0) / l0."""
    if not l0 > 0:
        raise ValueError(f"l0 must be > 0 (got {l0})")
    return (l1 - l0) / l0
