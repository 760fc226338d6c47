"""Midline construction: rational B-spline segments joined into a fold profile.

The midline lives in the (rho, z) half-plane, rho measured outward from the
revolve axis and z along the actuation axis.  Each spline segment has five
control points and covers half a fold period; segments run from the outer
radius inward, alternating peak to valley.  A bore clearance of
``BORE_FRACTION * radius`` keeps the profile off the revolve axis so the
lofted shell stays a closed tube.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import MidlineParams, ValidationError, _check_midline

__all__ = [
    "DEGREE",
    "KNOTS",
    "BORE_FRACTION",
    "NurbsSegment",
    "Midline",
    "eval_nurbs",
    "eval_nurbs_many",
    "build_midline",
    "arc_length",
]

DEGREE = 3
# Clamped cubic over five control points; the single interior knot splits the
# segment into two spans.
KNOTS = (0.0, 0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0)
# Inner clearance between revolve axis and innermost fold, as a fraction of
# the radial span.  Proportional to radius so uniform scaling of a design
# scales the midline exactly.
BORE_FRACTION = 0.1

# Control point roles within a segment, in curve order:
#   CP1 extremum endpoint / CP2 extremum-adjacent / CP3 central
#   CP4 extremum-adjacent / CP5 opposite extremum endpoint
CP1, CP2, CP3, CP4, CP5 = range(5)


@dataclass(frozen=True)
class NurbsSegment:
    control_points: np.ndarray  # (5, 2): (rho, z) in mm
    weights: np.ndarray  # (5,), strictly positive
    degree: int = DEGREE
    knots: np.ndarray = field(default_factory=lambda: np.array(KNOTS))

    def __post_init__(self):
        object.__setattr__(self, "control_points", np.asarray(self.control_points, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "knots", np.asarray(self.knots, dtype=float))
        self._check()

    def _check(self):
        p, U = self.degree, self.knots
        n_ctrl = len(self.control_points)
        if n_ctrl != 5:
            raise ValueError(f"segment needs exactly 5 control points (got {n_ctrl})")
        if self.control_points.shape != (5, 2):
            raise ValueError(f"control points must be planar (got shape {self.control_points.shape})")
        if self.weights.shape != (5,) or np.any(self.weights <= 0):
            raise ValueError("weights must be 5 strictly positive reals")
        if len(U) != n_ctrl + p + 1:
            raise ValueError(f"knot vector needs {n_ctrl + p + 1} entries (got {len(U)})")
        if np.any(U[: p + 1] != 0.0) or np.any(U[-(p + 1):] != 1.0):
            raise ValueError("knot vector must be clamped to [0, 1]")
        if np.any(np.diff(U) < 0):
            raise ValueError("knots must be nondecreasing")


def _find_spans(us: np.ndarray, knots: np.ndarray, degree: int, n: int) -> np.ndarray:
    spans = np.searchsorted(knots, us, side="right") - 1
    return np.clip(spans, degree, n)


def eval_nurbs_many(segment: NurbsSegment, us) -> np.ndarray:
    """Evaluate the rational curve at an array of parameters in [0, 1].

    Runs the triangular corner-cutting recurrence on homogeneous coordinates,
    vectorized across all parameters.
    """
    us = np.atleast_1d(np.asarray(us, dtype=float))
    if np.any((us < 0.0) | (us > 1.0)):
        bad = us[(us < 0.0) | (us > 1.0)][0]
        raise ValueError(f"curve parameter must lie in [0, 1] (got {bad})")

    p = segment.degree
    U = segment.knots
    n = len(segment.control_points) - 1
    hw = np.concatenate(
        [segment.control_points * segment.weights[:, None], segment.weights[:, None]], axis=1
    )  # (5, 3) homogeneous

    k = _find_spans(us, U, p, n)  # (m,)
    d = hw[k[:, None] - p + np.arange(p + 1)].copy()  # (m, p+1, 3)
    for r in range(1, p + 1):
        for j in range(p, r - 1, -1):
            i = k - p + j
            denom = U[i + p - r + 1] - U[i]
            safe = denom > 0
            alpha = np.where(safe, (us - U[i]) / np.where(safe, denom, 1.0), 0.0)
            d[:, j, :] = (1.0 - alpha)[:, None] * d[:, j - 1, :] + alpha[:, None] * d[:, j, :]
    res = d[:, p, :]
    return res[:, :2] / res[:, 2:3]


def eval_nurbs(segment: NurbsSegment, u: float) -> np.ndarray:
    """Evaluate the rational curve at a single parameter u in [0, 1]."""
    return eval_nurbs_many(segment, [float(u)])[0]


@dataclass
class Midline:
    """Sampled profile curve with per-sample cumulative arc length."""

    samples: np.ndarray  # (n, 2): (rho, z) in mm
    arc_coords: np.ndarray  # (n,): cumulative arc length, starts at 0
    segment_index: np.ndarray  # (n,): owning segment per sample
    segments: tuple[NurbsSegment, ...] = ()

    @property
    def total_length(self) -> float:
        return float(self.arc_coords[-1])

    @property
    def z_extent(self) -> float:
        """Peak-to-valley envelope of the folded profile."""
        return float(self.samples[:, 1].max() - self.samples[:, 1].min())


def _segment_control_points(params: MidlineParams) -> list[NurbsSegment]:
    n = params.num_curves
    ps = np.asarray(params.period_scaling, dtype=float)
    spans = params.radius * ps / ps.sum()

    bore = BORE_FRACTION * params.radius
    rho_nodes = np.empty(n + 1)
    rho_nodes[0] = bore + params.radius
    rho_nodes[1:] = rho_nodes[0] - np.cumsum(spans)

    # Vertical walk: segment i moves the profile down (even i) or up (odd i)
    # by amplitude * amplitude_scaling[i]; afterwards the whole profile is
    # shifted so the lowest valley sits at z = 0.
    z_nodes = np.empty(n + 1)
    z_nodes[0] = 0.0
    for i in range(n):
        step = params.amplitude * params.amplitude_scaling[i]
        z_nodes[i + 1] = z_nodes[i] - step if i % 2 == 0 else z_nodes[i] + step
    z_nodes -= z_nodes.min()

    cw = params.curve_weight
    pv = params.peak_valley_offset
    co = params.center_offset

    segments = []
    for i in range(n):
        rho_s, rho_e = rho_nodes[i], rho_nodes[i + 1]
        z_s, z_e = z_nodes[i], z_nodes[i + 1]
        delta = rho_e - rho_s  # signed span, negative when walking inward
        # Positive peak_valley_offset pushes the extremum-adjacent points
        # outward past their endpoints (bulged, overhanging fold lips, longer
        # arc); negative pulls them toward the segment middle (shorter arc).
        cps = np.array(
            [
                [rho_s, z_s],
                [rho_s + delta * 0.25 - delta * pv * 0.5, z_s],
                [rho_s + delta * 0.50 + delta * co * 0.5, 0.5 * (z_s + z_e)],
                [rho_s + delta * 0.75 + delta * pv * 0.5, z_e],
                [rho_e, z_e],
            ]
        )
        weights = np.array([1.0, cw, 1.0, cw, 1.0])
        segments.append(NurbsSegment(control_points=cps, weights=weights))
    return segments


def build_midline(params: MidlineParams, samples_per_segment: int = 64) -> Midline:
    """Sample the full profile: ``num_curves`` segments, C0-joined, outer to inner."""
    errors: list[str] = []
    _check_midline(params, "midline", errors)
    if errors:
        raise ValidationError(errors)
    if samples_per_segment < 8:
        raise ValueError(f"samples_per_segment must be >= 8 (got {samples_per_segment})")

    segments = _segment_control_points(params)
    us = np.linspace(0.0, 1.0, samples_per_segment)
    pts_parts = []
    idx_parts = []
    for i, seg in enumerate(segments):
        pts = eval_nurbs_many(seg, us)
        if i > 0:
            pts = pts[1:]  # shared node already emitted by the previous segment
        pts_parts.append(pts)
        idx_parts.append(np.full(len(pts), i, dtype=int))

    samples = np.vstack(pts_parts)
    seg_idx = np.concatenate(idx_parts)
    steps = np.linalg.norm(np.diff(samples, axis=0), axis=1)
    if np.any(steps == 0.0):
        raise ValidationError(["midline produced coincident consecutive samples; parameters degenerate"])
    arc = np.concatenate([[0.0], np.cumsum(steps)])
    return Midline(samples=samples, arc_coords=arc, segment_index=seg_idx, segments=tuple(segments))


def arc_length(m: Midline, s_from: float, s_to: float) -> float:
    """Arc length between two arc coordinates of the sampled profile (mm)."""
    total = m.total_length
    if not 0.0 <= s_from <= s_to <= total + 1e-12:
        raise ValueError(
            f"need 0 <= s_from <= s_to <= total length {total:.6f} (got {s_from}, {s_to})"
        )
    return float(min(s_to, total) - s_from)


def straight_midline(length: float, n_samples: int = 201, z: float = 0.0) -> Midline:
    """Synthetic straight profile along rho, for tests and calibration shapes."""
    if length <= 0 or n_samples < 1:
        raise ValueError("length must be > 0 and n_samples >= 1")
    xs = np.linspace(0.0, length, n_samples)
    samples = np.column_stack([xs, np.full(n_samples, float(z))])
    arc = xs - xs[0]
    return Midline(
        samples=samples,
        arc_coords=arc,
        segment_index=np.zeros(n_samples, dtype=int),
        segments=(),
    )


def discrete_curvature(samples: np.ndarray) -> np.ndarray:
    """Curvature estimate per interior sample via circumscribed-circle radius."""
    a = samples[:-2]
    b = samples[1:-1]
    c = samples[2:]
    ab = b - a
    bc = c - b
    ac = c - a
    cross = ab[:, 0] * bc[:, 1] - ab[:, 1] * bc[:, 0]
    la = np.linalg.norm(ab, axis=1)
    lb = np.linalg.norm(bc, axis=1)
    lc = np.linalg.norm(ac, axis=1)
    denom = la * lb * lc
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.where(denom > 0, 2.0 * np.abs(cross) / denom, 0.0)
    return kappa


def midline_to_csv(m: Midline) -> str:
    """Debug dump: rows of (arc coordinate, rho, z)."""
    lines = ["s_mm,rho_mm,z_mm"]
    for s, (rho, z) in zip(m.arc_coords, m.samples):
        lines.append(f"{s:.9g},{rho:.9g},{z:.9g}")
    return "\n".join(lines) + "\n"
