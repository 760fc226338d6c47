"""3D shell generation: angular interpolation of sections, lofting, STL export.

Cross-section parameters are interpolated componentwise (periodic in theta)
between the user-defined planes; geometry is always rebuilt from the
interpolated parameters, never blended.  Corresponding contour vertices of
adjacent frames are joined by triangle pairs, with the 360 degree seam
reusing frame 0 so the shell closes into a 2-manifold tube.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, replace

import numpy as np

from .cross_section import (
    ClosedContour,
    contour_is_simple,
    resample_contour,
    thickness_profile,
    union_of_circles,
)
from .midline import build_midline
from .params import DesignParams, MidlineParams, Section, ThicknessSpec, canonical_json, validate

__all__ = [
    "TriMesh",
    "MeshReport",
    "GeometryError",
    "MeshError",
    "interpolate_sections",
    "section_contour",
    "revolve_contours",
    "loft",
    "mesh_diagnostics",
    "export_stl",
    "write_stl",
    "mesh_digest",
]

STL_HEADER_TAG = b"teleact binary STL; units mm"


class GeometryError(RuntimeError):
    """Geometry generation failed (degenerate or self-intersecting section)."""


class MeshError(RuntimeError):
    """Mesh violates the requirements of the requested operation."""


@dataclass
class TriMesh:
    vertices: np.ndarray  # (V, 3) mm
    triangles: np.ndarray  # (T, 3) vertex indices, outward orientation
    provenance: str = ""  # digest of the generating design, empty for synthetic meshes

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)


@dataclass
class MeshReport:
    watertight: bool
    enclosed_volume: float  # mm^3, signed divergence-theorem volume
    surface_area: float  # mm^2
    bbox_min: tuple[float, float, float]
    bbox_max: tuple[float, float, float]
    n_vertices: int
    n_edges: int
    n_triangles: int
    euler_characteristic: int
    boundary_edges: int
    nonmanifold_edges: int

    def to_dict(self) -> dict:
        return {
            "watertight": self.watertight,
            "enclosed_volume_mm3": self.enclosed_volume,
            "surface_area_mm2": self.surface_area,
            "bbox_min_mm": list(self.bbox_min),
            "bbox_max_mm": list(self.bbox_max),
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "n_triangles": self.n_triangles,
            "euler_characteristic": self.euler_characteristic,
            "boundary_edges": self.boundary_edges,
            "nonmanifold_edges": self.nonmanifold_edges,
        }


# ---------------------------------------------------------------------------
# Angular parameter interpolation
# ---------------------------------------------------------------------------

def _lerp(a, b, t):
    if isinstance(a, tuple):
        return tuple((1.0 - t) * x + t * y for x, y in zip(a, b))
    return (1.0 - t) * a + t * b


def _lerp_section(sa: Section, sb: Section, t: float) -> tuple[MidlineParams, ThicknessSpec]:
    ma, mb = sa.midline, sb.midline
    ta, tb = sa.thickness, sb.thickness
    midline = replace(
        ma,
        amplitude=_lerp(ma.amplitude, mb.amplitude, t),
        radius=_lerp(ma.radius, mb.radius, t),
        center_offset=_lerp(ma.center_offset, mb.center_offset, t),
        peak_valley_offset=_lerp(ma.peak_valley_offset, mb.peak_valley_offset, t),
        curve_weight=_lerp(ma.curve_weight, mb.curve_weight, t),
        period_scaling=_lerp(ma.period_scaling, mb.period_scaling, t),
        amplitude_scaling=_lerp(ma.amplitude_scaling, mb.amplitude_scaling, t),
    )
    thickness = replace(
        ta,
        max_thickness=_lerp(ta.max_thickness, tb.max_thickness, t),
        thickness_factors=_lerp(ta.thickness_factors, tb.thickness_factors, t),
        sbend_factors=(
            None if ta.sbend_factors is None else _lerp(ta.sbend_factors, tb.sbend_factors, t)
        ),
    )
    return midline, thickness


def interpolate_sections(sections: tuple[Section, ...], theta_deg: float) -> tuple[MidlineParams, ThicknessSpec]:
    """Section parameters at an arbitrary angle, periodic componentwise interpolation."""
    theta = float(theta_deg) % 360.0
    thetas = [s.theta_deg for s in sections]
    for s in sections:
        if abs(s.theta_deg - theta) < 1e-9:
            return s.midline, s.thickness
    if len(sections) == 1:
        s = sections[0]
        return s.midline, s.thickness

    # bracketing pair with wrap-around
    idx = int(np.searchsorted(thetas, theta)) - 1
    if idx < 0:
        sa, sb = sections[-1], sections[0]
        span = (sb.theta_deg + 360.0) - sa.theta_deg
        t = (theta + 360.0 - sa.theta_deg) / span
    elif idx == len(sections) - 1:
        sa, sb = sections[-1], sections[0]
        span = (sb.theta_deg + 360.0) - sa.theta_deg
        t = (theta - sa.theta_deg) / span
    else:
        sa, sb = sections[idx], sections[idx + 1]
        t = (theta - sa.theta_deg) / (sb.theta_deg - sa.theta_deg)
    return _lerp_section(sa, sb, t)


def section_contour(design: DesignParams, theta_deg: float) -> ClosedContour:
    """Run the 1D/2D pipeline at one angular plane and resample to the common K."""
    midline_params, thickness_spec = interpolate_sections(design.sections, theta_deg)
    res = design.resolution
    m = build_midline(midline_params, res.samples_per_segment)
    prof = thickness_profile(m, thickness_spec)
    contour = union_of_circles(m, prof, cell=res.cell_mm)
    return resample_contour(contour, res.contour_points)


# ---------------------------------------------------------------------------
# Revolve / loft
# ---------------------------------------------------------------------------

def revolve_contours(contours: list[np.ndarray], provenance: str = "") -> TriMesh:
    """Join planar (rho, z) rings at uniformly spaced angles into a closed tube.

    ``contours[j]`` is placed on the plane at ``j * 360/n`` degrees; the seam
    reuses ring 0, so the result is watertight by construction.
    """
    nf = len(contours)
    if nf < 3:
        raise GeometryError(f"revolve needs at least 3 angular frames (got {nf})")
    K = len(contours[0])
    if any(len(c) != K for c in contours):
        raise GeometryError("all frames must share the same vertex count")

    thetas = np.radians(360.0 * np.arange(nf) / nf)
    verts = np.empty((nf * K, 3))
    for j, (theta, ring) in enumerate(zip(thetas, contours)):
        ring = np.asarray(ring, dtype=float)
        rho, z = ring[:, 0], ring[:, 1]
        verts[j * K : (j + 1) * K, 0] = rho * np.cos(theta)
        verts[j * K : (j + 1) * K, 1] = rho * np.sin(theta)
        verts[j * K : (j + 1) * K, 2] = z

    j = np.repeat(np.arange(nf), K)
    k = np.tile(np.arange(K), nf)
    j2 = (j + 1) % nf
    k2 = (k + 1) % K
    a = j * K + k
    b = j2 * K + k
    c = j2 * K + k2
    d = j * K + k2
    tris = np.empty((2 * nf * K, 3), dtype=np.int64)
    tris[0::2] = np.column_stack([a, b, c])
    tris[1::2] = np.column_stack([a, c, d])

    mesh = TriMesh(vertices=verts, triangles=tris, provenance=provenance)
    if _signed_volume(mesh) < 0:
        mesh.triangles = mesh.triangles[:, ::-1].copy()
    return mesh


def loft(design: DesignParams) -> TriMesh:
    """Full pipeline: frames every angular step, joined into a watertight shell."""
    validate(design)
    res = design.resolution
    nf = int(round(360.0 / res.angular_step_deg))

    provenance = hashlib.sha256(canonical_json(design).encode()).hexdigest()
    if len(design.sections) == 1:
        ring = section_contour(design, design.sections[0].theta_deg).vertices
        if not contour_is_simple(ring):
            raise GeometryError("section contour self-intersects at theta=0")
        return revolve_contours([ring] * nf, provenance=provenance)

    rings = []
    for jf in range(nf):
        theta = 360.0 * jf / nf
        try:
            contour = section_contour(design, theta)
        except ValueError as exc:
            raise GeometryError(f"section generation failed at theta={theta:.3f}: {exc}") from exc
        if not contour_is_simple(contour.vertices):
            raise GeometryError(f"interpolated contour self-intersects at theta={theta:.3f}")
        rings.append(contour.vertices)
    return revolve_contours(rings, provenance=provenance)


# ---------------------------------------------------------------------------
# Diagnostics and export
# ---------------------------------------------------------------------------

def _signed_volume(mesh: TriMesh) -> float:
    p = mesh.vertices[mesh.triangles]  # (T, 3, 3)
    return float(np.einsum("ij,ij->", p[:, 0], np.cross(p[:, 1], p[:, 2])) / 6.0)


def mesh_diagnostics(mesh: TriMesh) -> MeshReport:
    """Topology and integral diagnostics; never raises, the report carries failures."""
    V = len(mesh.vertices)
    T = len(mesh.triangles)
    if T == 0:
        return MeshReport(False, 0.0, 0.0, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0), V, 0, 0, V, 0, 0)

    tri = mesh.triangles
    directed = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
    undirected = np.sort(directed, axis=1)
    edges, counts = np.unique(undirected, axis=0, return_counts=True)
    boundary = int(np.sum(counts == 1))
    nonmanifold = int(np.sum(counts > 2))

    # consistent orientation: every directed edge occurs exactly once
    _, dir_counts = np.unique(directed, axis=0, return_counts=True)
    oriented = bool(np.all(dir_counts == 1))
    watertight = boundary == 0 and nonmanifold == 0 and oriented

    p = mesh.vertices[mesh.triangles]
    cross = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    area = float(0.5 * np.sum(np.linalg.norm(cross, axis=1)))
    volume = _signed_volume(mesh)
    bbox_min = tuple(float(v) for v in mesh.vertices.min(axis=0))
    bbox_max = tuple(float(v) for v in mesh.vertices.max(axis=0))
    return MeshReport(
        watertight=watertight,
        enclosed_volume=volume,
        surface_area=area,
        bbox_min=bbox_min,
        bbox_max=bbox_max,
        n_vertices=V,
        n_edges=int(len(edges)),
        n_triangles=T,
        euler_characteristic=V - int(len(edges)) + T,
        boundary_edges=boundary,
        nonmanifold_edges=nonmanifold,
    )


def export_stl(mesh: TriMesh) -> bytes:
    """Binary STL bytes: 80-byte header, u32 count, 50 bytes per triangle.

    Normals are recomputed from the winding.  Refuses meshes that are empty
    or not closed 2-manifolds.
    """
    if len(mesh.triangles) == 0:
        raise MeshError("refusing to export an empty mesh")
    report = mesh_diagnostics(mesh)
    if not report.watertight:
        raise MeshError(
            "refusing to export non-manifold mesh: "
            f"{report.boundary_edges} boundary edges, "
            f"{report.nonmanifold_edges} edges with >2 incident triangles"
        )

    p = mesh.vertices[mesh.triangles].astype(np.float64)
    n = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    norms = np.linalg.norm(n, axis=1, keepdims=True)
    n = np.divide(n, norms, out=np.zeros_like(n), where=norms > 0)

    T = len(mesh.triangles)
    rec = np.zeros(T, dtype=[("n", "<f4", 3), ("v", "<f4", (3, 3)), ("attr", "<u2")])
    rec["n"] = n.astype(np.float32)
    rec["v"] = p.astype(np.float32)
    header = STL_HEADER_TAG.ljust(80, b"\0")
    return header + struct.pack("<I", T) + rec.tobytes()


def write_stl(mesh: TriMesh, path) -> None:
    data = export_stl(mesh)
    with open(path, "wb") as fh:
        fh.write(data)


def mesh_digest(mesh: TriMesh) -> str:
    """Digest of the exported byte stream; stable across runs for equal designs."""
    return hashlib.sha256(export_stl(mesh)).hexdigest()
