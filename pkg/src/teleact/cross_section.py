"""2D cross-section generation: thickness profiles and circle-union offsetting.

The midline is thickened into a closed wall outline by placing a disk of
local radius r(s) at every sample and taking the outer boundary of the
union.  The boundary is extracted as the zero level set of the union's
signed distance field, sampled on a uniform grid and contoured with
marching squares; each crossing is then refined against the exact field so
the polygon tracks the true boundary to well below grid resolution.  Only
the outer loop is kept: the shell's cavity emerges from the fold geometry,
not from interior contour loops.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .midline import Midline
from .params import ThicknessMode, ThicknessSpec, ValidationError, _check_thickness

__all__ = [
    "ThicknessProfile",
    "ClosedContour",
    "thickness_profile",
    "union_of_circles",
    "resample_contour",
    "polygon_area",
    "polygon_perimeter",
    "contour_is_simple",
    "signed_distance_to_contour",
]

DEFAULT_CELL_FRACTION = 0.25  # grid cell = min wall radius * this
_MAX_GRID_NODES = 40_000_000


@dataclass
class ThicknessProfile:
    """Local wall radius per midline sample (mm)."""

    radii: np.ndarray

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)


@dataclass
class ClosedContour:
    """Simple closed polygon, counter-clockwise, with a start-correspondence vertex."""

    vertices: np.ndarray  # (n, 2)
    anchor_index: int = 0

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)

    @property
    def perimeter(self) -> float:
        return polygon_perimeter(self.vertices)

    @property
    def area(self) -> float:
        return abs(polygon_area(self.vertices))


# ---------------------------------------------------------------------------
# Thickness profiles
# ---------------------------------------------------------------------------

def _anchor_chain(m: Midline) -> tuple[np.ndarray, np.ndarray]:
    """Sample indices of the per-segment anchor points.

    Returns (nodes, mids): nodes[k] is the sample nearest the shared endpoint
    between segments k-1 and k (the extremum control points), mids[k] the
    sample nearest segment k's central control point.
    """
    if not m.segments:
        raise ValueError("midline carries no spline segments; anchored thickness modes need them")
    n_seg = len(m.segments)
    targets_nodes = [m.segments[0].control_points[0]]
    targets_nodes += [seg.control_points[4] for seg in m.segments]
    targets_mids = [seg.control_points[2] for seg in m.segments]

    def nearest(p):
        d2 = np.sum((m.samples - p) ** 2, axis=1)
        return int(np.argmin(d2))  # argmin takes the lowest index on ties

    nodes = np.array([nearest(p) for p in targets_nodes])
    mids = np.array([nearest(p) for p in targets_mids])
    chain = np.empty(2 * n_seg + 1, dtype=int)
    chain[0::2] = nodes
    chain[1::2] = mids
    if np.any(np.diff(chain) <= 0):
        raise ValueError("thickness anchors collapsed; increase samples_per_segment")
    return nodes, mids


def _segment_factor_triples(spec: ThicknessSpec, n_seg: int) -> list[tuple[float, float, float]]:
    if spec.mode is ThicknessMode.SBEND:
        first = (n_seg + 1) // 2
        return [
            spec.thickness_factors if k < first else spec.sbend_factors  # type: ignore[list-item]
            for k in range(n_seg)
        ]
    return [spec.thickness_factors] * n_seg


def thickness_profile(m: Midline, spec: ThicknessSpec) -> ThicknessProfile:
    """Assign a local wall radius to every midline sample according to ``spec.mode``."""
    errors: list[str] = []
    _check_thickness(spec, "thickness", errors)
    if errors:
        raise ValidationError(errors)

    n = len(m.samples)
    t_max = spec.max_thickness
    if spec.mode is ThicknessMode.CONSTANT:
        return ThicknessProfile(np.full(n, t_max))

    nodes, mids = _anchor_chain(m)
    n_seg = len(m.segments)

    if spec.mode is ThicknessMode.COLLAPSED:
        # Intercalated folds: even segments stay at full thickness, odd
        # segments drop to the mid factor over a single-sample ramp just
        # after the first anchor and back just before the last.
        radii = np.full(n, t_max)
        plateau = spec.thickness_factors[1] * t_max
        for k in range(1, n_seg, 2):
            a, b = nodes[k], nodes[k + 1]
            if b - a >= 2:
                radii[a + 1 : b] = plateau
        return ThicknessProfile(radii)

    # Variable / S-bend: values at the anchor chain, linear in arc length.
    triples = _segment_factor_triples(spec, n_seg)
    node_vals = np.empty(n_seg + 1)
    node_vals[0] = triples[0][0]
    node_vals[-1] = triples[-1][2]
    for k in range(1, n_seg):
        # Shared extremum: mean of the adjoining segments' end/start factors
        # (identical for symmetric factor triples).
        node_vals[k] = 0.5 * (triples[k - 1][2] + triples[k][0])
    mid_vals = np.array([t[1] for t in triples])

    chain = np.empty(2 * n_seg + 1, dtype=int)
    chain[0::2] = nodes
    chain[1::2] = mids
    vals = np.empty(2 * n_seg + 1)
    vals[0::2] = node_vals
    vals[1::2] = mid_vals

    radii = np.interp(m.arc_coords, m.arc_coords[chain], vals * t_max)
    return ThicknessProfile(radii)


# ---------------------------------------------------------------------------
# Union of circles
# ---------------------------------------------------------------------------

def _sdf_factory(centers: np.ndarray, radii: np.ndarray):
    def sdf(points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        out = np.empty(len(pts))
        # chunk so the (points x centers) distance matrix stays small
        step = max(1, int(5_000_000 / max(len(centers), 1)))
        for lo in range(0, len(pts), step):
            block = pts[lo : lo + step]
            d = np.sqrt(
                (block[:, None, 0] - centers[None, :, 0]) ** 2
                + (block[:, None, 1] - centers[None, :, 1]) ** 2
            )
            out[lo : lo + step] = np.min(d - radii[None, :], axis=1)
        return out

    return sdf


# Marching squares case table: which cell-edge pairs the boundary joins.
# Edges are B(ottom), R(ight), T(op), L(eft); corner bits a=(i,j) b=(i+1,j)
# c=(i+1,j+1) d=(i,j+1), bit set = inside (f < 0).
_B, _R, _T, _L = 0, 1, 2, 3
_CASE_SEGMENTS: dict[int, list[tuple[int, int]]] = {
    1: [(_L, _B)],
    2: [(_B, _R)],
    3: [(_L, _R)],
    4: [(_R, _T)],
    6: [(_B, _T)],
    7: [(_L, _T)],
    8: [(_T, _L)],
    9: [(_B, _T)],
    11: [(_R, _T)],
    12: [(_L, _R)],
    13: [(_B, _R)],
    14: [(_L, _B)],
}


def _marching_squares_loops(fgrid: np.ndarray, x0: float, y0: float, cell: float, sdf) -> list[np.ndarray]:
    """All closed zero-level loops of the sampled field, crossings refined on the exact sdf."""
    nx, ny = fgrid.shape
    inside = fgrid < 0.0

    c00 = inside[:-1, :-1]
    c10 = inside[1:, :-1]
    c11 = inside[1:, 1:]
    c01 = inside[:-1, 1:]
    case = (
        c00.astype(np.int8)
        + 2 * c10.astype(np.int8)
        + 4 * c11.astype(np.int8)
        + 8 * c01.astype(np.int8)
    )

    n_hedges = (nx - 1) * ny  # horizontal edge (i,j): node (i,j)-(i+1,j)

    def h_id(i, j):
        return j * (nx - 1) + i

    def v_id(i, j):
        return n_hedges + j * nx + i

    adjacency: dict[int, list[int]] = {}
    cells = np.argwhere((case != 0) & (case != 15))
    for i, j in cells:
        cs = int(case[i, j])
        edge_ids = (h_id(i, j), v_id(i + 1, j), h_id(i, j + 1), v_id(i, j))  # B R T L
        if cs in (5, 10):
            center = 0.25 * (fgrid[i, j] + fgrid[i + 1, j] + fgrid[i + 1, j + 1] + fgrid[i, j + 1])
            if cs == 5:
                pairs = [(_B, _R), (_T, _L)] if center < 0 else [(_L, _B), (_R, _T)]
            else:
                pairs = [(_L, _B), (_R, _T)] if center < 0 else [(_B, _R), (_T, _L)]
        else:
            pairs = _CASE_SEGMENTS[cs]
        for e1, e2 in pairs:
            a, b = edge_ids[e1], edge_ids[e2]
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)

    if not adjacency:
        raise ValueError("field has no zero crossing; contour extraction failed")
    for eid, nbrs in adjacency.items():
        if len(nbrs) != 2:
            raise ValueError(f"open contour at grid edge {eid}; field not closed inside the grid")

    # Refine every crossing edge by bisection on the exact field.
    edge_ids_sorted = sorted(adjacency)
    p_starts = np.empty((len(edge_ids_sorted), 2))
    p_ends = np.empty((len(edge_ids_sorted), 2))
    for row, eid in enumerate(edge_ids_sorted):
        if eid < n_hedges:
            j, i = divmod(eid, nx - 1)
            p_starts[row] = (x0 + i * cell, y0 + j * cell)
            p_ends[row] = (x0 + (i + 1) * cell, y0 + j * cell)
        else:
            j, i = divmod(eid - n_hedges, nx)
            p_starts[row] = (x0 + i * cell, y0 + j * cell)
            p_ends[row] = (x0 + i * cell, y0 + (j + 1) * cell)

    f_start = sdf(p_starts)
    swap = f_start < 0.0  # keep t=0 on the outside
    p_out = np.where(swap[:, None], p_ends, p_starts)
    p_in = np.where(swap[:, None], p_starts, p_ends)
    t_out = np.zeros(len(edge_ids_sorted))
    t_in = np.ones(len(edge_ids_sorted))
    for _ in range(40):
        t_mid = 0.5 * (t_out + t_in)
        pts = p_out + t_mid[:, None] * (p_in - p_out)
        f_mid = sdf(pts)
        neg = f_mid < 0.0
        t_in = np.where(neg, t_mid, t_in)
        t_out = np.where(neg, t_out, t_mid)
    t_final = 0.5 * (t_out + t_in)
    points = p_out + t_final[:, None] * (p_in - p_out)
    point_of = {eid: points[row] for row, eid in enumerate(edge_ids_sorted)}

    loops = []
    visited: set[int] = set()
    for start in edge_ids_sorted:
        if start in visited:
            continue
        loop = [start]
        visited.add(start)
        prev, current = None, start
        while True:
            nbrs = adjacency[current]
            nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
            if nxt == start:
                break
            loop.append(nxt)
            visited.add(nxt)
            prev, current = current, nxt
        loops.append(np.array([point_of[e] for e in loop]))
    return loops


def union_of_circles(m: Midline, profile: ThicknessProfile, cell: float | None = None) -> ClosedContour:
    """Outer boundary of the disk union along the midline, as a simple closed polygon."""
    centers = np.asarray(m.samples, dtype=float)
    radii = np.asarray(profile.radii, dtype=float)
    if len(radii) != len(centers):
        raise ValueError(f"profile has {len(radii)} radii for {len(centers)} midline samples")
    if np.any(radii <= 0):
        raise ValueError("wall radii must be strictly positive")
    if len(centers) > 1:
        spread = np.ptp(centers, axis=0)
        if float(np.max(spread)) == 0.0:
            raise ValueError("degenerate midline: all samples coincident")

    r_min = float(radii.min())
    if cell is None:
        cell = DEFAULT_CELL_FRACTION * r_min
    if cell > r_min / 2 + 1e-12:
        raise ValueError(
            f"grid cell {cell:.6g} too coarse to resolve the thinnest wall radius "
            f"{r_min:.6g}; need cell <= min radius / 2"
        )

    pad = float(radii.max()) + 3.0 * cell
    x0 = float(centers[:, 0].min() - pad)
    y0 = float(centers[:, 1].min() - pad)
    x1 = float(centers[:, 0].max() + pad)
    y1 = float(centers[:, 1].max() + pad)
    nx = int(np.ceil((x1 - x0) / cell)) + 1
    ny = int(np.ceil((y1 - y0) / cell)) + 1
    if nx * ny > _MAX_GRID_NODES:
        raise ValueError(f"distance-field grid would need {nx * ny} nodes; increase cell size")

    sdf = _sdf_factory(centers, radii)
    xs = x0 + cell * np.arange(nx)
    ys = y0 + cell * np.arange(ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    fgrid = sdf(np.column_stack([gx.ravel(), gy.ravel()])).reshape(nx, ny)

    loops = _marching_squares_loops(fgrid, x0, y0, cell, sdf)
    outer = max(loops, key=lambda lp: abs(polygon_area(lp)))
    if polygon_area(outer) < 0:
        outer = outer[::-1]

    d2 = np.sum((outer - centers[0]) ** 2, axis=1)
    return ClosedContour(vertices=outer, anchor_index=int(np.argmin(d2)))


# ---------------------------------------------------------------------------
# Resampling and polygon utilities
# ---------------------------------------------------------------------------

def resample_contour(c: ClosedContour, K: int) -> ClosedContour:
    """Resample to exactly K vertices at uniform arc spacing, starting at the anchor.

    The pipeline always uses K >= 16 (enforced at the design level); smaller
    counts are accepted here for diagnostics on coarse shapes.
    """
    if K < 3:
        raise ValueError(f"resample count must be >= 3 (got {K})")
    verts = np.asarray(c.vertices, dtype=float)
    anchor = int(c.anchor_index)
    if len(verts) < 3:
        raise ValueError("contour needs at least 3 vertices")
    if polygon_area(verts) < 0:
        verts = verts[::-1]
        anchor = len(verts) - 1 - anchor

    edge_len = np.linalg.norm(np.diff(np.vstack([verts, verts[:1]]), axis=0), axis=1)
    perimeter = float(edge_len.sum())
    if perimeter <= 0:
        raise ValueError("degenerate contour: zero perimeter")

    cum = np.concatenate([[0.0], np.cumsum(edge_len)])  # length n+1, cum[n] = perimeter
    s_start = cum[anchor]
    targets = np.mod(s_start + perimeter * np.arange(K) / K, perimeter)

    idx = np.searchsorted(cum, targets, side="right") - 1
    idx = np.clip(idx, 0, len(verts) - 1)
    local = targets - cum[idx]
    p = verts[idx]
    q = verts[(idx + 1) % len(verts)]
    with np.errstate(invalid="ignore"):
        t = np.where(edge_len[idx] > 0, local / edge_len[idx], 0.0)
    new_verts = p + t[:, None] * (q - p)
    new_verts[0] = verts[anchor]  # exact anchor correspondence
    return ClosedContour(vertices=new_verts, anchor_index=0)


def polygon_area(vertices: np.ndarray) -> float:
    """Signed shoelace area (positive for counter-clockwise)."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_perimeter(vertices: np.ndarray) -> float:
    v = np.asarray(vertices, dtype=float)
    return float(np.sum(np.linalg.norm(np.diff(np.vstack([v, v[:1]]), axis=0), axis=1)))


def contour_is_simple(vertices: np.ndarray) -> bool:
    """True when no two non-adjacent edges properly cross or overlap."""
    v = np.asarray(vertices, dtype=float)
    n = len(v)
    if n < 3:
        return False
    p = v
    q = np.roll(v, -1, axis=0)

    ii, jj = np.triu_indices(n, k=2)
    keep = ~((ii == 0) & (jj == n - 1))  # wrap-around neighbours are adjacent
    ii, jj = ii[keep], jj[keep]
    if len(ii) == 0:
        return True

    def cross(o, a, b):
        return (a[:, 0] - o[:, 0]) * (b[:, 1] - o[:, 1]) - (a[:, 1] - o[:, 1]) * (b[:, 0] - o[:, 0])

    p1, q1 = p[ii], q[ii]
    p2, q2 = p[jj], q[jj]
    d1 = cross(p1, q1, p2)
    d2 = cross(p1, q1, q2)
    d3 = cross(p2, q2, p1)
    d4 = cross(p2, q2, q1)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0)) & (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)
    if np.any(proper):
        return False

    # Collinear overlaps: all four orientation tests vanish and the
    # projections onto the shared direction overlap with positive length.
    collinear = (d1 == 0) & (d2 == 0) & (d3 == 0) & (d4 == 0)
    if np.any(collinear):
        for a, b in zip(ii[collinear], jj[collinear]):
            axis = int(np.argmax(np.abs(q[a] - p[a])))
            lo1, hi1 = sorted((p[a][axis], q[a][axis]))
            lo2, hi2 = sorted((p[b][axis], q[b][axis]))
            if min(hi1, hi2) - max(lo1, lo2) > 0:
                return False
    return True


def signed_distance_to_contour(c: ClosedContour, points: np.ndarray) -> np.ndarray:
    """Signed distance of points to the polygon boundary: positive inside."""
    v = np.asarray(c.vertices, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    a = v
    b = np.roll(v, -1, axis=0)
    ab = b - a
    ab2 = np.sum(ab**2, axis=1)

    ap = pts[:, None, :] - a[None, :, :]  # (m, n, 2)
    t = np.clip(np.einsum("mnk,nk->mn", ap, ab) / np.where(ab2 > 0, ab2, 1.0), 0.0, 1.0)
    closest = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    dist = np.min(np.linalg.norm(pts[:, None, :] - closest, axis=2), axis=1)

    # even-odd ray casting for containment
    x, y = pts[:, 0][:, None], pts[:, 1][:, None]
    x1, y1 = a[:, 0][None, :], a[:, 1][None, :]
    x2, y2 = b[:, 0][None, :], b[:, 1][None, :]
    straddles = (y1 > y) != (y2 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = x1 + (y - y1) * (x2 - x1) / np.where((y2 - y1) != 0, (y2 - y1), 1.0)
    hits = straddles & (x_cross > x)
    inside = np.sum(hits, axis=1) % 2 == 1
    return np.where(inside, dist, -dist)


def contour_to_csv(c: ClosedContour) -> str:
    """Debug dump: one (x, y) row per vertex."""
    lines = ["x_mm,y_mm"]
    for x, y in c.vertices:
        lines.append(f"{x:.9g},{y:.9g}")
    return "\n".join(lines) + "\n"
