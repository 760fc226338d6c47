"""Silhouette metrology on grayscale frames: region extraction and kinematics.

Frames are single-channel images (foreground bright).  Each frame is
thresholded, cleaned with a 3x3 morphological opening, and labelled with
4-connectivity; the largest connected region is taken as the actuator
silhouette.  Axial extension and radial expansion are the bounding-box
height/width growth relative to the run minima, scaled by the mm/px factor;
the bend angle is the absolute angle of the base-to-tip vector.

The tip is defined as the highest contour point, which is only reliable for
moderate bending; a warning is emitted when the top of the silhouette is
flat enough to make that choice ambiguous.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

__all__ = [
    "FrameMeasurement",
    "DeformationSeries",
    "AmbiguousTipWarning",
    "extract_region",
    "bend_angle",
    "deformation_metrics",
    "read_pgm",
    "write_pgm",
    "measure_directory",
    "series_to_csv",
]


class AmbiguousTipWarning(UserWarning):
    """The highest silhouette point is not unique; bend angle may be unreliable."""


@dataclass(frozen=True)
class FrameMeasurement:
    h: int  # bounding-box height, px
    w: int  # bounding-box width, px
    base: tuple[float, float]  # (x, y), midpoint of the lowest component row
    tip: tuple[float, float]  # (x, y), leftmost highest component pixel
    area: int  # component pixel count


@dataclass
class DeformationSeries:
    dl_mm: np.ndarray  # axial extension per frame, minima-referenced
    dr_mm: np.ndarray  # radial expansion per frame, minima-referenced
    theta_deg: np.ndarray
    alpha: float  # mm per px
    h_px: np.ndarray
    w_px: np.ndarray


def extract_region(
    frame: np.ndarray,
    threshold: int = 128,
    open_iterations: int = 1,
    tip_band: int = 1,
) -> FrameMeasurement:
    """Largest connected foreground region of one frame, with its key points.

    Pixels >= ``threshold`` are foreground.  A 3x3 opening (``open_iterations``
    passes, 0 disables it) removes speckle before labelling.
    """
    img = np.asarray(frame)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"frame must be a nonempty 2D array (got shape {img.shape})")
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be in [0, 255] (got {threshold})")

    mask = img >= threshold
    if open_iterations > 0:
        mask = ndimage.binary_opening(mask, structure=np.ones((3, 3), bool), iterations=open_iterations)
    if not mask.any():
        raise ValueError(f"no foreground pixels at threshold {threshold} after noise filtering")

    labels, n_labels = ndimage.label(mask)  # default structure: 4-connectivity
    sizes = np.bincount(labels.ravel())
    sizes[0] = 0
    best = int(np.argmax(sizes))  # ties resolve to the lowest label (row-major first)
    comp = labels == best

    rows = np.any(comp, axis=1)
    cols = np.any(comp, axis=0)
    r_min, r_max = int(np.argmax(rows)), int(len(rows) - 1 - np.argmax(rows[::-1]))
    c_min, c_max = int(np.argmax(cols)), int(len(cols) - 1 - np.argmax(cols[::-1]))

    bottom_cols = np.flatnonzero(comp[r_max])
    base = (0.5 * float(bottom_cols[0] + bottom_cols[-1]), float(r_max))
    top_cols = np.flatnonzero(comp[r_min])
    tip = (float(top_cols[0]), float(r_min))

    band_rows = comp[r_min : r_min + max(1, tip_band)]
    if int(band_rows.sum()) > 1:
        warnings.warn(
            f"silhouette top is flat ({int(band_rows.sum())} pixels within {tip_band} row(s) "
            "of the highest point); tip-based bend angle may be unreliable",
            AmbiguousTipWarning,
            stacklevel=2,
        )

    return FrameMeasurement(
        h=r_max - r_min + 1,
        w=c_max - c_min + 1,
        base=base,
        tip=tip,
        area=int(sizes[best]),
    )


def bend_angle(meas: FrameMeasurement) -> float:
    """Absolute angle (degrees) of the base-to-tip vector from the vertical.

    Image y grows downward, so the vertical component is y_base - y_tip.
    """
    dx = meas.tip[0] - meas.base[0]
    dy = meas.base[1] - meas.tip[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("base and tip coincide; bend angle undefined")
    return abs(np.degrees(np.arctan2(dx, dy)))


def deformation_metrics(frames, alpha: float, threshold: int = 128, **extract_kw) -> DeformationSeries:
    """Minima-referenced extension/expansion and per-frame bend angle for a run."""
    frames = list(frames)
    if not frames:
        raise ValueError("need at least one frame")
    if not alpha > 0:
        raise ValueError(f"alpha (mm/px) must be > 0 (got {alpha})")

    measurements = []
    for i, frame in enumerate(frames):
        try:
            measurements.append(extract_region(frame, threshold=threshold, **extract_kw))
        except ValueError as exc:
            raise ValueError(f"extraction failed on frame {i}: {exc}") from exc

    h = np.array([m.h for m in measurements], dtype=float)
    w = np.array([m.w for m in measurements], dtype=float)
    theta = np.array([bend_angle(m) for m in measurements])
    return DeformationSeries(
        dl_mm=alpha * (h - h.min()),
        dr_mm=alpha * (w - w.min()),
        theta_deg=theta,
        alpha=alpha,
        h_px=h.astype(int),
        w_px=w.astype(int),
    )


# ---------------------------------------------------------------------------
# PGM (P5) frame I/O and CSV output
# ---------------------------------------------------------------------------

def read_pgm(path) -> np.ndarray:
    """Binary PGM (P5) reader, 8-bit only."""
    data = Path(path).read_bytes()
    tokens = []
    pos = 0
    while len(tokens) < 4:
        if pos >= len(data):
            raise ValueError(f"{path}: truncated PGM header")
        ch = data[pos : pos + 1]
        if ch == b"#":
            pos = data.index(b"\n", pos) + 1
        elif ch.isspace():
            pos += 1
        else:
            end = pos
            while end < len(data) and not data[end : end + 1].isspace():
                end += 1
            tokens.append(data[pos:end])
            pos = end
    magic, width, height, maxval = tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3])
    if magic != b"P5":
        raise ValueError(f"{path}: not a binary PGM (expected magic P5, got {magic!r})")
    if maxval > 255:
        raise ValueError(f"{path}: only 8-bit PGM supported (maxval {maxval})")
    pos += 1  # single whitespace after maxval
    pixels = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    return pixels.reshape(height, width).copy()


def write_pgm(path, img: np.ndarray) -> None:
    img = np.ascontiguousarray(np.asarray(img, dtype=np.uint8))
    if img.ndim != 2:
        raise ValueError("PGM frames must be 2D")
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode()
    Path(path).write_bytes(header + img.tobytes())


def measure_directory(
    frames_dir, alpha: float, threshold: int = 128
) -> tuple[list[str], DeformationSeries]:
    """Measure every .pgm frame in a directory; lexicographic order is time order."""
    paths = sorted(Path(frames_dir).glob("*.pgm"))
    if not paths:
        raise ValueError(f"no .pgm frames found in {frames_dir}")
    frames = [read_pgm(p) for p in paths]
    series = deformation_metrics(frames, alpha=alpha, threshold=threshold)
    return [p.name for p in paths], series


def series_to_csv(names: list[str], series: DeformationSeries) -> str:
    lines = ["frame,h_px,w_px,dL_mm,dR_mm,theta_deg"]
    for name, h, w, dl, dr, th in zip(
        names, series.h_px, series.w_px, series.dl_mm, series.dr_mm, series.theta_deg
    ):
        lines.append(f"{name},{h},{w},{dl:.9g},{dr:.9g},{th:.9g}")
    return "\n".join(lines) + "\n"
