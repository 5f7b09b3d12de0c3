"""Heatmap rendering of TF grids to binary PPM (P6)."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError
from .grid import Scale, TFGrid

__all__ = ["RenderSpec", "COLORMAPS", "colorize", "render", "render_bytes"]

# nine evenly spaced samples of viridis
_VIRIDIS = np.array([
    [0.2670, 0.0049, 0.3294],
    [0.2788, 0.1755, 0.4834],
    [0.2297, 0.3224, 0.5457],
    [0.1727, 0.4488, 0.5579],
    [0.1276, 0.5669, 0.5506],
    [0.1579, 0.6838, 0.5017],
    [0.3692, 0.7889, 0.3829],
    [0.6785, 0.8637, 0.1895],
    [0.9932, 0.9062, 0.1439],
])
_GRAY = np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]])
# blue - white - red, for signed (WVD-family) values centered on 0.5
_DIVERGING = np.array([
    [0.0196, 0.1882, 0.3804],
    [0.2627, 0.5765, 0.7647],
    [1.0, 1.0, 1.0],
    [0.8392, 0.3765, 0.3020],
    [0.4039, 0.0, 0.1216],
])
COLORMAPS = {"viridis": _VIRIDIS, "grayscale": _GRAY, "diverging": _DIVERGING}
MODES = ("db", "linear", "signed")


@dataclass(frozen=True)
class RenderSpec:
    """How a grid becomes pixels.

    ``mode`` selects dB magnitude, linear magnitude, or signed values on a
    symmetric scale (meant for WVD-family grids, with ``diverging``).
    ``width``/``height`` of ``None`` keep the grid's own dimensions.
    """

    colormap: str = "viridis"
    db_floor: float = -120.0
    normalize: str = "max"
    log_freq_axis: bool = False
    width: int | None = None
    height: int | None = None
    mode: str = "db"
    resample: str = "nearest"

    def __post_init__(self):
        if self.colormap not in COLORMAPS:
            raise InvalidParameterError(f"unknown colormap {self.colormap!r}")
        if not self.db_floor < 0:
            raise InvalidParameterError(f"db_floor must be negative, got {self.db_floor}")
        if self.normalize not in ("max", "absolute"):
            raise InvalidParameterError("normalize must be 'max' or 'absolute'")
        if self.mode not in MODES:
            raise InvalidParameterError(f"mode must be one of {MODES}")
        if self.resample not in ("nearest", "box"):
            raise InvalidParameterError("resample must be 'nearest' or 'box'")
        for name in ("width", "height"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise InvalidParameterError(f"{name} must be >= 1, got {v}")


def colorize(u, colormap="viridis"):
    """Map values in [0, 1] to uint8 RGB by piecewise-linear interpolation."""
    table = COLORMAPS[colormap]
    u = np.clip(np.asarray(u, dtype=np.float64), 0.0, 1.0)
    pos = u * (len(table) - 1)
    lo = np.minimum(np.floor(pos).astype(int), len(table) - 2)
    frac = (pos - lo)[..., None]
    rgb = table[lo] * (1.0 - frac) + table[lo + 1] * frac
    return np.round(rgb * 255.0).astype(np.uint8)


def _normalized(grid, spec):
    v = grid.values
    if grid.scale is Scale.DB:
        return (np.maximum(v, spec.db_floor) - spec.db_floor) / -spec.db_floor
    mag = np.abs(v)
    ref = 1.0 if spec.normalize == "absolute" else float(mag.max())
    if not ref > 0:
        return np.zeros_like(mag)
    if spec.mode == "signed":
        return 0.5 + 0.5 * np.clip(v / ref, -1.0, 1.0)
    if spec.mode == "linear":
        return mag / ref
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(mag / ref)
    return (np.clip(db, spec.db_floor, 0.0) - spec.db_floor) / -spec.db_floor


def _pixel_coords(axis, count, log):
    a = np.asarray(axis, dtype=np.float64)
    if log:
        positive = a[a > 0]
        if positive.size == 0:
            log = False
        else:
            a = np.log(np.maximum(a, positive[0]))
    if a.size == 1:
        return a, np.full(count, a[0]), np.array([a[0], a[0]])
    edges = a[0] + (a[-1] - a[0]) * np.arange(count + 1) / count
    centers = 0.5 * (edges[:-1] + edges[1:])
    return a, centers, edges


def _nearest_index(a, targets):
    idx = np.clip(np.searchsorted(a, targets), 1, max(1, a.size - 1))
    if a.size == 1:
        return np.zeros(targets.size, dtype=int)
    left = a[idx - 1]
    right = a[idx]
    return np.where(targets - left <= right - targets, idx - 1, idx)


def _resample_axis(values, axis, count, log, method, along):
    a, centers, edges = _pixel_coords(axis, count, log)
    nearest = _nearest_index(a, centers)
    if method == "nearest":
        return np.take(values, nearest, axis=along)
    out = []
    bins = np.searchsorted(a, edges[1:-1], side="left")
    starts = np.concatenate(([0], bins))
    stops = np.concatenate((bins, [a.size]))
    for p in range(count):
        lo, hi = starts[p], stops[p]
        if hi > lo:
            out.append(np.take(values, np.arange(lo, hi), axis=along).mean(axis=along))
        else:
            out.append(np.take(values, nearest[p], axis=along))
    return np.stack(out, axis=along)


def render_bytes(grid: TFGrid, spec: RenderSpec = RenderSpec()) -> bytes:
    """PPM (P6) bytes of ``grid``; top pixel row is the highest frequency."""
    if not np.all(np.isfinite(grid.values)):
        raise InvalidParameterError("grid contains non-finite values")
    n_freq, n_time = grid.values.shape
    width = spec.width or n_time
    height = spec.height or n_freq
    u = _normalized(grid, spec)
    u = _resample_axis(u, grid.freq_axis, height, spec.log_freq_axis, spec.resample, 0)
    u = _resample_axis(u, grid.time_axis, width, False, spec.resample, 1)
    rgb = colorize(u[::-1], spec.colormap)
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + rgb.tobytes()


def render(grid: TFGrid, spec: RenderSpec, path):
    """Write ``grid`` as a PPM image to ``path``."""
    data = render_bytes(grid, spec)
    Path(path).write_bytes(data)
    return Path(path)
