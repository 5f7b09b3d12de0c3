"""Ridge and resolution measurements on 1-D profiles of a grid."""

from __future__ import annotations

import numpy as np

__all__ = ["half_power_width", "rms_spread", "ridge"]


def _crossing(axis, values, i, j, level):
    # linear interpolation between samples i (above level) and j (below)
    vi, vj = values[i], values[j]
    return axis[i] + (axis[j] - axis[i]) * (vi - level) / (vi - vj)


def half_power_width(profile, axis=None, peak=None):
    """Width between the -3 dB (half-value) points around a peak.

    ``profile`` holds power-like (already squared) values. Crossings are
    linearly interpolated in ``axis`` coordinates. Returns ``nan`` if the
    profile never falls below half on one side.
    """
    p = np.asarray(profile, dtype=np.float64)
    x = np.arange(p.size, dtype=np.float64) if axis is None else np.asarray(axis, np.float64)
    k = int(np.argmax(p)) if peak is None else int(peak)
    level = 0.5 * p[k]
    left = k
    while left > 0 and p[left - 1] > level:
        left -= 1
    right = k
    while right < p.size - 1 and p[right + 1] > level:
        right += 1
    if left == 0 or right == p.size - 1:
        return float("nan")
    lo = _crossing(x, p, left, left - 1, level)
    hi = _crossing(x, p, right, right + 1, level)
    return float(hi - lo)


def rms_spread(weights, axis=None):
    """Standard deviation of ``axis`` under nonnegative ``weights``."""
    w = np.asarray(weights, dtype=np.float64)
    x = np.arange(w.size, dtype=np.float64) if axis is None else np.asarray(axis, np.float64)
    total = w.sum()
    mean = (x * w).sum() / total
    return float(np.sqrt(((x - mean) ** 2 * w).sum() / total))


def ridge(grid):
    """Frequency of the per-frame maximum of ``|values|``."""
    return grid.freq_axis[np.argmax(np.abs(grid.values), axis=0)]
