"""The TFGrid container, dB conversion and on-disk formats.

Binary ``.tfg`` layout (all little-endian)::

    offset 0   4 bytes   magic b"TFG1"
    offset 4   u32       n_freq
    offset 8   u32       n_time
    offset 12  f64[n_freq]            frequency axis (Hz)
               f64[n_time]            time axis (s)
               f64[n_freq * n_time]   values, row-major [freq][time]
               u8                     transform-kind tag
               u8                     scale tag
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateError, FormatError, InvalidParameterError

__all__ = [
    "TransformKind",
    "Scale",
    "TFGrid",
    "to_db",
    "write_grid",
    "read_grid",
    "MAGIC",
]

MAGIC = b"TFG1"
_HEADER = struct.Struct("<4sII")


class TransformKind(enum.IntEnum):
    SPECTROGRAM = 0
    SCALOGRAM = 1
    STOCKWELL = 2
    WVD = 3
    SPWVD = 4
    OTHER = 255

    @property
    def signed(self):
        return self in (TransformKind.WVD, TransformKind.SPWVD)


class Scale(enum.IntEnum):
    LINEAR = 0
    DB = 1


@dataclass(eq=False)
class TFGrid:
    """Real-valued time-frequency array with explicit axes.

    ``values[i, j]`` belongs to frequency ``freq_axis[i]`` (Hz) and time
    ``time_axis[j]`` (s). ``meta`` holds auxiliary, non-serialized details
    such as boundary flags or the sign mask of a dB-converted WVD.
    """

    values: np.ndarray
    time_axis: np.ndarray
    freq_axis: np.ndarray
    kind: TransformKind = TransformKind.OTHER
    scale: Scale = Scale.LINEAR
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        self.time_axis = np.asarray(self.time_axis, dtype=np.float64).reshape(-1)
        self.freq_axis = np.asarray(self.freq_axis, dtype=np.float64).reshape(-1)
        self.kind = TransformKind(self.kind)
        self.scale = Scale(self.scale)
        if self.values.ndim != 2:
            raise InvalidParameterError(f"grid values must be 2-D, got shape {self.values.shape}")
        if self.values.shape != (self.freq_axis.size, self.time_axis.size):
            raise InvalidParameterError(
                f"values shape {self.values.shape} does not match axes "
                f"({self.freq_axis.size}, {self.time_axis.size})"
            )
        for name, axis in (("time_axis", self.time_axis), ("freq_axis", self.freq_axis)):
            if axis.size > 1 and not np.all(np.diff(axis) > 0):
                raise InvalidParameterError(f"{name} must be strictly increasing")

    @property
    def shape(self):
        return self.values.shape

    def same_as(self, other):
        """Bit-exact equality of everything that is serialized."""
        return (
            self.kind == other.kind
            and self.scale == other.scale
            and self.values.shape == other.values.shape
            and self.values.tobytes() == other.values.tobytes()
            and self.time_axis.tobytes() == other.time_axis.tobytes()
            and self.freq_axis.tobytes() == other.freq_axis.tobytes()
        )


def to_db(grid: TFGrid, floor: float = -120.0) -> TFGrid:
    """``10*log10(|v|/max|v|)`` clipped at ``floor``.

    Signed grids (WVD family) are converted on magnitude; the sign of every
    cell is kept in ``meta["sign"]``.
    """
    if grid.scale is Scale.DB:
        raise InvalidParameterError("grid is already in dB")
    if not floor < 0:
        raise InvalidParameterError(f"dB floor must be negative, got {floor}")
    mag = np.abs(grid.values)
    peak = mag.max() if mag.size else 0.0
    if not peak > 0:
        raise DegenerateError("cannot convert an all-zero grid to dB")
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(mag / peak)
    db = np.maximum(db, floor)
    meta = dict(grid.meta, db_floor=floor, db_reference=float(peak))
    if grid.kind.signed or np.any(grid.values < 0):
        meta["sign"] = np.sign(grid.values).astype(np.int8)
    return TFGrid(db, grid.time_axis.copy(), grid.freq_axis.copy(), grid.kind, Scale.DB, meta)


def _write_tfgrid(grid, fh):
    n_freq, n_time = grid.values.shape
    fh.write(_HEADER.pack(MAGIC, n_freq, n_time))
    fh.write(grid.freq_axis.astype("<f8").tobytes())
    fh.write(grid.time_axis.astype("<f8").tobytes())
    fh.write(np.ascontiguousarray(grid.values).astype("<f8").tobytes())
    fh.write(struct.pack("<BB", int(grid.kind), int(grid.scale)))


def _write_csv(grid, fh):
    # first row: frequency axis, preceded by a corner label; then one row per frame
    fmt = "{!r}".format
    fh.write(",".join(["time_s\\freq_hz", *(fmt(float(f)) for f in grid.freq_axis)]) + "\n")
    for j, t in enumerate(grid.time_axis):
        row = grid.values[:, j]
        fh.write(",".join([fmt(float(t)), *(fmt(float(v)) for v in row)]) + "\n")


def write_grid(grid: TFGrid, path, format="tfgrid"):
    """Write ``grid`` as binary ``tfgrid`` or as ``csv``.

    The CSV layout is one line per time frame; its header line is the
    frequency axis. CSV does not carry the kind/scale tags.
    """
    path = Path(path)
    if format == "tfgrid":
        with open(path, "wb") as fh:
            _write_tfgrid(grid, fh)
    elif format == "csv":
        with open(path, "w", encoding="utf-8") as fh:
            _write_csv(grid, fh)
    else:
        raise FormatError(f"unknown grid format {format!r}")


def _take(buf, offset, count, what):
    end = offset + count
    if end > len(buf):
        raise FormatError(
            f"truncated file: {what} needs bytes {offset}..{end}, file has {len(buf)}"
        )
    return buf[offset:end], end


def read_grid(path) -> TFGrid:
    """Read a binary ``tfgrid`` file written by :func:`write_grid`."""
    buf = Path(path).read_bytes()
    head, off = _take(buf, 0, _HEADER.size, "header")
    magic, n_freq, n_time = _HEADER.unpack(head)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r} at offset 0 (expected {MAGIC!r})")
    raw, off = _take(buf, off, 8 * n_freq, "frequency axis")
    freq = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    raw, off = _take(buf, off, 8 * n_time, "time axis")
    time = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    raw, off = _take(buf, off, 8 * n_freq * n_time, "values")
    values = np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(n_freq, n_time)
    tags, off = _take(buf, off, 2, "tags")
    if off != len(buf):
        raise FormatError(f"{len(buf) - off} trailing bytes after offset {off}")
    kind_tag, scale_tag = tags
    try:
        kind, scale = TransformKind(kind_tag), Scale(scale_tag)
    except ValueError as exc:
        raise FormatError(f"unknown tag at offset {off - 2}: {exc}") from None
    try:
        return TFGrid(values, time, freq, kind, scale)
    except InvalidParameterError as exc:
        raise FormatError(f"inconsistent grid: {exc}") from None
