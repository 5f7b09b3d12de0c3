"""Instantaneous autocorrelation, Wigner-Ville distribution and its smoothed form.

Discretization: the lag product is ``x[n+m] * conj(x[n-m])``, which samples
the continuous ``R(t, tau)`` at ``tau = 2m/fs``. With the default 2x
band-limited upsampling the working rate doubles, so consecutive lags are
``1/fs`` apart; the frequency axis accounts for either case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import convolve1d

from .engine import ComplexSignal, RealSignal, analytic_signal, dft_forward, dft_inverse
from .errors import ConsistencyError, InvalidLengthError, InvalidParameterError
from .grid import TFGrid, TransformKind
from .linear import _as_signal

__all__ = [
    "LagGrid",
    "SmoothingKernel",
    "instantaneous_autocorrelation",
    "acf",
    "wvd",
    "spwvd",
    "default_kernel",
    "gaussian_kernel",
    "cross_term_report",
    "CrossTermReport",
    "IMAG_TOLERANCE",
]

IMAG_TOLERANCE = 1e-9
_BLOCK = 256  # time columns per FFT batch in wvd()


@dataclass(frozen=True, eq=False)
class LagGrid:
    """``values[n, j]`` is the lag product at time ``n`` and lag ``lags[j]``."""

    values: np.ndarray
    lags: np.ndarray
    time_axis: np.ndarray
    lag_axis: np.ndarray

    @property
    def max_lag(self):
        return int(self.lags[-1])

    def at_lag(self, m):
        return self.values[:, int(m) + self.max_lag]


def instantaneous_autocorrelation(x, max_lag=None, times=None, sample_rate=None) -> LagGrid:
    """Lag products ``x[n+m] conj(x[n-m])`` for ``|m| <= max_lag``.

    Products reaching outside the signal are zero. ``times`` optionally
    restricts the time indices that are evaluated.
    """
    if isinstance(x, (RealSignal, ComplexSignal)):
        z, fs = x.samples.astype(np.complex128), x.sample_rate
    else:
        z = np.asarray(x, dtype=np.complex128).reshape(-1)
        fs = 1.0 if sample_rate is None else float(sample_rate)
    n = z.size
    if n < 1:
        raise InvalidLengthError("empty signal")
    if max_lag is None:
        max_lag = n // 2
    max_lag = int(max_lag)
    if not 0 <= max_lag <= n // 2:
        raise InvalidParameterError(f"max_lag must be in [0, {n // 2}], got {max_lag}")
    idx = np.arange(n) if times is None else np.asarray(times, dtype=np.int64)
    lags = np.arange(-max_lag, max_lag + 1)
    fwd = idx[:, None] + lags[None, :]
    bwd = idx[:, None] - lags[None, :]
    ok = (fwd >= 0) & (fwd < n) & (bwd >= 0) & (bwd < n)
    values = np.zeros(ok.shape, dtype=np.complex128)
    values[ok] = z[fwd[ok]] * np.conj(z[bwd[ok]])
    return LagGrid(values, lags, idx / fs, 2.0 * lags / fs)


def acf(x, lag):
    """Direct autocorrelation ``sum_n x[n + lag] conj(x[n])``."""
    z = np.asarray(x.samples if isinstance(x, (RealSignal, ComplexSignal)) else x,
                   dtype=np.complex128).reshape(-1)
    lag = int(lag)
    if lag >= 0:
        return complex(np.sum(z[lag:] * np.conj(z[: z.size - lag])))
    return complex(np.sum(z[: z.size + lag] * np.conj(z[-lag:])))


def _upsample2(z):
    """Band-limited 2x interpolation of a complex sequence via its spectrum."""
    n = z.size
    spec = dft_forward(z)
    out = np.zeros(2 * n, dtype=np.complex128)
    half = (n + 1) // 2
    out[:half] = spec[:half]
    if n % 2 == 0:
        # split the shared Nyquist bin between +fs/2 and -fs/2
        out[half] = spec[half] / 2
        out[-half:] = spec[half:]
        out[-half] = spec[half] / 2
    else:
        out[-(n - half):] = spec[half:]
    return dft_inverse(out) * 2


def wvd(x, n_freq=None, upsample=True, max_lag=None, sample_rate=None) -> TFGrid:
    """Wigner-Ville distribution of the analytic version of ``x``.

    Parameters
    ----------
    x : RealSignal or array_like
        Real input, at least 4 samples.
    n_freq : int, optional
        Number of frequency bins covering ``[0, fs/2)``; bin spacing is
        ``fs / (2 n_freq)``. Defaults to the signal length.
    upsample : bool
        Interpolate the analytic signal 2x before forming lag products, so
        odd lags (in input samples) are represented too.
    max_lag : int, optional
        Largest lag in working-rate samples; defaults to the largest lag the
        lag DFT can hold without wrap-around.

    Returns
    -------
    TFGrid
        Real values (possibly negative) for every input sample. ``meta``
        holds the discarded imaginary residual, the lag-DFT length (the
        time-marginal scale) and the per-frame count of in-range lags.
    """
    sig = _as_signal(x, sample_rate)
    if not isinstance(sig, RealSignal):
        raise TypeError("wvd expects a real signal; it forms the analytic signal itself")
    n = len(sig)
    if n < 4:
        raise InvalidLengthError(f"wvd needs at least 4 samples, got {n}")
    fs = sig.sample_rate
    n_freq = n if n_freq is None else int(n_freq)
    if n_freq < 2:
        raise InvalidParameterError(f"n_freq must be >= 2, got {n_freq}")

    z = analytic_signal(sig).samples
    if upsample:
        z = _upsample2(z)
        factor = 2
    else:
        factor = 1
    n_fft = factor * n_freq
    lag_cap = (n_fft - 1) // 2
    if max_lag is None:
        max_lag = min(lag_cap, z.size // 2)
    max_lag = int(max_lag)
    if not 0 <= max_lag <= min(lag_cap, z.size // 2):
        raise InvalidParameterError(
            f"max_lag must be in [0, {min(lag_cap, z.size // 2)}], got {max_lag}"
        )

    centers = np.arange(n) * factor
    values = np.empty((n_freq, n))
    residual = 0.0
    slots = np.arange(-max_lag, max_lag + 1) % n_fft
    for start in range(0, n, _BLOCK):
        block = centers[start:start + _BLOCK]
        lag_grid = instantaneous_autocorrelation(z, max_lag, times=block)
        buf = np.zeros((block.size, n_fft), dtype=np.complex128)
        buf[:, slots] = lag_grid.values
        spec = dft_forward(buf, axis=1)[:, :n_freq]
        residual = max(residual, float(np.abs(spec.imag).max()))
        values[:, start:start + _BLOCK] = spec.real.T

    scale = max(1.0, float(np.abs(values).max()))
    if residual > IMAG_TOLERANCE * scale:
        raise ConsistencyError(f"WVD imaginary residual {residual:.3e} exceeds tolerance")
    # lags available at each frame before running off either end
    reach = np.minimum(centers, z.size - 1 - centers)
    support = 2 * np.minimum(reach, max_lag) + 1
    meta = {
        "imag_residual": residual,
        "marginal_scale": n_fft,
        "max_lag": max_lag,
        "upsample": bool(upsample),
        "lag_support": support,
        "full_support": support == 2 * max_lag + 1,
    }
    freqs = np.arange(n_freq) * fs / (2 * n_freq)
    return TFGrid(values, sig.times, freqs, TransformKind.WVD, meta=meta)


def gaussian_kernel(length, sigma=None):
    """Symmetric unit-sum Gaussian of odd ``length``; ``sigma`` defaults to length/6."""
    length = int(length)
    if length < 1 or length % 2 == 0:
        raise InvalidParameterError(f"kernel length must be odd and >= 1, got {length}")
    if length == 1:
        return np.ones(1)
    sigma = length / 6.0 if sigma is None else float(sigma)
    k = np.arange(length) - length // 2
    g = np.exp(-0.5 * (k / sigma) ** 2)
    return g / g.sum()


@dataclass(frozen=True, eq=False)
class SmoothingKernel:
    """Separable smoothing: ``time`` acts along frames, ``freq`` along bins."""

    time: np.ndarray
    freq: np.ndarray

    def __post_init__(self):
        for name in ("time", "freq"):
            k = np.asarray(getattr(self, name), dtype=np.float64).reshape(-1)
            if k.size < 1 or k.size % 2 == 0:
                raise InvalidParameterError(f"{name} kernel must have odd length, got {k.size}")
            if np.any(k < 0):
                raise InvalidParameterError(f"{name} kernel must be nonnegative")
            if not np.allclose(k, k[::-1], rtol=0, atol=1e-12):
                raise InvalidParameterError(f"{name} kernel must be symmetric")
            if abs(k.sum() - 1.0) > 1e-12:
                raise InvalidParameterError(f"{name} kernel must sum to 1, sums to {k.sum()}")
            object.__setattr__(self, name, k)

    @classmethod
    def identity(cls):
        return cls(np.ones(1), np.ones(1))


def _odd(v):
    v = max(1, int(round(v)))
    return v if v % 2 else v + 1


def default_kernel(n_time, n_freq=None, freq_length=3) -> SmoothingKernel:
    """Gaussian kernels: time length ~ n_time/10, frequency length ``freq_length`` bins.

    Both use ``sigma = length / 6``. The frequency kernel is sized in bins
    of the WVD grid: a tone ridge in the WVD can be a single bin wide, and
    any wider frequency kernel costs an on-bin tone more than 6 dB of peak.
    Cross terms between tones oscillate in time, so the time kernel does
    most of the suppressing.
    """
    return SmoothingKernel(gaussian_kernel(_odd(n_time / 10)), gaussian_kernel(_odd(freq_length)))


def spwvd(x, kernel: SmoothingKernel | None = None, **wvd_kwargs) -> TFGrid:
    """Smoothed pseudo Wigner-Ville distribution.

    The WVD of ``x`` convolved with ``kernel.time`` along time and
    ``kernel.freq`` along frequency, with symmetric (mirror) boundaries.
    ``x`` may also be a precomputed WVD grid.
    """
    base = x if isinstance(x, TFGrid) else wvd(x, **wvd_kwargs)
    n_freq, n_time = base.values.shape
    if kernel is None:
        kernel = default_kernel(n_time, n_freq)
    if kernel.time.size > n_time or kernel.freq.size > n_freq:
        raise InvalidParameterError(
            f"kernel sizes ({kernel.time.size}, {kernel.freq.size}) exceed the grid "
            f"({n_time} frames, {n_freq} bins)"
        )
    out = convolve1d(base.values, kernel.time, axis=1, mode="reflect")
    out = convolve1d(out, kernel.freq, axis=0, mode="reflect")
    meta = dict(base.meta, time_kernel=kernel.time.size, freq_kernel=kernel.freq.size)
    return TFGrid(out, base.time_axis.copy(), base.freq_axis.copy(), TransformKind.SPWVD,
                  meta=meta)


@dataclass(frozen=True)
class CrossTermReport:
    f1: float
    f2: float
    midpoint_freq: float | None
    auto_peak_1: float
    auto_peak_2: float
    cross_peak: float
    oscillation_rate: float | None
    found: bool

    @property
    def cross_to_auto(self):
        mean_auto = 0.5 * (self.auto_peak_1 + self.auto_peak_2)
        return self.cross_peak / mean_auto if mean_auto > 0 else math.inf

    def as_dict(self):
        d = dict(self.__dict__)
        d["cross_to_auto"] = self.cross_to_auto
        return d


def _nearest(axis, value):
    return int(np.argmin(np.abs(axis - value)))


def _dominant_rate(series, dt):
    """Frequency (Hz) of the strongest oscillation in ``series``, refined by parabola."""
    s = series - series.mean()
    w = np.hanning(s.size)
    n = 1 << int(math.ceil(math.log2(8 * s.size)))
    mag = np.abs(np.fft.rfft(s * w, n=n))
    mag[0] = 0.0
    k = int(np.argmax(mag))
    shift = 0.0
    if 0 < k < mag.size - 1:
        a, b, c = np.log(mag[k - 1:k + 2] + 1e-300)
        denom = a - 2 * b + c
        if denom != 0:
            shift = 0.5 * (a - c) / denom
    return (k + shift) / (n * dt)


def cross_term_report(grid: TFGrid, f1, f2, interior=0.25, threshold=0.1) -> CrossTermReport:
    """Measure auto terms at ``f1``, ``f2`` and the cross term between them.

    Peaks are maxima of ``|values|`` over the interior frames (``interior``
    is the fraction trimmed from each end). The cross-term ridge is the
    strongest bin within ``(f2 - f1)/8`` of
    ``(f1 + f2)/2``; it counts as found when its peak reaches ``threshold``
    times the mean auto peak. The oscillation rate is the dominant
    frequency of the signed ridge over time.
    """
    if not f1 < f2:
        raise InvalidParameterError(f"need f1 < f2, got {f1}, {f2}")
    freqs, times = grid.freq_axis, grid.time_axis
    n_time = times.size
    lo = int(math.floor(interior * n_time))
    hi = max(lo + 1, n_time - lo)
    vals = grid.values[:, lo:hi]
    mag = np.abs(vals)
    df = freqs[1] - freqs[0] if freqs.size > 1 else 1.0
    tol = max(1, int(round((f2 - f1) / (8 * df))))

    def band_peak(f):
        k = _nearest(freqs, f)
        sl = slice(max(0, k - 1), k + 2)
        return float(mag[sl].max())

    auto1, auto2 = band_peak(f1), band_peak(f2)
    mid = 0.5 * (f1 + f2)
    km = _nearest(freqs, mid)
    band = np.arange(max(0, km - tol), min(freqs.size, km + tol + 1))
    peaks = mag[band].max(axis=1)
    kc = int(band[np.argmax(peaks)])
    cross = float(peaks.max())
    found = cross >= threshold * 0.5 * (auto1 + auto2)
    if found:
        rate = float(_dominant_rate(vals[kc], times[1] - times[0])) if n_time > 2 else None
        return CrossTermReport(f1, f2, float(freqs[kc]), auto1, auto2, cross, rate, True)
    return CrossTermReport(f1, f2, None, auto1, auto2, float(mag[km].max()), None, False)
