"""Morlet continuous wavelet transform and the Stockwell transform.

Both transforms use circular (periodic) boundaries by default so that
their spectral identities hold exactly; ``boundary="zero"`` zero-pads the
signal instead and crops the result back to the input length.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len

from .engine import dft_forward, dft_inverse
from .errors import InvalidParameterError
from .grid import TFGrid, TransformKind
from .linear import TFTransform, _as_signal

__all__ = [
    "MorletParams",
    "ScaleGrid",
    "morlet_wavelet",
    "cwt",
    "scalogram",
    "stockwell",
    "BOUNDARIES",
]

BOUNDARIES = ("periodic", "zero")
MORLET_TRUNCATION = 4.0


@dataclass(frozen=True)
class MorletParams:
    """Morlet wavelet ``exp(-alpha t^2) exp(j 2 pi f_c t)``.

    ``f_c`` in Hz and ``alpha`` in 1/s^2 are those of the mother wavelet
    (scale 1). The default gives ``f_c * sigma = 1`` with
    ``sigma**2 = 1/(2 alpha)``, i.e. about one cycle per envelope sigma.
    """

    f_c: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        if not self.f_c > 0:
            raise InvalidParameterError(f"f_c must be positive, got {self.f_c}")
        if not self.alpha > 0:
            raise InvalidParameterError(f"alpha must be positive, got {self.alpha}")

    @property
    def sigma(self):
        return 1.0 / math.sqrt(2.0 * self.alpha)

    @classmethod
    def from_cycles(cls, cycles, f_c=1.0):
        """Params whose envelope sigma spans ``cycles`` periods of ``f_c``."""
        sigma = cycles / f_c
        return cls(f_c=f_c, alpha=1.0 / (2.0 * sigma**2))


@dataclass(frozen=True, eq=False)
class ScaleGrid:
    """Dilation factors, ordered so mapped frequency ``f_c / a`` increases."""

    scales: np.ndarray
    voices_per_octave: int
    f_min: float
    f_max: float

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "scales", scales)
        if scales.size and (np.any(scales <= 0) or np.any(np.diff(scales) >= 0)):
            raise InvalidParameterError("scales must be positive and strictly decreasing")

    def __len__(self):
        return self.scales.size

    def frequencies(self, params: MorletParams):
        return params.f_c / self.scales

    @classmethod
    def geometric(cls, params: MorletParams, f_min, f_max, voices_per_octave=12):
        """Geometric grid from ``f_min`` upward, ``voices_per_octave`` per octave.

        The top frequency is the last grid point not above ``f_max``.
        """
        if not 0 < f_min <= f_max:
            raise InvalidParameterError(f"need 0 < f_min <= f_max, got {f_min}, {f_max}")
        voices = int(voices_per_octave)
        if voices < 1:
            raise InvalidParameterError(f"voices_per_octave must be >= 1, got {voices}")
        n = int(math.floor(voices * math.log2(f_max / f_min) + 1e-9)) + 1
        freqs = f_min * 2.0 ** (np.arange(n) / voices)
        return cls(params.f_c / freqs, voices, float(f_min), float(f_max))


def morlet_wavelet(params: MorletParams, scale, sample_rate):
    """Samples of the dilated wavelet ``psi(t / a)`` on ``|t| <= 4 sigma a``.

    The returned sequence is centered: index ``len // 2`` is ``t = 0``.
    """
    if not scale > 0:
        raise InvalidParameterError(f"scale must be positive, got {scale}")
    half = int(math.floor(MORLET_TRUNCATION * params.sigma * scale * sample_rate + 1e-9))
    t = np.arange(-half, half + 1) / (sample_rate * scale)
    return np.exp(-params.alpha * t**2) * np.exp(2j * np.pi * params.f_c * t)


def _check_boundary(boundary):
    if boundary not in BOUNDARIES:
        raise InvalidParameterError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")


def cwt(x, params: MorletParams, grid: ScaleGrid, boundary="periodic",
        sample_rate=None) -> TFTransform:
    """Continuous wavelet transform over ``grid``.

    Row ``i`` holds ``(1/sqrt(a)) * sum_n x[n] conj(psi((n - b)/a))`` for
    every integer shift ``b``, with ``a = grid.scales[i]``. Rows are
    ordered by increasing frequency ``f_c / a``.
    """
    sig = _as_signal(x, sample_rate)
    _check_boundary(boundary)
    if len(grid) == 0:
        raise InvalidParameterError("scale grid is empty")
    fs = sig.sample_rate
    n = len(sig)
    longest = 2 * int(math.floor(MORLET_TRUNCATION * params.sigma * grid.scales.max() * fs)) + 1
    if longest > 4 * n:
        warnings.warn(
            f"wavelet support at the largest scale ({longest} samples) exceeds four "
            f"times the signal length ({n}); the transform is dominated by wrap-around",
            RuntimeWarning, stacklevel=2,
        )

    if boundary == "periodic":
        size = n
    else:
        size = next_fast_len(n + longest, real=False)
    spectrum = dft_forward(sig.samples, n=size)
    out = np.empty((len(grid), n), dtype=np.complex128)
    for i, a in enumerate(grid.scales):
        psi = morlet_wavelet(params, a, fs)
        half = psi.size // 2
        kernel = np.zeros(size, dtype=np.complex128)
        # place psi[k] at lag k (mod size); long wavelets fold onto themselves
        np.add.at(kernel, np.arange(-half, half + 1) % size, psi)
        row = dft_inverse(spectrum * np.conj(dft_forward(kernel)))
        out[i] = row[:n] / math.sqrt(a)
    meta = {"f_c": params.f_c, "alpha": params.alpha, "boundary": boundary,
            "scales": grid.scales.copy(), "voices_per_octave": grid.voices_per_octave}
    return TFTransform(out, sig.times, grid.frequencies(params), fs, "cwt", meta)


def scalogram(result: TFTransform, log_freq=True) -> TFGrid:
    """Squared CWT magnitude; ``log_freq`` records the preferred display axis."""
    grid = result.power(TransformKind.SCALOGRAM)
    grid.meta["log_freq"] = bool(log_freq)
    return grid


def stockwell(x, f_lo=0.0, f_hi=None, boundary="periodic", sample_rate=None) -> TFTransform:
    """Stockwell transform on the DFT bins inside ``[f_lo, f_hi]``.

    Computed in the frequency domain: for bin ``k`` the shifted spectrum
    ``X[m + k]`` is weighted by ``exp(-2 pi^2 m^2 / k^2)`` and inverse
    transformed over ``m``. The spectrum is scaled by ``1/N`` so the time
    average of every row equals ``dft_forward(x)[k] / N``; the ``k = 0``
    row is the signal mean.
    """
    sig = _as_signal(x, sample_rate)
    _check_boundary(boundary)
    fs = sig.sample_rate
    n = len(sig)
    if f_hi is None:
        f_hi = fs / 2
    if not 0 <= f_lo < f_hi <= fs / 2:
        raise InvalidParameterError(
            f"need 0 <= f_lo < f_hi <= fs/2 = {fs / 2}, got [{f_lo}, {f_hi}]"
        )
    size = n if boundary == "periodic" else next_fast_len(2 * n, real=False)
    samples = sig.samples
    spectrum = dft_forward(samples, n=size) / size
    freqs_all = np.arange(size) * fs / size
    bins = np.nonzero((freqs_all >= f_lo) & (freqs_all <= f_hi))[0]
    if bins.size == 0:
        raise InvalidParameterError(f"no DFT bin falls inside [{f_lo}, {f_hi}] Hz")

    m = np.fft.fftfreq(size, d=1.0 / size)  # signed bin offsets
    out = np.empty((bins.size, n), dtype=np.complex128)
    for i, k in enumerate(bins):
        if k == 0:
            out[i] = spectrum[0] * size / n  # mean of the original samples
            continue
        voice = np.exp(-2.0 * np.pi**2 * m**2 / k**2)
        shifted = np.roll(spectrum, -k)
        out[i] = dft_inverse(shifted * voice)[:n] * size
    meta = {"boundary": boundary, "bins": bins, "size": size}
    return TFTransform(out, sig.times, freqs_all[bins], fs, "stockwell", meta)
