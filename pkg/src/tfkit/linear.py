"""Windows, the short-time Fourier transform, spectrogram and Gabor transform."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .engine import ComplexSignal, RealSignal, dft_forward
from .errors import (
    DegenerateError,
    InvalidLengthError,
    InvalidParameterError,
    MissingParameterError,
)
from .grid import TFGrid, TransformKind

__all__ = [
    "WindowKind",
    "Window",
    "make_window",
    "gaussian_length",
    "TFTransform",
    "stft",
    "spectrogram",
    "gabor",
    "time_bandwidth_product",
    "UNCERTAINTY_BOUND",
]

#: Lower bound of the RMS time-bandwidth product, 1/(4*pi).
UNCERTAINTY_BOUND = 1.0 / (4.0 * math.pi)

# Gaussian windows are cut at +-4 sigma, without renormalization.
GAUSSIAN_TRUNCATION = 4.0


class WindowKind(str, enum.Enum):
    RECTANGULAR = "rectangular"
    HANN = "hann"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True, eq=False)
class Window:
    """Finite tapering sequence.

    ``coefficients[length // 2]`` is the window center; for a Gaussian it
    equals exactly 1. ``alpha`` (1/s^2) is set for Gaussian windows only.
    """

    kind: WindowKind
    coefficients: np.ndarray
    alpha: float | None = None
    sample_rate: float | None = None

    @property
    def length(self):
        return self.coefficients.size

    @property
    def center(self):
        return self.coefficients.size // 2


def gaussian_length(alpha, sample_rate):
    """Odd window length covering +-4 sigma, sigma**2 = 1/(2*alpha)."""
    sigma = 1.0 / math.sqrt(2.0 * alpha)
    half = int(math.floor(GAUSSIAN_TRUNCATION * sigma * sample_rate + 1e-9))
    return 2 * half + 1


def make_window(kind, length=None, alpha=None, sample_rate=1.0) -> Window:
    """Build a window.

    Parameters
    ----------
    kind : {"rectangular", "hann", "gaussian"}
    length : int, optional
        Sample count. Required except for Gaussian windows, which default to
        the odd length spanning +-4 sigma.
    alpha : float, optional
        Gaussian width parameter in 1/s^2; coefficients are
        ``exp(-alpha * t**2)`` with ``t`` in seconds from the center sample.
    sample_rate : float
        Hz; converts sample offsets to seconds for the Gaussian.
    """
    kind = WindowKind(kind)
    if kind is WindowKind.GAUSSIAN:
        if alpha is None:
            raise MissingParameterError("gaussian window needs alpha")
        if not alpha > 0:
            raise InvalidParameterError(f"alpha must be positive, got {alpha}")
        if length is None:
            length = gaussian_length(alpha, sample_rate)
    if length is None:
        raise MissingParameterError(f"{kind.value} window needs a length")
    length = int(length)
    if length < 1:
        raise InvalidLengthError(f"window length must be >= 1, got {length}")

    if kind is WindowKind.RECTANGULAR:
        coeffs = np.ones(length)
    elif kind is WindowKind.HANN:
        if length == 1:
            coeffs = np.ones(1)
        else:
            n = np.arange(length)
            coeffs = 0.5 - 0.5 * np.cos(2.0 * np.pi * n / (length - 1))
    else:
        t = (np.arange(length) - length // 2) / sample_rate
        coeffs = np.exp(-alpha * t**2)
    return Window(kind, coeffs, alpha if kind is WindowKind.GAUSSIAN else None, sample_rate)


@dataclass(eq=False)
class TFTransform:
    """Complex time-frequency coefficients, ``values[freq, time]``."""

    values: np.ndarray
    time_axis: np.ndarray
    freq_axis: np.ndarray
    sample_rate: float
    method: str
    meta: dict

    def power(self, kind=TransformKind.OTHER) -> TFGrid:
        mag2 = self.values.real**2 + self.values.imag**2
        return TFGrid(mag2, self.time_axis.copy(), self.freq_axis.copy(), kind,
                      meta=dict(self.meta))


def _as_signal(x, sample_rate=None):
    if isinstance(x, (RealSignal, ComplexSignal)):
        return x
    arr = np.asarray(x)
    fs = 1.0 if sample_rate is None else sample_rate
    if np.iscomplexobj(arr):
        return ComplexSignal(arr, fs)
    return RealSignal(arr, fs)


def stft(x, window: Window, hop=1, nfft=None) -> TFTransform:
    """Short-time Fourier transform.

    The signal is zero-padded by ``window.length // 2`` samples on each side,
    so frame ``m`` is centered on input sample ``m * hop``. Column ``m``
    is the ``nfft``-point DFT of the windowed frame (window conjugated).
    Real input yields the one-sided axis ``[0, fs/2]``, complex input the
    full ``[0, fs)``.
    """
    sig = _as_signal(x)
    hop = int(hop)
    if hop < 1:
        raise InvalidParameterError(f"hop must be >= 1, got {hop}")
    win = np.conj(window.coefficients)
    L = win.size
    nfft = L if nfft is None else int(nfft)
    if nfft < L:
        raise InvalidParameterError(f"nfft={nfft} is shorter than the window ({L})")

    fs = sig.sample_rate
    half = L // 2
    padded = np.concatenate([np.zeros(half), sig.samples, np.zeros(L - 1 - half)])
    n_frames = (padded.size - L) // hop + 1
    starts = np.arange(n_frames) * hop
    frames = padded[starts[:, None] + np.arange(L)[None, :]] * win[None, :]
    spec = dft_forward(frames, n=nfft, axis=1).T

    onesided = isinstance(sig, RealSignal)
    if onesided:
        spec = spec[: nfft // 2 + 1]
    freqs = np.arange(spec.shape[0]) * fs / nfft
    times = starts / fs
    meta = {"window": window.kind.value, "window_length": L, "hop": hop, "nfft": nfft,
            "onesided": onesided}
    if window.alpha is not None:
        meta["alpha"] = window.alpha
    return TFTransform(np.ascontiguousarray(spec), times, freqs, fs, "stft", meta)


def spectrogram(result: TFTransform) -> TFGrid:
    """Squared magnitude of an STFT."""
    return result.power(TransformKind.SPECTROGRAM)


def gabor(x, alpha, hop=1, nfft=None, sample_rate=None) -> TFGrid:
    """Spectrogram with the Gaussian window ``exp(-alpha t^2)``.

    Exactly ``spectrogram(stft(x, make_window("gaussian", alpha=alpha), ...))``.
    """
    sig = _as_signal(x, sample_rate)
    window = make_window(WindowKind.GAUSSIAN, alpha=alpha, sample_rate=sig.sample_rate)
    return spectrogram(stft(sig, window, hop, nfft))


def time_bandwidth_product(window: Window, sample_rate=None, pad_factor=64):
    """RMS duration times RMS bandwidth of a window.

    Duration is the standard deviation of ``|w(t)|^2`` (normalized to unit
    energy) over time in seconds; bandwidth is the standard deviation of the
    two-sided ``|W(f)|^2`` over ``[-fs/2, fs/2)``, from a DFT zero-padded to
    at least ``pad_factor`` times the window length.
    """
    fs = sample_rate or window.sample_rate or 1.0
    w = np.asarray(window.coefficients, dtype=np.complex128)
    energy_t = np.abs(w) ** 2
    total = energy_t.sum()
    if not total > 0:
        raise DegenerateError("window has zero energy")
    t = np.arange(w.size) / fs
    t_mean = (t * energy_t).sum() / total
    duration = math.sqrt(((t - t_mean) ** 2 * energy_t).sum() / total)

    n = 1 << int(math.ceil(math.log2(max(pad_factor * w.size, 1024))))
    energy_f = np.abs(np.fft.fftshift(dft_forward(w, n=n))) ** 2
    f = np.fft.fftshift(np.fft.fftfreq(n, d=1.0 / fs))
    f_total = energy_f.sum()
    f_mean = (f * energy_f).sum() / f_total
    bandwidth = math.sqrt(((f - f_mean) ** 2 * energy_f).sum() / f_total)
    return duration * bandwidth
