"""One entry point from (signal, method name, options) to a power/real TFGrid.

Shared by the CLI, the gallery and the estimator wrappers so that all three
produce exactly what the underlying library calls produce.
"""

from __future__ import annotations

from .errors import InvalidParameterError
from .grid import TFGrid, TransformKind
from .linear import gabor, make_window, spectrogram, stft
from .multiscale import MorletParams, ScaleGrid, cwt, scalogram, stockwell
from .quadratic import SmoothingKernel, default_kernel, gaussian_kernel, spwvd, wvd

__all__ = ["METHODS", "run_transform"]

METHODS = ("stft", "gabor", "cwt", "stockwell", "wvd", "spwvd")


def run_transform(signal, method, *, window="gaussian", window_length=None, alpha=None,
                  hop=1, nfft=None, f_c=1.0, morlet_alpha=0.5, f_min=None, f_max=None,
                  voices=12, f_lo=0.0, f_hi=None, boundary="periodic", n_freq=None,
                  upsample=True, time_kernel=None, freq_kernel=None) -> TFGrid:
    """Compute ``method`` on ``signal`` and return a real-valued grid.

    Complex transforms are reduced to squared magnitude (spectrogram,
    scalogram, ``|ST|^2``); WVD-family grids keep their sign. Unused
    options are ignored.
    """
    fs = signal.sample_rate
    if method == "gabor":
        if alpha is None:
            raise InvalidParameterError("gabor needs alpha")
        return gabor(signal, alpha, hop, nfft)
    if method == "stft":
        win = make_window(window, window_length, alpha, fs)
        return spectrogram(stft(signal, win, hop, nfft))
    if method == "cwt":
        params = MorletParams(f_c, morlet_alpha)
        lo = f_min if f_min is not None else 4.0 * fs / len(signal)
        hi = f_max if f_max is not None else 0.45 * fs
        return scalogram(cwt(signal, params, ScaleGrid.geometric(params, lo, hi, voices),
                             boundary))
    if method == "stockwell":
        return stockwell(signal, f_lo, f_hi, boundary).power(TransformKind.STOCKWELL)
    if method == "wvd":
        return wvd(signal, n_freq=n_freq, upsample=upsample)
    if method == "spwvd":
        base = wvd(signal, n_freq=n_freq, upsample=upsample)
        kernel = default_kernel(*reversed(base.shape))
        if time_kernel is not None or freq_kernel is not None:
            kernel = SmoothingKernel(
                gaussian_kernel(time_kernel) if time_kernel is not None else kernel.time,
                gaussian_kernel(freq_kernel) if freq_kernel is not None else kernel.freq,
            )
        return spwvd(base, kernel)
    raise InvalidParameterError(f"unknown method {method!r}; choose from {METHODS}")
