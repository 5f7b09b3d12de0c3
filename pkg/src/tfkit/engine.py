"""Discrete Fourier machinery and analytic-signal construction.

Conventions: the forward DFT is unnormalized, the inverse carries ``1/N``.
Bin ``k`` of an ``n``-point transform sits at ``k * fs / n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidLengthError, InvalidParameterError

__all__ = [
    "RealSignal",
    "ComplexSignal",
    "dft_forward",
    "dft_inverse",
    "analytic_signal",
]


def _check_rate(sample_rate):
    sample_rate = float(sample_rate)
    if not np.isfinite(sample_rate) or sample_rate <= 0:
        raise InvalidParameterError(f"sample_rate must be positive, got {sample_rate}")
    return sample_rate


@dataclass(frozen=True, eq=False)
class RealSignal:
    """Uniformly sampled real amplitude sequence."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if np.iscomplexobj(samples):
            raise TypeError("RealSignal requires real samples; use ComplexSignal")
        samples = np.ascontiguousarray(samples, dtype=np.float64).reshape(-1)
        if samples.size < 1:
            raise InvalidLengthError("signal must contain at least one sample")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self):
        return self.samples.size / self.sample_rate

    @property
    def times(self):
        return np.arange(self.samples.size) / self.sample_rate


@dataclass(frozen=True, eq=False)
class ComplexSignal:
    """Uniformly sampled complex amplitude sequence (e.g. an analytic signal)."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128).reshape(-1)
        if samples.size < 1:
            raise InvalidLengthError("signal must contain at least one sample")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self):
        return self.samples.size / self.sample_rate

    @property
    def times(self):
        return np.arange(self.samples.size) / self.sample_rate


def _buffer(x):
    if isinstance(x, (RealSignal, ComplexSignal)):
        return x.samples
    return np.asarray(x)


def dft_forward(x, n=None, axis=-1):
    """Unnormalized DFT of ``x`` along ``axis``.

    ``x`` is zero-padded or truncated to ``n`` points (default: its own
    length). Any length is supported exactly; numpy's pocketfft switches
    between mixed-radix and Bluestein internally.
    """
    buf = _buffer(x)
    if n is None:
        n = buf.shape[axis] if buf.ndim else 0
    n = int(n)
    if n < 1:
        raise InvalidLengthError(f"transform length must be >= 1, got {n}")
    return np.fft.fft(buf, n=n, axis=axis)


def dft_inverse(X, axis=-1):
    """Inverse of :func:`dft_forward` (carries the ``1/N`` factor)."""
    buf = np.asarray(X)
    if buf.ndim == 0 or buf.shape[axis] < 1:
        raise InvalidLengthError("inverse DFT of an empty spectrum")
    return np.fft.ifft(buf, axis=axis)


def analytic_signal(x, sample_rate=None):
    """Analytic counterpart of a real signal.

    Built in the frequency domain: positive-frequency bins doubled, negative
    ones zeroed, DC and (for even length) the Nyquist bin left unchanged.
    The real part of the result reproduces the input.

    Parameters
    ----------
    x : RealSignal or array_like
        Real input of length >= 2. Plain arrays need ``sample_rate``.
    sample_rate : float, optional
        Used only when ``x`` is a bare array.

    Returns
    -------
    ComplexSignal
    """
    if isinstance(x, RealSignal):
        samples, fs = x.samples, x.sample_rate
    else:
        samples = np.asarray(x)
        if np.iscomplexobj(samples):
            raise TypeError("analytic_signal expects a real-valued input")
        samples = samples.astype(np.float64).reshape(-1)
        fs = 1.0 if sample_rate is None else sample_rate
    n = samples.size
    if n < 2:
        raise InvalidLengthError(f"analytic signal needs at least 2 samples, got {n}")
    spectrum = dft_forward(samples)
    gain = np.zeros(n)
    gain[0] = 1.0
    if n % 2 == 0:
        gain[1 : n // 2] = 2.0
        gain[n // 2] = 1.0
    else:
        gain[1 : (n + 1) // 2] = 2.0
    z = dft_inverse(spectrum * gain)
    # the real part is the input by construction; pin it to remove round-off
    z = samples + 1j * z.imag
    return ComplexSignal(z, fs)
