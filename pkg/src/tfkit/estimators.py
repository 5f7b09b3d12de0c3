"""scikit-learn transformers wrapping the time-frequency transforms.

Each transformer maps a batch of equally long signals ``X`` of shape
``(n_signals, n_samples)`` to features. With ``flatten=True`` (default) the
output is ``(n_signals, n_freq * n_time)`` so it drops into a
:class:`~sklearn.pipeline.Pipeline`; otherwise ``(n_signals, n_freq, n_time)``.

The transforms are stateless: ``fit`` only validates parameters and records
the output axes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_choice, check_positive, check_signals
from .engine import RealSignal
from .pipeline import run_transform

__all__ = [
    "SpectrogramTransformer",
    "GaborTransformer",
    "ScalogramTransformer",
    "StockwellTransformer",
    "WignerVilleTransformer",
    "SPWVDTransformer",
]


class _TFTransformer(TransformerMixin, BaseEstimator):
    _method = None

    def _options(self):
        raise NotImplementedError

    def _check_params(self):
        check_positive("sample_rate", self.sample_rate)

    def _grid(self, row):
        return run_transform(RealSignal(row, self.sample_rate), self._method, **self._options())

    def fit(self, X, y=None):
        self._check_params()
        X = check_signals(X)
        self.n_features_in_ = X.shape[1]
        grid = self._grid(X[0])
        self.freq_axis_ = grid.freq_axis
        self.time_axis_ = grid.time_axis
        self.grid_shape_ = grid.shape
        return self

    def transform_grids(self, X):
        """Return one :class:`~tfkit.grid.TFGrid` per row of ``X``."""
        check_is_fitted(self, "grid_shape_")
        X = check_signals(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} samples per signal, fitted with {self.n_features_in_}"
            )
        return [self._grid(row) for row in X]

    def transform(self, X):
        grids = self.transform_grids(X)
        out = np.stack([g.values for g in grids])
        if self.flatten:
            out = out.reshape(out.shape[0], -1)
        return out


class SpectrogramTransformer(_TFTransformer):
    """Spectrogram with a rectangular, Hann or Gaussian window.

    Parameters
    ----------
    sample_rate : float
    window : {"rectangular", "hann", "gaussian"}
    window_length : int or None
        Required for rectangular/Hann; Gaussian defaults to +-4 sigma.
    alpha : float or None
        Gaussian parameter (1/s^2).
    hop, nfft : int
    flatten : bool
    """

    _method = "stft"

    def __init__(self, sample_rate=1.0, window="hann", window_length=256, alpha=None,
                 hop=64, nfft=None, flatten=True):
        self.sample_rate = sample_rate
        self.window = window
        self.window_length = window_length
        self.alpha = alpha
        self.hop = hop
        self.nfft = nfft
        self.flatten = flatten

    def _check_params(self):
        super()._check_params()
        check_choice("window", self.window, ("rectangular", "hann", "gaussian"))
        check_positive("hop", self.hop, integer=True)

    def _options(self):
        return dict(window=self.window, window_length=self.window_length, alpha=self.alpha,
                    hop=self.hop, nfft=self.nfft)


class GaborTransformer(_TFTransformer):
    """Gabor transform (Gaussian-window spectrogram)."""

    _method = "gabor"

    def __init__(self, sample_rate=1.0, alpha=1e-3, hop=16, nfft=None, flatten=True):
        self.sample_rate = sample_rate
        self.alpha = alpha
        self.hop = hop
        self.nfft = nfft
        self.flatten = flatten

    def _check_params(self):
        super()._check_params()
        check_positive("alpha", self.alpha)
        check_positive("hop", self.hop, integer=True)

    def _options(self):
        return dict(alpha=self.alpha, hop=self.hop, nfft=self.nfft)


class ScalogramTransformer(_TFTransformer):
    """Morlet scalogram on a geometric scale grid."""

    _method = "cwt"

    def __init__(self, sample_rate=1.0, f_c=1.0, morlet_alpha=0.5, f_min=None, f_max=None,
                 voices=12, boundary="periodic", flatten=True):
        self.sample_rate = sample_rate
        self.f_c = f_c
        self.morlet_alpha = morlet_alpha
        self.f_min = f_min
        self.f_max = f_max
        self.voices = voices
        self.boundary = boundary
        self.flatten = flatten

    def _check_params(self):
        super()._check_params()
        check_positive("f_c", self.f_c)
        check_positive("morlet_alpha", self.morlet_alpha)
        check_positive("voices", self.voices, integer=True)
        check_choice("boundary", self.boundary, ("periodic", "zero"))

    def _options(self):
        return dict(f_c=self.f_c, morlet_alpha=self.morlet_alpha, f_min=self.f_min,
                    f_max=self.f_max, voices=self.voices, boundary=self.boundary)


class StockwellTransformer(_TFTransformer):
    """Squared magnitude of the Stockwell transform."""

    _method = "stockwell"

    def __init__(self, sample_rate=1.0, f_lo=0.0, f_hi=None, boundary="periodic",
                 flatten=True):
        self.sample_rate = sample_rate
        self.f_lo = f_lo
        self.f_hi = f_hi
        self.boundary = boundary
        self.flatten = flatten

    def _check_params(self):
        super()._check_params()
        check_choice("boundary", self.boundary, ("periodic", "zero"))

    def _options(self):
        return dict(f_lo=self.f_lo, f_hi=self.f_hi, boundary=self.boundary)


class WignerVilleTransformer(_TFTransformer):
    """Wigner-Ville distribution (signed values)."""

    _method = "wvd"

    def __init__(self, sample_rate=1.0, n_freq=None, upsample=True, flatten=True):
        self.sample_rate = sample_rate
        self.n_freq = n_freq
        self.upsample = upsample
        self.flatten = flatten

    def _options(self):
        return dict(n_freq=self.n_freq, upsample=self.upsample)


class SPWVDTransformer(_TFTransformer):
    """Smoothed pseudo Wigner-Ville distribution with Gaussian kernels.

    ``time_kernel``/``freq_kernel`` are odd kernel lengths; ``None`` keeps
    the defaults of :func:`tfkit.quadratic.default_kernel`.
    """

    _method = "spwvd"

    def __init__(self, sample_rate=1.0, n_freq=None, upsample=True, time_kernel=None,
                 freq_kernel=None, flatten=True):
        self.sample_rate = sample_rate
        self.n_freq = n_freq
        self.upsample = upsample
        self.time_kernel = time_kernel
        self.freq_kernel = freq_kernel
        self.flatten = flatten

    def _options(self):
        return dict(n_freq=self.n_freq, upsample=self.upsample,
                    time_kernel=self.time_kernel, freq_kernel=self.freq_kernel)
