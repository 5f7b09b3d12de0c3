import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tfkit import ComplexSignal, RealSignal, gabor, make_window, spectrogram, stft
from tfkit import time_bandwidth_product
from tfkit.errors import (
    DegenerateError,
    InvalidLengthError,
    InvalidParameterError,
    MissingParameterError,
)
from tfkit.grid import TransformKind
from tfkit.linear import UNCERTAINTY_BOUND, Window, WindowKind, gaussian_length


class TestWindows:
    def test_gaussian_center_and_default_length(self):
        w = make_window("gaussian", alpha=1 / (2 * 0.01**2), sample_rate=1000.0)
        assert w.length == 2 * 40 + 1 == gaussian_length(w.alpha, 1000.0)
        assert w.coefficients[w.center] == 1.0
        t = (np.arange(w.length) - w.center) / 1000.0
        np.testing.assert_allclose(w.coefficients, np.exp(-w.alpha * t**2))

    @pytest.mark.parametrize("length", [1, 2, 5, 64])
    def test_hann_symmetric(self, length):
        c = make_window("hann", length).coefficients
        np.testing.assert_allclose(c, c[::-1], atol=1e-15)
        assert c.max() <= 1.0

    def test_errors(self):
        with pytest.raises(MissingParameterError):
            make_window("gaussian")
        with pytest.raises(MissingParameterError):
            make_window("hann")
        with pytest.raises(InvalidLengthError):
            make_window("rectangular", 0)
        with pytest.raises(InvalidParameterError):
            make_window("gaussian", alpha=-1.0)
        with pytest.raises(ValueError):
            make_window("kaiser", 8)


class TestSTFT:
    @pytest.mark.parametrize("hop,nfft", [(1, None), (3, 16), (5, 20)])
    def test_columns_match_direct_frames(self, rng, hop, nfft):
        x = rng.standard_normal(40)
        w = make_window("hann", 9)
        res = stft(RealSignal(x, 1.0), w, hop=hop, nfft=nfft)
        n = nfft or 9
        for m in (0, 1, res.values.shape[1] // 2, res.values.shape[1] - 1):
            ref = oracles.direct_stft_column(x, w.coefficients, m * hop, n)
            np.testing.assert_allclose(res.values[:, m], ref[: n // 2 + 1], atol=1e-12)

    def test_frame_centers_and_axes(self, rng):
        x = RealSignal(rng.standard_normal(100), 50.0)
        res = stft(x, make_window("rectangular", 10), hop=4, nfft=32)
        np.testing.assert_allclose(res.time_axis, np.arange(25) * 4 / 50.0)
        np.testing.assert_allclose(res.freq_axis, np.arange(17) * 50.0 / 32)

    def test_complex_input_is_two_sided(self, rng):
        z = ComplexSignal(rng.standard_normal(30) + 1j * rng.standard_normal(30), 1.0)
        res = stft(z, make_window("hann", 8))
        assert res.values.shape[0] == 8
        assert res.meta["onesided"] is False

    def test_tone_peaks_at_its_bin(self):
        fs, n = 1000.0, 1000
        x = RealSignal(np.cos(2 * np.pi * 125 * np.arange(n) / fs), fs)
        g = spectrogram(stft(x, make_window("hann", 64), hop=16, nfft=256))
        assert g.kind is TransformKind.SPECTROGRAM
        peak = g.freq_axis[np.argmax(g.values[:, 20:-20], axis=0)]
        assert np.all(peak == 125.0)

    @pytest.mark.parametrize("kw", [dict(hop=0), dict(nfft=4)])
    def test_bad_parameters(self, kw):
        with pytest.raises(InvalidParameterError):
            stft(np.ones(32), make_window("hann", 8), **kw)

    @given(st.integers(1, 8), st.integers(4, 64))
    @settings(max_examples=30, deadline=None)
    def test_linearity(self, hop, length):
        rng = np.random.default_rng(hop * 100 + length)
        a, b = rng.standard_normal((2, 80))
        w = make_window("hann", length)
        lhs = stft(a + 2 * b, w, hop).values
        rhs = stft(a, w, hop).values + 2 * stft(b, w, hop).values
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_gabor_power_is_nonnegative(rng):
    g = gabor(RealSignal(rng.standard_normal(256), 100.0), alpha=200.0, hop=2)
    assert g.values.min() >= 0


class TestTimeBandwidth:
    @given(st.floats(1.5, 60.0))
    @settings(max_examples=40, deadline=None)
    def test_bound_property_gaussian(self, sigma):
        w = make_window("gaussian", alpha=1 / (2 * sigma**2))
        assert time_bandwidth_product(w) >= UNCERTAINTY_BOUND - 1e-6

    @given(st.integers(8, 120), st.integers(0, 2**31))
    @settings(max_examples=40, deadline=None)
    def test_bound_property_positive_tapers(self, length, seed):
        c = np.random.default_rng(seed).uniform(0.05, 1.0, length)
        assert time_bandwidth_product(Window(WindowKind.RECTANGULAR, c)) >= UNCERTAINTY_BOUND - 1e-6

    def test_rect_matches_direct_computation(self):
        L, n = 9, 1024
        w = make_window("rectangular", L)
        duration = math.sqrt((L**2 - 1) / 12)
        power = np.abs(np.fft.fftshift(oracles.direct_dft(np.r_[np.ones(L), np.zeros(n - L)]))) ** 2
        f = (np.arange(n) - n // 2) / n
        mean = (f * power).sum() / power.sum()
        bandwidth = math.sqrt(((f - mean) ** 2 * power).sum() / power.sum())
        assert time_bandwidth_product(w, pad_factor=1) == pytest.approx(duration * bandwidth, rel=1e-10)

    def test_rate_invariant(self):
        a = make_window("gaussian", alpha=1 / (2 * 0.02**2), sample_rate=1000.0)
        b = make_window("gaussian", alpha=1 / (2 * 20.0**2), sample_rate=1.0)
        assert time_bandwidth_product(a) == pytest.approx(time_bandwidth_product(b), rel=1e-9)

    def test_zero_window(self):
        with pytest.raises(DegenerateError):
            time_bandwidth_product(make_window("hann", 2))
