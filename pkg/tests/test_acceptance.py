"""Acceptance criteria 1-13. Each test prints one PASS/FAIL line."""

import contextlib
import math
import time

import numpy as np
import pytest

import oracles
from tfkit import (
    MorletParams,
    ScaleGrid,
    SmoothingKernel,
    TFGrid,
    analytic_signal,
    cross_term_report,
    cwt,
    dft_forward,
    dft_inverse,
    gabor,
    instantaneous_autocorrelation,
    make_window,
    read_grid,
    spectrogram,
    spwvd,
    stft,
    stockwell,
    time_bandwidth_product,
    wvd,
    write_grid,
)
from tfkit.engine import RealSignal
from tfkit.gallery import build_gallery
from tfkit.grid import Scale, TransformKind
from tfkit.linear import UNCERTAINTY_BOUND, Window, WindowKind
from tfkit.measure import half_power_width, rms_spread


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\nAC{number:>2} FAIL  {title}")
            raise
        with capsys.disabled():
            print(f"\nAC{number:>2} PASS  {title}")
    return run


def _tone(f, n, fs, phase=0.0, amp=1.0):
    return RealSignal(amp * np.cos(2 * np.pi * f * np.arange(n) / fs + phase), fs)


# 1 -------------------------------------------------------------------------

def test_ac01_dft_oracle(criterion):
    rng = np.random.default_rng(1)
    primes = [17, 31, 127, 251, 509, 1009, 1021]
    lengths = primes + [16, 64, 100, 256, 360, 1000, 1024]
    lengths += list(rng.integers(16, 1025, size=100 - len(lengths)))
    with criterion(1, "DFT vs direct summation (100 signals, primes included)"):
        start = time.perf_counter()
        for n in lengths:
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            X = dft_forward(x)
            assert np.max(np.abs(X - oracles.direct_dft(x))) < 1e-9, n
            assert np.max(np.abs(dft_inverse(X) - x)) < 1e-12, n
        assert time.perf_counter() - start < 10.0


# 2 -------------------------------------------------------------------------

@pytest.mark.parametrize("n", [64, 255, 1000, 1023])
def test_ac02_analytic_signal(criterion, n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n)
    with criterion(2, f"analytic signal, N={n}"):
        z = analytic_signal(x).samples
        Z = oracles.direct_dft(z)
        negative = Z[n // 2 + 1:]
        assert np.max(np.abs(negative)) < 1e-9
        assert np.max(np.abs(z.real - x)) < 1e-9


# 3 -------------------------------------------------------------------------

def test_ac03_gabor_is_gaussian_stft(criterion):
    rng = np.random.default_rng(3)
    with criterion(3, "Gabor == STFT with Gaussian window, bit-identical (20 sets)"):
        for _ in range(20):
            fs = float(rng.choice([100.0, 1000.0, 8000.0]))
            n = int(rng.integers(64, 2048))
            sigma = float(rng.uniform(2, 60)) / fs
            alpha = 1.0 / (2 * sigma**2)
            hop = int(rng.integers(1, 16))
            win = make_window("gaussian", alpha=alpha, sample_rate=fs)
            nfft = int(win.length + rng.integers(0, 64))
            x = RealSignal(rng.standard_normal(n), fs)
            a = gabor(x, alpha, hop=hop, nfft=nfft)
            b = spectrogram(stft(x, win, hop=hop, nfft=nfft))
            assert a.same_as(b)


# 4 -------------------------------------------------------------------------

def _window_suite(rng):
    for _ in range(10):
        sigma = rng.uniform(1.5, 40.0)
        yield make_window("gaussian", alpha=1.0 / (2 * sigma**2))
    for _ in range(10):
        yield make_window("hann", int(rng.integers(4, 400)))
    for _ in range(10):
        yield make_window("rectangular", int(rng.integers(2, 400)))
    for _ in range(10):
        L = int(rng.integers(8, 200))
        yield Window(WindowKind.RECTANGULAR, rng.uniform(0.05, 1.0, L))


def test_ac04_uncertainty(criterion):
    rng = np.random.default_rng(4)
    with criterion(4, "time-bandwidth >= 1/(4 pi); Gaussian attains it within 2%"):
        for w in _window_suite(rng):
            assert time_bandwidth_product(w) >= UNCERTAINTY_BOUND - 1e-6
        for sigma_s in (0.002, 0.01, 0.05):
            w = make_window("gaussian", alpha=1 / (2 * sigma_s**2), sample_rate=1000.0)
            ratio = time_bandwidth_product(w) / UNCERTAINTY_BOUND
            assert abs(ratio - 1.0) < 0.02


# 5 -------------------------------------------------------------------------

def test_ac05_stft_tradeoff(criterion):
    fs, n = 1000.0, 4096
    sigmas = (0.016, 0.032)
    tone = _tone(123.0, n, fs)
    impulse = np.zeros(n)
    impulse[n // 2] = 1.0
    impulse = RealSignal(impulse, fs)
    freq_widths, time_widths, lengths = [], [], []
    for s in sigmas:
        win = make_window("gaussian", alpha=1 / (2 * s**2), sample_rate=fs)
        lengths.append(win.length)
        g = spectrogram(stft(tone, win, hop=8, nfft=8192))
        freq_widths.append(half_power_width(g.values[:, g.values.shape[1] // 2], g.freq_axis))
        g = spectrogram(stft(impulse, win, hop=1, nfft=win.length))
        k = int(np.argmin(np.abs(g.freq_axis - 123.0)))
        time_widths.append(half_power_width(g.values[k], g.time_axis))
    with criterion(5, "doubling Gaussian length halves freq width, doubles time spread"):
        assert abs(lengths[1] / lengths[0] - 2.0) < 0.02
        assert abs(freq_widths[0] / freq_widths[1] - 2.0) < 0.2
        assert abs(time_widths[1] / time_widths[0] - 2.0) < 0.3


# 6 -------------------------------------------------------------------------

def test_ac06_cwt_multiscale(criterion):
    fs, n = 1000.0, 4096
    f1, f2 = 40.0, 160.0
    params = MorletParams.from_cycles(2.0)
    grid = ScaleGrid.geometric(params, 10.0, 400.0, 48)
    freqs = grid.frequencies(params)
    x = RealSignal(_tone(f1, n, fs).samples + _tone(f2, n, fs).samples, fs)
    power = np.abs(cwt(x, params, grid).values) ** 2
    column = power[:, n // 2]
    lo_band = freqs < np.sqrt(f1 * f2)
    fw1 = half_power_width(np.where(lo_band, column, 0), freqs)
    fw2 = half_power_width(np.where(lo_band, 0, column), freqs)

    impulse = np.zeros(n)
    impulse[n // 2] = 1.0
    power = np.abs(cwt(RealSignal(impulse, fs), params, grid).values) ** 2
    times = np.arange(n) / fs
    tw1 = half_power_width(power[np.argmin(np.abs(freqs - f1))], times)
    tw2 = half_power_width(power[np.argmin(np.abs(freqs - f2))], times)
    with criterion(6, f"CWT: freq width ratio {fw2 / fw1:.2f}, time width ratio {tw1 / tw2:.2f}"):
        assert fw2 / fw1 > 1.5
        assert tw1 / tw2 > 1.5


# 7 -------------------------------------------------------------------------

def test_ac07_cwt_ridge(criterion):
    rng = np.random.default_rng(7)
    fs, n = 1000.0, 4096
    params = MorletParams.from_cycles(5.5)
    grid = ScaleGrid.geometric(params, 20.0, 200.0, 12)
    freqs = grid.frequencies(params)
    failures = []
    for _ in range(50):
        f0 = float(rng.uniform(grid.f_min, freqs[-1]))
        x = _tone(f0, n, fs, phase=float(rng.uniform(0, 2 * np.pi)))
        power = np.abs(cwt(x, params, grid).values) ** 2
        found = int(np.argmax(power[:, n // 4:3 * n // 4].mean(axis=1)))
        expected = int(np.argmin(np.abs(np.log(grid.scales) - np.log(params.f_c / f0))))
        if found != expected:
            failures.append(f0)
    with criterion(7, f"CWT ridge at nearest scale, 50 trials, {len(failures)} failures"):
        assert not failures


# 8 -------------------------------------------------------------------------

def test_ac08_stockwell(criterion):
    rng = np.random.default_rng(8)
    with criterion(8, "Stockwell time average == Fourier spectrum; sigma_t * f constant"):
        for n in (64, 101, 512, 1000):
            x = rng.standard_normal(n)
            st = stockwell(x)
            expected = oracles.direct_dft(x)[st.meta["bins"]] / n
            assert np.max(np.abs(st.values.mean(axis=1) - expected)) < 1e-9

        fs, n = 1000.0, 2048
        impulse = np.zeros(n)
        impulse[n // 2] = 1.0
        st = stockwell(RealSignal(impulse, fs), f_lo=15.0, f_hi=250.0)
        products = []
        for f in (20.0, 40.0, 80.0, 120.0, 200.0):
            k = int(np.argmin(np.abs(st.freq_axis - f)))
            spread = rms_spread(np.abs(st.values[k]) ** 2, st.time_axis)
            products.append(spread * st.freq_axis[k])
        products = np.array(products)
        assert np.max(np.abs(products / products.mean() - 1)) < 0.05


# 9 -------------------------------------------------------------------------

def test_ac09_wvd(criterion):
    rng = np.random.default_rng(9)
    fs, n = 1000.0, 1024
    with criterion(9, "WVD real, tone concentration >= 99%, chirp ridge <= 1 bin"):
        for _ in range(5):
            g = wvd(rng.standard_normal(n), sample_rate=fs)
            assert g.meta["imag_residual"] < 1e-9

        k0 = 100
        g = wvd(_tone(k0 * fs / n, n, fs), n_freq=n // 2)
        cols = g.values[:, g.meta["full_support"]] ** 2
        near = cols[k0 - 1:k0 + 2].sum(axis=0) / cols.sum(axis=0)
        assert near.min() >= 0.99

        f0, f1 = 50.0, 400.0
        t = np.arange(n) / fs
        duration = n / fs
        x = np.cos(2 * np.pi * (f0 * t + (f1 - f0) / (2 * duration) * t**2))
        g = wvd(RealSignal(x, fs))
        df = g.freq_axis[1]
        inst = f0 + (f1 - f0) * t / duration
        interior = slice(n // 8, n - n // 8)
        ridge = g.freq_axis[np.argmax(g.values, axis=0)]
        assert np.max(np.abs(ridge - inst)[interior]) <= df

        mid = n // 2
        wvd_width = half_power_width(np.maximum(g.values[:, mid], 0), g.freq_axis)
        win = make_window("gaussian", alpha=1 / (2 * 0.016**2), sample_rate=fs)
        s = spectrogram(stft(RealSignal(x, fs), win, nfft=2 * n))
        stft_width = half_power_width(s.values[:, mid], s.freq_axis)
        assert wvd_width < stft_width


# 10 ------------------------------------------------------------------------

def _two_tones(fs=2000.0, n=2048):
    return RealSignal(_tone(100.0, n, fs).samples + _tone(300.0, n, fs).samples, fs)


def test_ac10_cross_terms(criterion):
    x = _two_tones()
    g = wvd(x, n_freq=1000)
    rep = cross_term_report(g, 100.0, 300.0)
    df = g.freq_axis[1]
    with criterion(10, f"cross term at {rep.midpoint_freq} Hz, ratio {rep.cross_to_auto:.3f}, "
                       f"rate {rep.oscillation_rate:.2f} Hz"):
        assert rep.found
        assert abs(rep.midpoint_freq - 200.0) <= df
        assert abs(rep.cross_to_auto - 2.0) <= 0.2
        assert abs(rep.oscillation_rate - 200.0) <= 10.0


# 11 ------------------------------------------------------------------------

def test_ac11_spwvd(criterion):
    x = _two_tones()
    g = wvd(x, n_freq=1000)
    s = spwvd(g)
    before = cross_term_report(g, 100.0, 300.0)
    after = cross_term_report(s, 100.0, 300.0)
    cross_db = 20 * math.log10(after.cross_peak / before.cross_peak)
    auto_db = [20 * math.log10(a / b) for a, b in
               ((after.auto_peak_1, before.auto_peak_1), (after.auto_peak_2, before.auto_peak_2))]
    mid = g.values.shape[1] // 2
    band = g.freq_axis < 200.0
    w_before = half_power_width(np.where(band, g.values[:, mid], 0), g.freq_axis)
    w_after = half_power_width(np.where(band, s.values[:, mid], 0), s.freq_axis)
    identity = spwvd(x, SmoothingKernel.identity(), n_freq=1000)
    with criterion(11, f"SPWVD cross {cross_db:.1f} dB, autos {auto_db[0]:.2f}/{auto_db[1]:.2f} dB"):
        assert cross_db <= -20.0
        assert all(a > -6.0 for a in auto_db)
        assert w_after > w_before
        assert identity.values.tobytes() == g.values.tobytes()


# 12 ------------------------------------------------------------------------

def test_ac12_lag_acf(criterion):
    rng = np.random.default_rng(12)
    with criterion(12, "time-integrated lag products == direct ACF at lag 2m"):
        for n in (16, 33, 128):
            z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            lg = instantaneous_autocorrelation(z)
            integrated = lg.values.sum(axis=0)
            for j, m in enumerate(lg.lags):
                assert abs(integrated[j] - oracles.direct_acf(z, 2 * m)) < 1e-9


# 13 ------------------------------------------------------------------------

def test_ac13_roundtrip_and_gallery(criterion, tmp_path):
    rng = np.random.default_rng(13)
    path = tmp_path / "g.tfgrid"
    with criterion(13, "1000 grid round-trips; gallery byte-stable across two runs"):
        for _ in range(1000):
            nf, nt = (int(v) for v in rng.integers(1, 12, size=2))
            g = TFGrid(
                rng.standard_normal((nf, nt)) * 10.0 ** rng.integers(-300, 300),
                np.cumsum(rng.uniform(0.01, 1, nt)),
                np.cumsum(rng.uniform(0.01, 1, nf)),
                rng.choice(list(TransformKind)),
                rng.choice(list(Scale)),
            )
            write_grid(g, path)
            assert read_grid(path).same_as(g)

        first = build_gallery(tmp_path / "a", threads=4)
        second = build_gallery(tmp_path / "b", threads=1)
        assert len(first) >= 30
        for p, q in zip(first, second):
            assert p.name == q.name
            assert p.read_bytes() == q.read_bytes()
