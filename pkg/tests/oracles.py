"""Brute-force references. Nothing here calls into tfkit's transform code."""

import math

import numpy as np


def direct_dft(x):
    """O(N^2) DFT by explicit summation."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    k = np.arange(n)
    phase = (np.outer(k, k) % n) * (-2.0 * np.pi / n)
    return np.exp(1j * phase) @ x


def direct_acf(z, lag):
    """sum_n z[n + lag] * conj(z[n])."""
    z = np.asarray(z, dtype=np.complex128)
    return sum(z[n + lag] * np.conj(z[n]) for n in range(z.size) if 0 <= n + lag < z.size)


def direct_stft_column(x, window, center, nfft):
    """Spectrum of the frame centered on ``center`` (window index L//2 on it)."""
    L = len(window)
    frame = np.zeros(L, dtype=np.complex128)
    for i in range(L):
        n = center - L // 2 + i
        if 0 <= n < len(x):
            frame[i] = x[n] * np.conj(window[i])
    return np.array([
        sum(frame[i] * np.exp(-2j * np.pi * k * i / nfft) for i in range(L))
        for k in range(nfft)
    ])


def direct_cwt_row(x, fs, f_c, alpha, scale):
    """(1/sqrt(a)) sum_n x[n] conj(psi((n - b)/(a fs))), circular in n - b."""
    n = len(x)
    sigma = 1.0 / math.sqrt(2 * alpha)
    half = int(math.floor(4 * sigma * scale * fs + 1e-9))
    out = np.zeros(n, dtype=np.complex128)
    for b in range(n):
        acc = 0j
        for k in range(-half, half + 1):
            t = k / (fs * scale)
            psi = math.exp(-alpha * t * t) * complex(math.cos(2 * math.pi * f_c * t),
                                                     math.sin(2 * math.pi * f_c * t))
            acc += x[(b + k) % n] * psi.conjugate()
        out[b] = acc / math.sqrt(scale)
    return out


def direct_stockwell_row(x, fs, f, wraps=12):
    """Riemann sum of the time-domain S-transform integral, periodic signal.

    ST(t, f) = sum_t1 x(t1) |f|/sqrt(2 pi) exp(-f^2 (t1 - t)^2 / 2) exp(-j 2 pi f t1) dt
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    t1 = np.arange(n) / fs
    out = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        w = np.zeros(n)
        for p in range(-wraps, wraps + 1):
            tau = t1 - j / fs + p * n / fs
            w += abs(f) / math.sqrt(2 * math.pi) * np.exp(-(f * tau) ** 2 / 2)
        out[j] = np.sum(x * w * np.exp(-2j * np.pi * f * t1)) / fs
    return out


def direct_wvd(z, n, freqs, lag_rate, max_lag):
    """W(n, f) = sum_m z[n+m] conj(z[n-m]) exp(-j 2 pi f (2m / lag_rate))."""
    z = np.asarray(z, dtype=np.complex128)
    vals = []
    for f in freqs:
        acc = 0j
        for m in range(-max_lag, max_lag + 1):
            if 0 <= n + m < z.size and 0 <= n - m < z.size:
                acc += z[n + m] * np.conj(z[n - m]) * np.exp(-2j * np.pi * f * 2 * m / lag_rate)
        vals.append(acc)
    return np.array(vals)
