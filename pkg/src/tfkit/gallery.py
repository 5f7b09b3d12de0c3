"""Synthetic-signal gallery: every test signal through every transform.

Panels are independent, so they are computed on a thread pool whose size
is capped by the ``TFKIT_THREADS`` environment variable. Output bytes do
not depend on the number of workers.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .pipeline import run_transform
from .render import RenderSpec, render
from .signals import SignalSpec, mix, synthesize

__all__ = ["SAMPLE_RATE", "DURATION", "gallery_signals", "GALLERY_TRANSFORMS",
           "build_gallery", "worker_count"]

SAMPLE_RATE = 1000.0
DURATION = 1.024


def _spec(kind, **kw):
    return SignalSpec(kind, DURATION, SAMPLE_RATE, **kw)


def gallery_signals():
    """Name -> RealSignal for the synthetic set (sweeps, pulses, steps, bursts, mixtures)."""
    syn = synthesize
    return {
        "exemplary": mix([
            syn(_spec("tone", f_start=100.0)),
            syn(_spec("sine_burst", f_start=300.0, center_time=0.6, width=0.25)),
        ]),
        "chirp": syn(_spec("linear_chirp", f_start=20.0, f_end=450.0)),
        "pulses": mix([
            syn(_spec("gaussian_pulse", f_start=f, center_time=c, width=0.012))
            for f, c in ((100.0, 0.25), (250.0, 0.5), (400.0, 0.75))
        ]),
        "freq_step": syn(_spec("freq_step", step_times=(0.34, 0.68),
                               step_freqs=(100.0, 250.0, 400.0))),
        "sine_bursts": mix([
            syn(_spec("sine_burst", f_start=150.0, center_time=0.3, width=0.15)),
            syn(_spec("sine_burst", f_start=350.0, center_time=0.7, width=0.15)),
        ]),
        "two_tones": mix([syn(_spec("tone", f_start=f)) for f in (100.0, 300.0)]),
        "chirp_and_tone": mix([
            syn(_spec("linear_chirp", f_start=50.0, f_end=400.0)),
            syn(_spec("tone", f_start=250.0, amplitude=0.7)),
        ]),
        "noisy_tone": mix([
            syn(_spec("tone", f_start=200.0)),
            syn(_spec("white_noise", amplitude=0.3, seed=7)),
        ]),
    }


# method -> (transform options, render overrides)
GALLERY_TRANSFORMS = {
    "stft": (dict(alpha=1.0 / (2 * 0.016**2), hop=4, nfft=512), {}),
    "cwt": (dict(f_c=1.0, morlet_alpha=1.0 / (2 * 2.0**2), f_min=10.0, f_max=480.0,
                 voices=24), {"log_freq_axis": True}),
    "stockwell": (dict(), {}),
    "wvd": (dict(n_freq=512), {}),
    "spwvd": (dict(n_freq=512), {}),
}

_BASE_RENDER = RenderSpec(colormap="viridis", db_floor=-40.0, width=256, height=256)


def worker_count(default=None):
    env = os.environ.get("TFKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return default or min(8, os.cpu_count() or 1)


def _panel(job):
    name, signal, method, out_dir = job
    options, overrides = GALLERY_TRANSFORMS[method]
    grid = run_transform(signal, method, **options)
    spec = RenderSpec(**{**_BASE_RENDER.__dict__, **overrides})
    path = out_dir / f"{name}__{method}.ppm"
    render(grid, spec, path)
    return path


def build_gallery(out_dir, threads=None):
    """Render all (signal, transform) panels into ``out_dir``; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [(name, sig, method, out_dir)
            for name, sig in gallery_signals().items()
            for method in GALLERY_TRANSFORMS]
    with ThreadPoolExecutor(max_workers=threads or worker_count()) as pool:
        paths = list(pool.map(_panel, jobs))
    index = {"sample_rate": SAMPLE_RATE, "panels": [p.name for p in paths]}
    (out_dir / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    return paths
