"""Synthetic test signals and loaders for user recordings."""

from __future__ import annotations

import enum
import struct
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .engine import RealSignal
from .errors import (
    FormatError,
    IncompatibleSignalsError,
    InvalidSpecError,
    MissingParameterError,
    OutOfBandError,
)

__all__ = [
    "SignalKind",
    "SignalSpec",
    "synthesize",
    "mix",
    "load_signal",
    "save_signal",
    "FORMATS",
]

FORMATS = ("wav_pcm16_mono", "raw_f64", "csv")


class SignalKind(str, enum.Enum):
    TONE = "tone"
    LINEAR_CHIRP = "linear_chirp"
    GAUSSIAN_PULSE = "gaussian_pulse"
    FREQ_STEP = "freq_step"
    SINE_BURST = "sine_burst"
    WHITE_NOISE = "white_noise"


@dataclass(frozen=True)
class SignalSpec:
    """Parameters of one synthetic signal.

    ``step_freqs`` holds one frequency per segment of a ``freq_step``
    signal, so it is one longer than ``step_times``. ``width`` is the RMS
    width of the Gaussian envelope for pulses and the gate length for
    bursts.
    """

    kind: SignalKind
    duration: float
    sample_rate: float
    f_start: float = 0.0
    f_end: float | None = None
    center_time: float | None = None
    width: float | None = None
    step_times: tuple = ()
    step_freqs: tuple = ()
    amplitude: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", SignalKind(self.kind))
        object.__setattr__(self, "step_times", tuple(float(t) for t in self.step_times))
        object.__setattr__(self, "step_freqs", tuple(float(f) for f in self.step_freqs))
        if not self.duration > 0:
            raise InvalidSpecError(f"duration must be positive, got {self.duration}")
        if not self.sample_rate > 0:
            raise InvalidSpecError(f"sample_rate must be positive, got {self.sample_rate}")
        if round(self.duration * self.sample_rate) < 1:
            raise InvalidSpecError("duration * sample_rate rounds to zero samples")
        nyquist = self.sample_rate / 2
        for name, f in self._frequencies():
            if not 0 <= f <= nyquist:
                raise OutOfBandError(f"{name}={f} Hz outside [0, {nyquist}] Hz")

        kind = self.kind
        if kind in (SignalKind.GAUSSIAN_PULSE, SignalKind.SINE_BURST):
            if self.center_time is None or self.width is None:
                raise MissingParameterError(f"{kind.value} needs center_time and width")
            if not self.width > 0:
                raise InvalidSpecError(f"width must be positive, got {self.width}")
        if kind is SignalKind.FREQ_STEP:
            times = np.asarray(self.step_times)
            if len(self.step_freqs) != len(times) + 1:
                raise InvalidSpecError(
                    "freq_step needs len(step_freqs) == len(step_times) + 1, got "
                    f"{len(self.step_freqs)} and {len(times)}"
                )
            if times.size and (np.any(np.diff(times) <= 0) or times[0] < 0
                               or times[-1] > self.duration):
                raise InvalidSpecError("step_times must be strictly increasing inside [0, duration]")

    def _frequencies(self):
        yield "f_start", self.f_start
        if self.f_end is not None:
            yield "f_end", self.f_end
        for i, f in enumerate(self.step_freqs):
            yield f"step_freqs[{i}]", f

    @property
    def n_samples(self):
        return int(round(self.duration * self.sample_rate))


def _tone_phase(f, t):
    return 2.0 * np.pi * (f * t)


def _step_phase(spec, t):
    edges = np.concatenate(([0.0], spec.step_times, [np.inf]))
    freqs = np.asarray(spec.step_freqs)
    # accumulated cycles at the start of each segment keep the joins continuous
    lengths = np.diff(edges[:-1])
    start_cycles = np.concatenate(([0.0], np.cumsum(freqs[:-1] * lengths)))
    seg = np.searchsorted(edges, t, side="right") - 1
    seg = np.clip(seg, 0, freqs.size - 1)
    return 2.0 * np.pi * (start_cycles[seg] + freqs[seg] * (t - edges[seg]))


def synthesize(spec: SignalSpec) -> RealSignal:
    """Render ``spec`` into samples; identical specs give identical bits."""
    n = spec.n_samples
    fs = spec.sample_rate
    t = np.arange(n) / fs
    a = spec.amplitude
    kind = spec.kind

    if kind is SignalKind.TONE:
        x = a * np.cos(_tone_phase(spec.f_start, t))
    elif kind is SignalKind.LINEAR_CHIRP:
        f_end = spec.f_start if spec.f_end is None else spec.f_end
        rate = (f_end - spec.f_start) / (2.0 * spec.duration)
        x = a * np.cos(2.0 * np.pi * (spec.f_start * t + rate * t**2))
    elif kind is SignalKind.GAUSSIAN_PULSE:
        envelope = np.exp(-0.5 * ((t - spec.center_time) / spec.width) ** 2)
        x = a * envelope * np.cos(_tone_phase(spec.f_start, t))
    elif kind is SignalKind.SINE_BURST:
        gate = np.abs(t - spec.center_time) <= spec.width / 2
        x = np.where(gate, a * np.cos(_tone_phase(spec.f_start, t)), 0.0)
    elif kind is SignalKind.FREQ_STEP:
        x = a * np.cos(_step_phase(spec, t))
    elif kind is SignalKind.WHITE_NOISE:
        rng = np.random.default_rng(spec.seed)
        x = a * rng.standard_normal(n)
    else:  # pragma: no cover - enum is closed
        raise InvalidSpecError(f"unknown signal kind {kind!r}")
    return RealSignal(x, fs)


def mix(signals) -> RealSignal:
    """Pointwise sum, zero-padded to the longest input."""
    signals = list(signals)
    if not signals:
        raise IncompatibleSignalsError("cannot mix an empty list of signals")
    fs = signals[0].sample_rate
    for s in signals[1:]:
        if s.sample_rate != fs:
            raise IncompatibleSignalsError(
                f"sample rates differ: {fs} Hz vs {s.sample_rate} Hz"
            )
    out = np.zeros(max(len(s) for s in signals))
    for s in signals:
        out[: len(s)] += s.samples
    return RealSignal(out, fs)


def _read_wav(path):
    try:
        with wave.open(str(path), "rb") as fh:
            channels = fh.getnchannels()
            width = fh.getsampwidth()
            rate = fh.getframerate()
            comptype = fh.getcomptype()
            n_frames = fh.getnframes()
            raw = fh.readframes(n_frames)
    except (wave.Error, EOFError, struct.error) as exc:
        raise FormatError(f"{path}: malformed WAV file ({exc})") from exc
    if comptype != "NONE":
        raise FormatError(f"{path}: compressed WAV ({comptype}) is not supported")
    if channels != 1:
        raise FormatError(f"{path}: expected mono WAV, found {channels} channels")
    if width != 2:
        raise FormatError(f"{path}: expected 16-bit PCM, found {8 * width}-bit samples")
    if len(raw) != 2 * n_frames:
        raise FormatError(
            f"{path}: truncated data chunk ({len(raw)} of {2 * n_frames} bytes)"
        )
    if n_frames < 1:
        raise FormatError(f"{path}: WAV file holds no samples")
    pcm = np.frombuffer(raw, dtype="<i2")
    return RealSignal(pcm.astype(np.float64) / 32768.0, rate)


def _read_csv(path, sample_rate):
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                if lineno == 1 and not values:
                    continue  # header line
                raise FormatError(f"{path}:{lineno}: not a number: {text!r}") from None
    if not values:
        raise FormatError(f"{path}: no samples found")
    return RealSignal(np.array(values), sample_rate)


def load_signal(path, format="wav_pcm16_mono", sample_rate=None) -> RealSignal:
    """Read a recording.

    WAV files carry their own rate; raw float64 and CSV need ``sample_rate``.
    """
    path = Path(path)
    if format == "wav_pcm16_mono":
        return _read_wav(path)
    if format not in FORMATS:
        raise FormatError(f"unknown signal format {format!r}; choose from {FORMATS}")
    if sample_rate is None:
        raise MissingParameterError(f"format {format} needs an explicit sample_rate")
    if format == "raw_f64":
        data = path.read_bytes()
        if len(data) == 0 or len(data) % 8:
            raise FormatError(f"{path}: size {len(data)} is not a positive multiple of 8 bytes")
        return RealSignal(np.frombuffer(data, dtype="<f8").copy(), sample_rate)
    return _read_csv(path, sample_rate)


def save_signal(signal: RealSignal, path, format="wav_pcm16_mono"):
    """Write ``signal`` in one of :data:`FORMATS`.

    PCM output clips to the 16-bit range; raw and CSV are lossless.
    """
    path = Path(path)
    if format == "wav_pcm16_mono":
        rate = int(round(signal.sample_rate))
        if rate != signal.sample_rate:
            raise FormatError(f"WAV needs an integer sample rate, got {signal.sample_rate}")
        pcm = np.clip(np.round(signal.samples * 32768.0), -32768, 32767).astype("<i2")
        with wave.open(str(path), "wb") as fh:
            fh.setnchannels(1)
            fh.setsampwidth(2)
            fh.setframerate(rate)
            fh.writeframes(pcm.tobytes())
    elif format == "raw_f64":
        path.write_bytes(signal.samples.astype("<f8").tobytes())
    elif format == "csv":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("sample\n")
            for v in signal.samples:
                fh.write(f"{float(v)!r}\n")
    else:
        raise FormatError(f"unknown signal format {format!r}; choose from {FORMATS}")
