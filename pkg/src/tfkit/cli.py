"""Command line interface: ``tfkit gen | transform | render | gallery | report``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ConsistencyError, TFKitError
from .gallery import build_gallery
from .grid import read_grid, write_grid
from .pipeline import METHODS, run_transform
from .quadratic import cross_term_report
from .render import COLORMAPS, RenderSpec, render
from .signals import FORMATS, SignalKind, SignalSpec, load_signal, save_signal, synthesize

_SIGNAL_EXT = {".wav": "wav_pcm16_mono", ".f64": "raw_f64", ".raw": "raw_f64",
               ".bin": "raw_f64", ".csv": "csv"}


def _floats(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def _signal_format(path, explicit):
    if explicit:
        return explicit
    fmt = _SIGNAL_EXT.get(Path(path).suffix.lower())
    if fmt is None:
        raise TFKitError(f"cannot infer signal format from {path}; pass --format")
    return fmt


def _cmd_gen(args):
    spec = SignalSpec(
        kind=args.kind, duration=args.duration, sample_rate=args.sample_rate,
        f_start=args.f_start, f_end=args.f_end, center_time=args.center_time,
        width=args.width, step_times=args.step_times, step_freqs=args.step_freqs,
        amplitude=args.amplitude, seed=args.seed,
    )
    save_signal(synthesize(spec), args.out, _signal_format(args.out, args.format))


def _cmd_transform(args):
    fmt = _signal_format(args.input, args.input_format)
    signal = load_signal(args.input, fmt, args.sample_rate)
    grid = run_transform(
        signal, args.method, window=args.window, window_length=args.window_length,
        alpha=args.alpha, hop=args.hop, nfft=args.nfft, f_c=args.fc,
        morlet_alpha=args.morlet_alpha, f_min=args.f_min, f_max=args.f_max,
        voices=args.voices, f_lo=args.f_lo, f_hi=args.f_hi, boundary=args.boundary,
        n_freq=args.n_freq, upsample=not args.no_upsample,
        time_kernel=args.time_kernel, freq_kernel=args.freq_kernel,
    )
    out_fmt = args.format or ("csv" if Path(args.out).suffix.lower() == ".csv" else "tfgrid")
    write_grid(grid, args.out, out_fmt)


def _cmd_render(args):
    grid = read_grid(args.input)
    spec = RenderSpec(colormap=args.colormap, db_floor=args.db_floor,
                      normalize=args.normalize, log_freq_axis=args.log_freq,
                      width=args.width, height=args.height, mode=args.mode,
                      resample=args.resample)
    render(grid, spec, args.out)


def _cmd_gallery(args):
    paths = build_gallery(args.out, threads=args.threads)
    print(f"wrote {len(paths)} images to {args.out}")


def _cmd_report(args):
    grid = read_grid(args.input)
    report = cross_term_report(grid, args.f1, args.f2)
    print(json.dumps(report.as_dict(), sort_keys=True))


def build_parser():
    parser = argparse.ArgumentParser(prog="tfkit", description="Time-frequency analysis toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="synthesize a test signal")
    p.add_argument("--kind", required=True, choices=[k.value for k in SignalKind])
    p.add_argument("--duration", type=float, required=True)
    p.add_argument("--sample-rate", type=float, required=True)
    p.add_argument("--f-start", type=float, default=0.0)
    p.add_argument("--f-end", type=float)
    p.add_argument("--center-time", type=float)
    p.add_argument("--width", type=float)
    p.add_argument("--step-times", type=_floats, default=())
    p.add_argument("--step-freqs", type=_floats, default=())
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("transform", help="compute a time-frequency grid")
    p.add_argument("--input", required=True)
    p.add_argument("--input-format", choices=FORMATS)
    p.add_argument("--sample-rate", type=float, help="required for raw_f64 and csv input")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--window", default="gaussian", choices=["rectangular", "hann", "gaussian"])
    p.add_argument("--window-length", type=int)
    p.add_argument("--alpha", type=float, help="Gaussian window parameter, 1/s^2")
    p.add_argument("--hop", type=int, default=1)
    p.add_argument("--nfft", type=int)
    p.add_argument("--fc", type=float, default=1.0, help="Morlet center frequency, Hz")
    p.add_argument("--morlet-alpha", type=float, default=0.5)
    p.add_argument("--f-min", type=float)
    p.add_argument("--f-max", type=float)
    p.add_argument("--voices", type=int, default=12)
    p.add_argument("--f-lo", type=float, default=0.0)
    p.add_argument("--f-hi", type=float)
    p.add_argument("--boundary", default="periodic", choices=["periodic", "zero"])
    p.add_argument("--n-freq", type=int)
    p.add_argument("--no-upsample", action="store_true")
    p.add_argument("--time-kernel", type=int, help="SPWVD time kernel length (odd)")
    p.add_argument("--freq-kernel", type=int, help="SPWVD frequency kernel length (odd)")
    p.add_argument("--format", choices=["tfgrid", "csv"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("render", help="render a grid file as a PPM image")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--colormap", default="viridis", choices=sorted(COLORMAPS))
    p.add_argument("--db-floor", type=float, default=-120.0)
    p.add_argument("--normalize", default="max", choices=["max", "absolute"])
    p.add_argument("--mode", default="db", choices=["db", "linear", "signed"])
    p.add_argument("--resample", default="nearest", choices=["nearest", "box"])
    p.add_argument("--log-freq", action="store_true")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("gallery", help="render the synthetic-signal gallery")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=_cmd_gallery)

    p = sub.add_parser("report", help="cross-term report of a two-component grid (JSON)")
    p.add_argument("--input", required=True)
    p.add_argument("--f1", type=float, required=True)
    p.add_argument("--f2", type=float, required=True)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (TFKitError, ConsistencyError, OSError, TypeError) as exc:
        print(f"tfkit {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
