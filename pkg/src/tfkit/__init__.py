"""tfkit: STFT/Gabor, Morlet CWT, Stockwell, Wigner-Ville and SPWVD transforms."""

__version__ = "0.1.0"

from .engine import ComplexSignal, RealSignal, analytic_signal, dft_forward, dft_inverse
from .errors import (
    ConsistencyError,
    DegenerateError,
    FormatError,
    IncompatibleSignalsError,
    InvalidLengthError,
    InvalidParameterError,
    InvalidSpecError,
    MissingParameterError,
    OutOfBandError,
    TFKitError,
)
from .grid import Scale, TFGrid, TransformKind, read_grid, to_db, write_grid
from .linear import (
    Window,
    gabor,
    make_window,
    spectrogram,
    stft,
    time_bandwidth_product,
)
from .multiscale import MorletParams, ScaleGrid, cwt, morlet_wavelet, scalogram, stockwell
from .quadratic import (
    LagGrid,
    SmoothingKernel,
    cross_term_report,
    default_kernel,
    instantaneous_autocorrelation,
    spwvd,
    wvd,
)
from .render import RenderSpec, render
from .signals import SignalSpec, load_signal, mix, save_signal, synthesize

__all__ = [
    "ComplexSignal", "RealSignal", "analytic_signal", "dft_forward", "dft_inverse",
    "ConsistencyError", "DegenerateError", "FormatError", "IncompatibleSignalsError",
    "InvalidLengthError", "InvalidParameterError", "InvalidSpecError",
    "MissingParameterError", "OutOfBandError", "TFKitError",
    "Scale", "TFGrid", "TransformKind", "read_grid", "to_db", "write_grid",
    "Window", "gabor", "make_window", "spectrogram", "stft", "time_bandwidth_product",
    "MorletParams", "ScaleGrid", "cwt", "morlet_wavelet", "scalogram", "stockwell",
    "LagGrid", "SmoothingKernel", "cross_term_report", "default_kernel",
    "instantaneous_autocorrelation", "spwvd", "wvd",
    "RenderSpec", "render",
    "SignalSpec", "load_signal", "mix", "save_signal", "synthesize",
]
