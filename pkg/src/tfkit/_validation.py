"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .errors import InvalidParameterError


def check_signals(X, min_length=1):
    """Coerce ``X`` to a float64 ``(n_signals, n_samples)`` array.

    A single 1-D signal is promoted to one row. NaN/inf are rejected.
    """
    X = np.asarray(X) if not hasattr(X, "shape") else X
    if getattr(X, "ndim", 2) == 1:
        X = np.asarray(X)[None, :]
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_min_features=min_length)
    return X


def check_positive(name, value, integer=False):
    kind = numbers.Integral if integer else numbers.Real
    if not isinstance(value, kind) or isinstance(value, bool) or not value > 0:
        what = "positive integer" if integer else "positive number"
        raise InvalidParameterError(f"{name} must be a {what}, got {value!r}")
    return value


def check_choice(name, value, choices):
    if value not in choices:
        raise InvalidParameterError(f"{name} must be one of {tuple(choices)}, got {value!r}")
    return value
