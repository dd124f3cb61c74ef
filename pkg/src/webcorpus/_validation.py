"""Input checks shared by the estimator wrappers."""
from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError

from .labels import LabelId, as_label


def check_texts(X) -> list[str]:
    """Coerce ``X`` to a list of strings.

    Accepts a sequence of str, a 1-d object/str array, or a single-column
    2-d array (the shape a ColumnTransformer hands over).
    """
    if isinstance(X, str):
        raise TypeError("expected a sequence of texts, got a single string")
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d sequence of texts, got shape {arr.shape}")
    out = []
    for i, x in enumerate(arr):
        if not isinstance(x, str):
            raise TypeError(f"element {i} is {type(x).__name__}, expected str")
        out.append(x)
    return out


def check_labels(y, n: int) -> list[LabelId]:
    labels = [as_label(v) for v in np.asarray(y, dtype=object).ravel()]
    if len(labels) != n:
        raise ValueError(f"X has {n} samples but y has {len(labels)}")
    return labels


def check_is_fitted(estimator, attr: str = "model_"):
    if getattr(estimator, attr, None) is None:
        raise NotFittedError(f"{type(estimator).__name__} is not fitted yet; call fit first")


def check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")
    return value
