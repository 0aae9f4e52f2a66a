"""Core domain types: time series container, horizon weights, optimizer report.

All types are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .exceptions import (
    NonFiniteValueError,
    NonMonotoneLabelsError,
    TooShortError,
)

Label = Union[int, str]

__all__ = [
    "Series",
    "validate_series",
    "CatchallConfig",
    "OptimizerReport",
    "SweepEntry",
    "SweepResult",
]


def _is_numeric(label) -> bool:
    return isinstance(label, (int, float, np.integer, np.floating)) and not isinstance(
        label, bool
    )


@dataclass(frozen=True)
class Series:
    """Univariate time series: ordered labels plus finite float values.

    Labels are opaque to the estimators (only order matters); they are kept
    for reporting. ``unit`` is free-text metadata, e.g. ``"percent log return"``.
    """

    labels: tuple
    values: np.ndarray
    unit: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64).copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))
        if values.ndim != 1 or len(self.labels) != values.shape[0]:
            raise ValueError("labels and values must be 1-d and equal length")
        if values.shape[0] < 2:
            raise TooShortError("series must contain at least 2 observations")
        finite = np.isfinite(values)
        if not finite.all():
            raise NonFiniteValueError(int(np.argmin(finite)))
        if all(_is_numeric(lab) for lab in self.labels):
            arr = np.asarray(self.labels, dtype=np.float64)
            if not (np.diff(arr) > 0).all():
                raise NonMonotoneLabelsError("numeric labels must be strictly increasing")

    def __len__(self) -> int:
        return self.values.shape[0]

    def items(self) -> list[tuple[Label, float]]:
        """The (label, value) pairs this series was built from."""
        return [(lab, float(v)) for lab, v in zip(self.labels, self.values)]

    @classmethod
    def from_values(cls, values, unit: str = "", labels=None) -> "Series":
        """Build a Series from bare values, defaulting to labels 0..n-1."""
        values = np.asarray(values, dtype=np.float64)
        if labels is None:
            labels = range(values.shape[0])
        return cls(tuple(labels), values, unit)


def validate_series(raw: Iterable[tuple[Label, float]], unit: str = "") -> Series:
    """Validate (label, value) pairs and return an immutable Series.

    Raises NonFiniteValueError, TooShortError or NonMonotoneLabelsError when
    an invariant is violated. Validating ``series.items()`` reproduces the
    series exactly.
    """
    pairs = list(raw)
    labels = tuple(lab for lab, _ in pairs)
    values = np.array([v for _, v in pairs], dtype=np.float64)
    return Series(labels, values, unit)


@dataclass(frozen=True)
class CatchallConfig:
    """Horizon-matching configuration: horizon count ``m`` and per-horizon weights.

    ``weights=None`` means equal weights, realized as the vector (1, 1, ..., 1);
    rescaling all weights by a positive constant rescales the loss but leaves
    its argmin unchanged, so the normalization is cosmetic.
    """

    m: int
    weights: tuple = None

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or isinstance(self.m, bool):
            raise ValueError("m must be an integer")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            object.__setattr__(self, "weights", w)
            if len(w) != self.m:
                raise ValueError(f"expected {self.m} weights, got {len(w)}")
            if not all(np.isfinite(x) and x > 0 for x in w):
                raise ValueError("weights must be finite and > 0")

    def weight_vector(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.m)
        return np.asarray(self.weights, dtype=np.float64)


@dataclass(frozen=True)
class OptimizerReport:
    """Outcome of one constrained minimization."""

    converged: bool
    iterations: int
    final_loss: float
    restarts_used: int
    # set when a fitted AR/MA coefficient sits essentially on the |coef|=1 boundary
    boundary_suspect: bool = False

    def __post_init__(self):
        if self.converged and not np.isfinite(self.final_loss):
            raise ValueError("final_loss must be finite when converged")


@dataclass(frozen=True)
class SweepEntry:
    """One step of a horizon sweep: horizon count, fitted model, loss, drift."""

    m: int
    model: object
    loss: float
    delta_from_m1: Mapping[str, float]
    report: OptimizerReport = None

    def params(self) -> dict[str, float]:
        return self.model.as_dict()


@dataclass(frozen=True)
class SweepResult:
    """Ordered trajectory of fits for m = 1..m_max."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("sweep result cannot be empty")
        if [e.m for e in entries] != list(range(1, len(entries) + 1)):
            raise ValueError("entries must be ordered by m starting at 1")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)
