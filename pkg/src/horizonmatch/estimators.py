"""Scikit-learn style estimator wrappers around the functional fitting API.

Each estimator takes a 1-d array (or single-column matrix, or a Series) in
``fit`` and exposes the fitted model through trailing-underscore attributes.
Hyperparameters are stored verbatim in ``__init__`` per sklearn convention;
validation happens in ``fit``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import arma, garch
from .optim import OptimSettings
from .series import CatchallConfig, Series

__all__ = ["Garch11", "Arima111", "TrendArma11", "as_series"]


def as_series(X) -> Series:
    """Coerce input into a Series: accepts Series, 1-d array, or (n, 1) matrix."""
    if isinstance(X, Series):
        return X
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d series, got shape {arr.shape}")
    return Series.from_values(arr)


class Garch11(BaseEstimator):
    """GARCH(1,1) estimator.

    Parameters
    ----------
    method : str
        "gaussian" for one-step likelihood matching, "catchall" for the
        m-horizon loss.
    m : int
        Horizon count for method="catchall".
    weights : sequence of float, optional
        Per-horizon weights; None means equal.
    settings : OptimSettings, optional
    init_variance : float, optional
        Override for sigma^2_{1|0}; defaults to the sample variance.
    """

    def __init__(self, method="gaussian", m=1, weights=None, settings=None, init_variance=None):
        self.method = method
        self.m = m
        self.weights = weights
        self.settings = settings
        self.init_variance = init_variance

    def _resolved_method(self):
        if self.method == "gaussian":
            return "gaussian"
        if self.method == "catchall":
            return CatchallConfig(self.m, None if self.weights is None else tuple(self.weights))
        raise ValueError(f"method must be 'gaussian' or 'catchall', got {self.method!r}")

    def fit(self, X, y=None):
        series = as_series(X)
        result = garch.fit(
            series,
            self._resolved_method(),
            settings=self.settings or OptimSettings(),
            init_variance=self.init_variance,
        )
        self.series_ = series
        self.params_ = result.params
        self.one_step_variances_ = result.one_step_variances
        self.loss_ = result.loss
        self.report_ = result.report
        return self

    def predict_variance(self, horizons: int = 1, t: Optional[int] = None) -> np.ndarray:
        """Variance forecasts for 1..horizons from origin t (default: last point)."""
        check_is_fitted(self, "params_")
        if t is None:
            t = len(self.series_) - 1
        return garch.multi_step_variances(
            self.series_, self.params_, t, horizons, init_variance=self.init_variance
        )


class _ArmaEstimator(BaseEstimator):
    kind = ""

    def fit(self, X, y=None):
        series = as_series(X)
        result = arma.fit(series, self.kind, self.m, settings=self.settings or OptimSettings())
        self.series_ = series
        self.model_ = result.model
        self.loss_ = result.loss
        self.report_ = result.report
        return self

    def predict(self, horizons: int = 1, t: Optional[int] = None) -> np.ndarray:
        """Predictive means for 1..horizons from origin t (default: last point)."""
        check_is_fitted(self, "model_")
        if t is None:
            t = len(self.series_) - 1
        return arma.forecast(self.series_, self.model_, t, horizons).means

    def forecast_path(self, horizons: int = 1, t: Optional[int] = None) -> arma.ForecastPath:
        check_is_fitted(self, "model_")
        if t is None:
            t = len(self.series_) - 1
        return arma.forecast(self.series_, self.model_, t, horizons)

    def residuals(self) -> np.ndarray:
        check_is_fitted(self, "model_")
        return arma.cls_residuals(self.series_, self.model_)


class Arima111(_ArmaEstimator):
    """ARIMA(1,1,1) estimator fit by the m-horizon matching loss (m=1 is CLS)."""

    kind = "arima111"

    def __init__(self, m=1, settings=None):
        self.m = m
        self.settings = settings


class TrendArma11(_ArmaEstimator):
    """Linear trend plus ARMA(1,1) noise, all four parameters fit jointly."""

    kind = "trend-arma11"

    def __init__(self, m=1, settings=None):
        self.m = m
        self.settings = settings
