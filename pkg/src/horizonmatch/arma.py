"""ARIMA(1,1,1) and trend+ARMA(1,1) estimation by multi-horizon matching.

Two model kinds share the ARMA(1,1) core x_t = phi x_{t-1} + a_t + theta a_{t-1}
(plus convention on the MA side):

* Arima111: the core drives the first difference of the observed series.
* TrendArma11: the core drives deviations from a linear trend c0 + c1 t,
  with time t = 1..T.

Residuals come from a zero-initialized conditional-least-squares pass. The
multi-horizon loss scores forecast errors at horizons 1..m, weighted so the
innovation variance cancels; with m = 1 it is the plain CLS sum of squares.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy.signal import lfilter

from .exceptions import (
    HorizonOutOfRangeError,
    InsufficientHistoryError,
    NonFiniteObjectiveError,
    OptimizerDivergedError,
    SeriesTooShortError,
    TooShortError,
)
from .optim import OptimSettings, Transform, minimize
from .series import OptimizerReport, Series, SweepEntry, SweepResult

__all__ = [
    "Arima111Params",
    "TrendArma11Params",
    "ArmaModel",
    "ArmaFit",
    "PsiWeights",
    "ForecastPath",
    "Arima111Transform",
    "TrendArma11Transform",
    "cls_residuals",
    "psi_weights",
    "forecast",
    "harmonic_weights",
    "catchall_loss",
    "fit",
    "sweep",
    "BOUNDARY_THRESHOLD",
]

# fitted |phi| or |theta| beyond this marks the fit boundary-suspect
BOUNDARY_THRESHOLD = 0.9999

_UNIT_CAP = float(np.nextafter(1.0, 0.0))


def _check_coefficient(name: str, value: float) -> None:
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite")
    if not abs(value) < 1:
        raise ValueError(f"|{name}| must be < 1")


@dataclass(frozen=True)
class Arima111Params:
    """AR and MA coefficients of (1 - phi B)(1 - B) Y_t = (1 + theta B) a_t."""

    phi: float
    theta: float

    def __post_init__(self):
        _check_coefficient("phi", self.phi)
        _check_coefficient("theta", self.theta)

    kind = "arima111"

    def as_dict(self) -> dict[str, float]:
        return {"phi": self.phi, "theta": self.theta}


@dataclass(frozen=True)
class TrendArma11Params:
    """Linear trend c0 + c1 t with ARMA(1,1) noise x_t = phi x_{t-1} + a_t + theta a_{t-1}."""

    c0: float
    c1: float
    phi: float
    theta: float

    def __post_init__(self):
        for name in ("c0", "c1"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        _check_coefficient("phi", self.phi)
        _check_coefficient("theta", self.theta)

    kind = "trend-arma11"

    def as_dict(self) -> dict[str, float]:
        return {"c0": self.c0, "c1": self.c1, "phi": self.phi, "theta": self.theta}


ArmaModel = Union[Arima111Params, TrendArma11Params]


@dataclass(frozen=True)
class PsiWeights:
    """Impulse-response coefficients psi_0..psi_{count-1}; psi_0 is always 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.float64)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if c.ndim != 1 or c.shape[0] < 1:
            raise ValueError("coeffs must be a non-empty vector")
        if c[0] != 1.0:
            raise ValueError("psi_0 must equal 1")


@dataclass(frozen=True)
class ForecastPath:
    """Predictive means and variance ratios sigma^2_l / sigma^2_a for l = 1..m."""

    means: np.ndarray
    scaled_variances: np.ndarray

    def __post_init__(self):
        means = np.asarray(self.means, dtype=np.float64)
        sv = np.asarray(self.scaled_variances, dtype=np.float64)
        means.setflags(write=False)
        sv.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "scaled_variances", sv)
        if means.shape != sv.shape:
            raise ValueError("means and scaled_variances must have equal length")
        if not (sv[0] > 0 and (np.diff(sv) >= 0).all()):
            raise ValueError("scaled variances must be positive and non-decreasing")


class ArmaFit(NamedTuple):
    model: ArmaModel
    loss: float
    report: OptimizerReport


class Arima111Transform(Transform):
    """(phi, theta) to R^2 by atanh; inverse tanh keeps both inside (-1, 1)."""

    def forward(self, params: Arima111Params) -> np.ndarray:
        return np.array([np.arctanh(params.phi), np.arctanh(params.theta)])

    def inverse(self, vector: np.ndarray) -> Arima111Params:
        phi, theta = (_bounded_tanh(v) for v in vector)
        return Arima111Params(phi, theta)


class TrendArma11Transform(Transform):
    """(c0, c1) pass through unchanged; (phi, theta) via atanh/tanh."""

    def forward(self, params: TrendArma11Params) -> np.ndarray:
        return np.array(
            [params.c0, params.c1, np.arctanh(params.phi), np.arctanh(params.theta)]
        )

    def inverse(self, vector: np.ndarray) -> TrendArma11Params:
        c0, c1, u, v = vector
        return TrendArma11Params(float(c0), float(c1), _bounded_tanh(u), _bounded_tanh(v))


def _bounded_tanh(u: float) -> float:
    # tanh rounds to exactly 1.0 for u > ~19; clip back inside the open interval
    return float(np.clip(np.tanh(u), -_UNIT_CAP, _UNIT_CAP))


def _trend_times(n: int) -> np.ndarray:
    return np.arange(1, n + 1, dtype=np.float64)


def _working_values(series: Series, model: ArmaModel) -> np.ndarray:
    """Differenced (Arima111) or detrended (TrendArma11) series the ARMA core sees."""
    y = series.values
    if isinstance(model, Arima111Params):
        if y.shape[0] < 3:
            raise TooShortError("Arima111 needs at least 3 observations")
        return np.diff(y)
    if y.shape[0] < 2:
        raise TooShortError("TrendArma11 needs at least 2 observations")
    return y - model.c0 - model.c1 * _trend_times(y.shape[0])


def _residuals_from_working(x: np.ndarray, phi: float, theta: float) -> np.ndarray:
    a = np.empty_like(x)
    a[0] = 0.0
    if x.shape[0] > 1:
        a[1:] = lfilter([1.0, -phi], [1.0, theta], x[1:], zi=np.array([-phi * x[0]]))[0]
    return a


def cls_residuals(series: Series, model: ArmaModel) -> np.ndarray:
    """Conditional-least-squares residuals with a_1 = 0.

    The recursion a_t = x_t - phi x_{t-1} - theta a_{t-1} runs over the
    differenced (Arima111) or detrended (TrendArma11) series.
    """
    x = _working_values(series, model)
    return _residuals_from_working(x, model.phi, model.theta)


def psi_weights(model: ArmaModel, count: int) -> PsiWeights:
    """First ``count`` impulse-response coefficients of the model.

    The ARMA(1,1) core has psi_0 = 1, psi_1 = phi + theta, psi_j = phi psi_{j-1}.
    Arima111 integrates these (cumulative sums); TrendArma11 uses the core
    weights directly since the trend is deterministic.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    psi = np.empty(count)
    psi[0] = 1.0
    if count > 1:
        psi[1:] = (model.phi + model.theta) * model.phi ** np.arange(count - 1)
    if isinstance(model, Arima111Params):
        psi = np.cumsum(psi)
    return PsiWeights(psi)


def forecast(series: Series, model: ArmaModel, t: int, m: int) -> ForecastPath:
    """Predictive means and scaled variances for horizons 1..m from origin t.

    ``t`` indexes the observed series (0-based). Residuals come from the
    zero-initialized CLS pass over observations up to and including t. The
    ARMA core forecasts x_hat_{t+1|t} = phi x_t + theta a_t and then decays
    by phi; Arima111 accumulates the forecast differences onto Y_t, while
    TrendArma11 adds the trend line back.
    """
    if m < 1:
        raise HorizonOutOfRangeError("horizon count m must be >= 1")
    n = len(series)
    y = series.values
    horizons = np.arange(1, m + 1)
    if isinstance(model, Arima111Params):
        if not 1 <= t <= n - 1:
            raise InsufficientHistoryError(
                f"Arima111 origin must satisfy 1 <= t <= {n - 1}, got {t}"
            )
        d = np.diff(y[: t + 1])
        a = _residuals_from_working(d, model.phi, model.theta)
        f1 = model.phi * d[-1] + model.theta * a[-1]
        means = y[t] + np.cumsum(f1 * model.phi ** (horizons - 1))
    else:
        if not 0 <= t <= n - 1:
            raise InsufficientHistoryError(
                f"TrendArma11 origin must satisfy 0 <= t <= {n - 1}, got {t}"
            )
        x = y - model.c0 - model.c1 * _trend_times(n)
        a = _residuals_from_working(x[: t + 1], model.phi, model.theta)
        x1 = model.phi * x[t] + model.theta * a[-1]
        noise = x1 * model.phi ** (horizons - 1)
        means = model.c0 + model.c1 * ((t + 1) + horizons) + noise
    psi = psi_weights(model, m).coeffs
    return ForecastPath(means=means, scaled_variances=np.cumsum(psi**2))


def harmonic_weights(model: ArmaModel, m: int) -> np.ndarray:
    """Horizon weights h / v_l with h the harmonic mean of v_l = sum psi_j^2.

    These are the variance-ratio weights of the multi-horizon loss; the
    innovation variance cancels, so they depend on (phi, theta) only, and
    they sum to m by construction.
    """
    if m < 1:
        raise HorizonOutOfRangeError("m must be >= 1")
    psi = psi_weights(model, m).coeffs
    v = np.cumsum(psi**2)
    h = m / np.sum(1.0 / v)
    return h / v


def catchall_loss(series: Series, model: ArmaModel, m: int) -> float:
    """Harmonically weighted sum of squared forecast errors at horizons 1..m.

    Forecast origins run over every working index with m observations ahead.
    With m = 1 the weight is 1 and the loss is the CLS sum of squared
    one-step residuals.
    """
    if m < 1:
        raise HorizonOutOfRangeError("m must be >= 1")
    y = series.values
    phi, theta = model.phi, model.theta
    w = harmonic_weights(model, m)
    x = _working_values(series, model)
    k = x.shape[0] - m  # forecast origin count
    if k < 1:
        raise SeriesTooShortError(
            f"need more than m={m} working observations, got {x.shape[0]}"
        )
    a = _residuals_from_working(x, phi, theta)
    f1 = phi * x[:k] + theta * a[:k]
    if isinstance(model, Arima111Params):
        cum = np.cumsum(phi ** np.arange(m))
        Yw = np.lib.stride_tricks.sliding_window_view(y, k)
        E = Yw[2 : m + 2] - Yw[1] - cum[:, None] * f1
    else:
        # the trend cancels between Y and its forecast, so work on x directly
        powers = phi ** np.arange(m)
        Xw = np.lib.stride_tricks.sliding_window_view(x, k)
        E = Xw[1 : m + 1] - powers[:, None] * f1
    return float(np.sum(w[:, None] * E * E))


def _normalize_kind(kind: str) -> str:
    k = kind.replace("_", "-").lower()
    if k not in ("arima111", "trend-arma11"):
        raise ValueError(f"unknown model kind {kind!r}")
    return k


def _default_init(series: Series, kind: str) -> ArmaModel:
    if kind == "arima111":
        return Arima111Params(0.2, 0.2)
    slope, intercept = np.polyfit(_trend_times(len(series)), series.values, 1)
    return TrendArma11Params(float(intercept), float(slope), 0.2, 0.2)


def fit(
    series: Series,
    kind: str = "arima111",
    m: int = 1,
    init: Optional[ArmaModel] = None,
    settings: OptimSettings = OptimSettings(),
) -> ArmaFit:
    """Fit a model of the given kind by minimizing the m-horizon loss.

    Starts from phi = theta = 0.2, with trend coefficients from ordinary
    least squares, unless ``init`` overrides. Fits whose |phi| or |theta|
    ends beyond 0.9999 are flagged boundary-suspect in the report.
    """
    k = _normalize_kind(kind)
    transform = Arima111Transform() if k == "arima111" else TrendArma11Transform()
    if init is None:
        init = _default_init(series, k)
    expected = Arima111Params if k == "arima111" else TrendArma11Params
    if not isinstance(init, expected):
        raise TypeError(f"init must be {expected.__name__} for kind {kind!r}")

    def objective(vec):
        return catchall_loss(series, transform.inverse(vec), m)

    try:
        x, value, report = minimize(objective, transform.forward(init), settings)
    except NonFiniteObjectiveError as exc:
        raise OptimizerDivergedError(str(exc)) from exc
    if not np.isfinite(value):
        raise OptimizerDivergedError("loss non-finite at the optimizer's solution")
    model = transform.inverse(x)
    if max(abs(model.phi), abs(model.theta)) > BOUNDARY_THRESHOLD:
        report = dataclasses.replace(report, boundary_suspect=True)
    return ArmaFit(model, value, report)


def sweep(
    series: Series,
    kind: str = "arima111",
    m_max: int = 1,
    settings: OptimSettings = OptimSettings(),
) -> SweepResult:
    """Warm-started fits for m = 1..m_max with per-parameter drift from m = 1."""
    k = _normalize_kind(kind)
    if m_max < 1:
        raise HorizonOutOfRangeError("m_max must be >= 1")
    working_len = len(series) - 1 if k == "arima111" else len(series)
    if working_len - m_max < 1:
        raise SeriesTooShortError(
            f"need more than m_max={m_max} working observations, got {working_len}"
        )
    current = None
    entries = []
    base = None
    for m in range(1, m_max + 1):
        f = fit(series, k, m, init=current, settings=settings)
        current = f.model
        values = f.model.as_dict()
        if base is None:
            base = values
        entries.append(
            SweepEntry(
                m=m,
                model=f.model,
                loss=f.loss,
                delta_from_m1={key: values[key] - base[key] for key in values},
                report=f.report,
            )
        )
    return SweepResult(tuple(entries))
