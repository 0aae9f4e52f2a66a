"""GARCH(1,1) conditional variances, estimation losses, and fitting.

The model for a return series r_t is

    r_t = sigma_{t|t-1} e_t,    sigma^2_{t|t-1} = omega + alpha r^2_{t-1} + beta sigma^2_{t-1|t-2}

with i.i.d. zero-mean unit-variance innovations e_t. Two losses are offered:
the Gaussian deviance (one-step matching) and a weighted multi-horizon loss
that scores the k-step-ahead variance forecasts for k = 1..m jointly.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.signal import lfilter

from .exceptions import (
    HorizonOutOfRangeError,
    NonFiniteObjectiveError,
    OptimizerDivergedError,
    SeriesTooShortError,
)
from .optim import OptimSettings, Transform, minimize
from .series import CatchallConfig, OptimizerReport, Series, SweepEntry, SweepResult

__all__ = [
    "GarchParams",
    "GarchFit",
    "GarchParamTransform",
    "one_step_variances",
    "multi_step_variances",
    "gaussian_deviance",
    "catchall_loss",
    "fit",
    "sweep",
]


@dataclass(frozen=True)
class GarchParams:
    """GARCH(1,1) coefficients, constrained to the stationarity region.

    Parameters
    ----------
    omega : float
        Variance intercept, > 0 (in squared-return units).
    alpha : float
        Weight on the lagged squared return, >= 0.
    beta : float
        Weight on the lagged conditional variance, >= 0; alpha + beta < 1.
    """

    omega: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("omega", "alpha", "beta"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.omega > 0:
            raise ValueError("omega must be > 0")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")
        if not self.alpha + self.beta < 1:
            raise ValueError("alpha + beta must be < 1")

    @property
    def persistence(self) -> float:
        return self.alpha + self.beta

    def unconditional_variance(self) -> float:
        return self.omega / (1.0 - self.alpha - self.beta)

    def as_dict(self) -> dict[str, float]:
        return {"omega": self.omega, "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class GarchFit:
    """Result of fitting: parameters, in-sample variances, loss, and report.

    ``method`` is the string ``"gaussian"`` or the CatchallConfig that was
    minimized. ``one_step_variances[t]`` is sigma^2_{t|t-1} at the fitted
    parameters, aligned to the input series.
    """

    params: GarchParams
    one_step_variances: np.ndarray
    loss: float
    report: OptimizerReport
    method: Union[str, CatchallConfig]

    def __post_init__(self):
        h = np.asarray(self.one_step_variances, dtype=np.float64)
        h.setflags(write=False)
        object.__setattr__(self, "one_step_variances", h)
        if not (h > 0).all():
            raise ValueError("one-step variances must all be positive")


class GarchParamTransform(Transform):
    """Bijection between valid GarchParams and R^3.

    omega maps by log; (alpha, beta) map to softmax logits relative to the
    slack 1 - alpha - beta, which keeps alpha, beta >= 0 and alpha + beta < 1
    for every finite vector.
    """

    def forward(self, params: GarchParams) -> np.ndarray:
        slack = 1.0 - params.alpha - params.beta
        return np.array(
            [
                np.log(params.omega),
                np.log(max(params.alpha, 1e-300) / slack),
                np.log(max(params.beta, 1e-300) / slack),
            ]
        )

    def inverse(self, vector: np.ndarray) -> GarchParams:
        u, a, b = (float(np.clip(v, -700.0, 700.0)) for v in vector)
        omega = float(np.exp(u))
        top = max(0.0, a, b)
        ea, eb, e0 = np.exp(a - top), np.exp(b - top), np.exp(-top)
        denom = e0 + ea + eb
        alpha = float(ea / denom)
        beta = float(eb / denom)
        total = alpha + beta
        if total >= 1.0:  # softmax collapsed in floating point at extreme logits
            alpha *= (1.0 - 1e-12) / total
            beta *= (1.0 - 1e-12) / total
        return GarchParams(omega, alpha, beta)


def _initial_variance(values: np.ndarray, params: GarchParams, init_variance) -> float:
    if init_variance is not None:
        if not init_variance > 0:
            raise ValueError("init_variance must be > 0")
        return float(init_variance)
    v = float(np.var(values, ddof=1))
    # constant series has zero sample variance; keep the recursion positive
    return v if v > 0 else params.unconditional_variance()


def one_step_variances(
    returns: Series, params: GarchParams, init_variance: Optional[float] = None
) -> np.ndarray:
    """In-sample one-step conditional variances sigma^2_{t|t-1}, t = 0..n-1.

    Entry 0 is the initialization (sample variance of the series unless
    ``init_variance`` overrides it); entry t then follows the recursion
    omega + alpha r^2_{t-1} + beta * entry_{t-1}. All entries are positive.
    """
    r = returns.values
    h0 = _initial_variance(r, params, init_variance)
    h = np.empty_like(r)
    h[0] = h0
    drive = params.omega + params.alpha * r[:-1] ** 2
    h[1:] = lfilter([1.0], [1.0, -params.beta], drive, zi=np.array([params.beta * h0]))[0]
    return h


def multi_step_variances(
    returns: Series,
    params: GarchParams,
    t: int,
    m: int,
    init_variance: Optional[float] = None,
) -> np.ndarray:
    """Variance forecasts sigma^2_{t+l|t} for l = 1..m from origin index t.

    The one-step value comes from the in-sample recursion; beyond that the
    forecasts satisfy sigma^2_{t+l|t} = omega + (alpha+beta) sigma^2_{t+l-1|t},
    evaluated here in closed form.
    """
    if m < 1:
        raise HorizonOutOfRangeError("horizon count m must be >= 1")
    n = len(returns)
    if not 0 <= t <= n - 1:
        raise ValueError(f"origin t={t} outside series of length {n}")
    h = one_step_variances(returns, params, init_variance)
    r = returns.values
    first = params.omega + params.alpha * r[t] ** 2 + params.beta * h[t]
    p = params.persistence
    powers = p ** np.arange(m)
    return params.omega * (1.0 - powers) / (1.0 - p) + powers * first


def gaussian_deviance(
    returns: Series, params: GarchParams, init_variance: Optional[float] = None
) -> float:
    """Twice the negative Gaussian log-likelihood, minus constants.

    Sums r^2_t / sigma^2_{t|t-1} + log sigma^2_{t|t-1} over t = 1..n-1,
    conditioning away the initialization term.
    """
    h = one_step_variances(returns, params, init_variance)
    r2 = returns.values**2
    return float(np.sum(r2[1:] / h[1:] + np.log(h[1:])))


def catchall_loss(
    returns: Series,
    params: GarchParams,
    config: CatchallConfig,
    init_variance: Optional[float] = None,
) -> float:
    """Weighted multi-horizon variance-matching loss.

    Sums w_l * ( r^2_{t+l} / sigma^2_{t+l|t} + log sigma^2_{t+l|t} ) over
    forecast origins t = 0..n-m-1 and horizons l = 1..m. With m = 1 and
    w_1 = 1 this is exactly the Gaussian deviance.
    """
    n = len(returns)
    m = config.m
    if n <= m:
        raise SeriesTooShortError(f"series length {n} must exceed m={m}")
    w = config.weight_vector()
    h = one_step_variances(returns, params, init_variance)
    r2 = returns.values**2
    p = params.persistence
    powers = p ** np.arange(m)
    # closed-form l-step forecasts from every origin at once:
    # V[l-1, t] = omega (1-p^(l-1))/(1-p) + p^(l-1) * sigma^2_{t+1|t}
    V = (params.omega * (1.0 - powers) / (1.0 - p))[:, None] + powers[:, None] * h[1 : n - m + 1]
    R2 = np.lib.stride_tricks.sliding_window_view(r2, n - m)[1 : m + 1]
    return float(np.sum(w[:, None] * (R2 / V + np.log(V))))


def _loss_function(returns, method, init_variance):
    if isinstance(method, CatchallConfig):
        return lambda q: catchall_loss(returns, q, method, init_variance)
    return lambda q: gaussian_deviance(returns, q, init_variance)


def fit(
    returns: Series,
    method: Union[str, CatchallConfig] = "gaussian",
    init: Optional[GarchParams] = None,
    settings: OptimSettings = OptimSettings(),
    init_variance: Optional[float] = None,
) -> GarchFit:
    """Fit GARCH(1,1) by minimizing the requested loss.

    ``method`` is ``"gaussian"`` or a CatchallConfig. The Gaussian fit starts
    from (0.1 * sample variance, 0.05, 0.85) unless ``init`` is given; a
    multi-horizon fit starts from the Gaussian estimate. Non-convergence is
    reported in ``fit.report``, not raised; OptimizerDivergedError signals a
    loss that was non-finite at every attempted start.
    """
    if isinstance(method, str):
        if method != "gaussian":
            raise ValueError(f"unknown method {method!r}; use 'gaussian' or a CatchallConfig")
    elif not isinstance(method, CatchallConfig):
        raise TypeError("method must be 'gaussian' or a CatchallConfig")

    if init is None:
        if isinstance(method, CatchallConfig):
            init = fit(returns, "gaussian", settings=settings, init_variance=init_variance).params
        else:
            sv = float(np.var(returns.values, ddof=1))
            init = GarchParams(0.1 * sv if sv > 0 else 0.1, 0.05, 0.85)

    loss_at = _loss_function(returns, method, init_variance)
    transform = GarchParamTransform()

    def objective(vec):
        return loss_at(transform.inverse(vec))

    try:
        x, value, report = minimize(objective, transform.forward(init), settings)
    except NonFiniteObjectiveError as exc:
        raise OptimizerDivergedError(str(exc)) from exc
    if not np.isfinite(value):
        raise OptimizerDivergedError("loss non-finite at the optimizer's solution")
    params = transform.inverse(x)
    if not -699.0 < np.log(params.omega) < 699.0:
        # omega stalled on the transform clamp: the loss is unbounded in omega
        # (degenerate data), so a flat-simplex stop there is not convergence
        report = dataclasses.replace(report, converged=False)
    return GarchFit(
        params=params,
        one_step_variances=one_step_variances(returns, params, init_variance),
        loss=value,
        report=report,
        method=method,
    )


def sweep(
    returns: Series,
    m_max: int,
    settings: OptimSettings = OptimSettings(),
    init_variance: Optional[float] = None,
) -> SweepResult:
    """Equal-weight multi-horizon fits for m = 1..m_max with warm starts.

    Fit m starts from the estimate at m-1; m = 1 starts from the Gaussian
    fit, to which it is equivalent. Each entry carries the fitted params,
    loss, and per-parameter drift from the m = 1 estimate.
    """
    if m_max < 1:
        raise HorizonOutOfRangeError("m_max must be >= 1")
    if len(returns) <= m_max:
        raise SeriesTooShortError(f"series length {len(returns)} must exceed m_max={m_max}")
    current = fit(returns, "gaussian", settings=settings, init_variance=init_variance).params
    entries = []
    base = None
    for m in range(1, m_max + 1):
        f = fit(
            returns,
            CatchallConfig(m),
            init=current,
            settings=settings,
            init_variance=init_variance,
        )
        current = f.params
        values = f.params.as_dict()
        if base is None:
            base = values
        entries.append(
            SweepEntry(
                m=m,
                model=f.params,
                loss=f.loss,
                delta_from_m1={k: values[k] - base[k] for k in values},
                report=f.report,
            )
        )
    return SweepResult(tuple(entries))
