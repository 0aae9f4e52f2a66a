"""Multi-horizon matching estimation for GARCH(1,1) and ARIMA-family models.

Classical one-step fitting (Gaussian deviance, conditional least squares)
and its multi-horizon generalization, which scores forecasts at horizons
1..m jointly; sweeping m and watching the parameter trajectory drift is a
practical misspecification diagnostic.
"""

from . import arma, exceptions, garch, ingest, optim
from .arma import (
    Arima111Params,
    ArmaFit,
    ForecastPath,
    PsiWeights,
    TrendArma11Params,
)
from .estimators import Arima111, Garch11, TrendArma11
from .garch import GarchFit, GarchParams
from .optim import OptimSettings
from .series import (
    CatchallConfig,
    OptimizerReport,
    Series,
    SweepEntry,
    SweepResult,
    validate_series,
)
from .simulate import SimSpec, simulate, standard_normals

__version__ = "0.1.0"

__all__ = [
    "Series",
    "validate_series",
    "CatchallConfig",
    "OptimizerReport",
    "SweepEntry",
    "SweepResult",
    "OptimSettings",
    "GarchParams",
    "GarchFit",
    "Arima111Params",
    "TrendArma11Params",
    "ArmaFit",
    "PsiWeights",
    "ForecastPath",
    "SimSpec",
    "simulate",
    "standard_normals",
    "Garch11",
    "Arima111",
    "TrendArma11",
    "arma",
    "garch",
    "ingest",
    "optim",
    "exceptions",
]
