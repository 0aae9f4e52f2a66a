"""Derivative-free constrained minimization.

Constraints are handled by mapping parameters to an unconstrained vector
(see the Transform interface), running Nelder-Mead there, and mapping back.
Restarts perturb the incumbent with a fixed multiplicative schedule so that
repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .exceptions import NonFiniteObjectiveError
from .series import OptimizerReport

__all__ = ["Transform", "OptimSettings", "minimize", "JITTER_MAGNITUDES"]

# relative perturbation sizes applied on successive restarts
JITTER_MAGNITUDES = (0.05, 0.10, 0.20)


class Transform:
    """Invertible map between a constrained parameter set and R^k.

    Implementations guarantee inverse(forward(p)) == p to 1e-10 for valid p,
    and that inverse() of any finite vector satisfies the target invariants.
    """

    def forward(self, params) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, vector: np.ndarray):
        raise NotImplementedError


@dataclass(frozen=True)
class OptimSettings:
    objective_tolerance: float = 1e-8
    parameter_tolerance: float = 1e-8
    max_iterations: int = 5000
    restarts: int = 3
    initial_simplex_scale: float = 0.1

    def __post_init__(self):
        for name in (
            "objective_tolerance",
            "parameter_tolerance",
            "max_iterations",
            "restarts",
            "initial_simplex_scale",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def _initial_simplex(x0: np.ndarray, scale: float) -> np.ndarray:
    n = x0.size
    sim = np.tile(x0, (n + 1, 1))
    for i in range(n):
        sim[i + 1, i] += scale * max(abs(x0[i]), 1.0)
    return sim


def _jitter(x: np.ndarray, magnitude: float) -> np.ndarray:
    # multiplicative on nonzero coordinates, absolute on zeros; signs
    # alternate +,-,+,... across coordinates so the schedule is fixed
    signs = np.where(np.arange(x.size) % 2 == 0, 1.0, -1.0)
    return x + signs * magnitude * np.where(x != 0.0, np.abs(x), 1.0)


def _run_nelder_mead(objective, start: np.ndarray, settings: OptimSettings):
    res = _scipy_minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "initial_simplex": _initial_simplex(start, settings.initial_simplex_scale),
            "xatol": settings.parameter_tolerance,
            "fatol": settings.objective_tolerance,
            "maxiter": settings.max_iterations,
            "maxfev": np.inf,
        },
    )
    return np.asarray(res.x, dtype=np.float64), float(res.fun), bool(res.success), int(res.nit)


def minimize(objective, start, settings: OptimSettings = OptimSettings()):
    """Minimize ``objective`` over R^k starting from ``start``.

    Runs Nelder-Mead with standard coefficients (reflection 1, expansion 2,
    contraction 0.5, shrink 0.5); converged means both the simplex objective
    spread fell below objective_tolerance and the vertex spread below
    parameter_tolerance. Each restart reinitializes the simplex around the
    jittered incumbent. Returns (argmin, value, report).
    """
    x0 = np.asarray(start, dtype=np.float64).copy()
    if x0.ndim != 1 or x0.size == 0:
        raise ValueError("start must be a non-empty 1-d vector")

    f0 = objective(x0)
    if not np.isfinite(f0):
        for mag in JITTER_MAGNITUDES:
            candidate = _jitter(x0, mag)
            fc = objective(candidate)
            if np.isfinite(fc):
                x0 = candidate
                break
        else:
            raise NonFiniteObjectiveError(
                "objective non-finite at start and at every restart jitter"
            )

    def safe(x):
        v = objective(x)
        return v if np.isfinite(v) else np.inf

    best_x, best_f, best_ok, iterations = _run_nelder_mead(safe, x0, settings)
    restarts_used = 0
    for r in range(settings.restarts):
        mag = JITTER_MAGNITUDES[r % len(JITTER_MAGNITUDES)]
        x, f, ok, nit = _run_nelder_mead(safe, _jitter(best_x, mag), settings)
        restarts_used += 1
        iterations += nit
        improved = f < best_f - settings.objective_tolerance
        if f < best_f:
            best_x, best_f, best_ok = x, f, ok
        elif ok:
            best_ok = True
        if ok and not improved:
            break  # converged restart confirmed the incumbent

    report = OptimizerReport(
        converged=best_ok,
        iterations=iterations,
        final_loss=best_f,
        restarts_used=restarts_used,
    )
    return best_x, best_f, report
