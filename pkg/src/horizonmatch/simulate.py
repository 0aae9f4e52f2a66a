"""Seeded Monte Carlo path generation for the supported models.

The innovation stream is fully specified so that independent implementations
can reproduce paths bit-for-bit: raw 64-bit words come from SplitMix64 used
as a counter-based generator, and standard normals from the basic (not polar)
Box-Muller transform. See docs/random_stream.md for the conventions and
known-answer vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.signal import lfilter

from .arma import Arima111Params, ArmaModel, TrendArma11Params
from .garch import GarchParams
from .series import Series

__all__ = ["SimSpec", "simulate", "raw_uint64", "standard_normals"]

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TWO53 = float(2**53)


def raw_uint64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of SplitMix64 seeded with ``seed``.

    Output k (k = 1, 2, ...) is mix(seed + k * 0x9E3779B97F4A7C15) with the
    standard SplitMix64 finalizer, everything mod 2^64.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    with np.errstate(over="ignore"):
        z = np.uint64(seed % 2**64) + np.arange(1, count + 1, dtype=np.uint64) * _GOLDEN
        z ^= z >> np.uint64(30)
        z *= _MIX1
        z ^= z >> np.uint64(27)
        z *= _MIX2
        z ^= z >> np.uint64(31)
    return z


def standard_normals(seed: int, count: int) -> np.ndarray:
    """First ``count`` standard normal variates of the named stream.

    Consecutive raw words (r1, r2) map to u1 = ((r1 >> 11) + 1) * 2^-53 in
    (0, 1] and u2 = (r2 >> 11) * 2^-53 in [0, 1); the Box-Muller pair is
    sqrt(-2 ln u1) * (cos, sin)(2 pi u2), emitted in that order.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    pairs = (count + 1) // 2
    raw = raw_uint64(seed, 2 * pairs)
    bits = (raw >> np.uint64(11)).astype(np.float64)
    u1 = (bits[0::2] + 1.0) / _TWO53
    u2 = bits[1::2] / _TWO53
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:count]


@dataclass(frozen=True)
class SimSpec:
    """What to simulate: model, path length, burn-in, seed, innovation scale.

    ``innovation_scale`` is sigma_a for the ARMA family; GARCH innovations
    have unit variance by construction, so leave it at 1 there.
    """

    model: Union[GarchParams, ArmaModel]
    length: int
    seed: int
    burn_in: int = 500
    innovation_scale: float = 1.0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if not self.innovation_scale > 0:
            raise ValueError("innovation_scale must be > 0")


def _simulate_garch(params: GarchParams, z: np.ndarray) -> np.ndarray:
    n = z.shape[0]
    r = np.empty(n)
    h = params.unconditional_variance()
    for t in range(n):
        r[t] = np.sqrt(h) * z[t]
        h = params.omega + params.alpha * r[t] ** 2 + params.beta * h
    return r


def _simulate_arma_core(phi: float, theta: float, a: np.ndarray) -> np.ndarray:
    # x_t = phi x_{t-1} + a_t + theta a_{t-1}, all state starting at zero
    return lfilter([1.0, theta], [1.0, -phi], a)


def simulate(spec: SimSpec) -> Series:
    """Generate one path for ``spec.model``; identical specs give identical paths.

    GARCH starts its variance recursion at the unconditional variance; the
    ARMA core starts from zero state; Arima111 integrates the simulated
    differences; TrendArma11 adds the trend line to the simulated noise. The
    first ``burn_in`` core samples are discarded.
    """
    total = spec.length + spec.burn_in
    z = standard_normals(spec.seed, total)
    model = spec.model
    if isinstance(model, GarchParams):
        values = _simulate_garch(model, z)[spec.burn_in :]
    elif isinstance(model, Arima111Params):
        d = _simulate_arma_core(model.phi, model.theta, spec.innovation_scale * z)
        values = np.cumsum(d[spec.burn_in :])
    elif isinstance(model, TrendArma11Params):
        x = _simulate_arma_core(model.phi, model.theta, spec.innovation_scale * z)
        t = np.arange(1, spec.length + 1, dtype=np.float64)
        values = model.c0 + model.c1 * t + x[spec.burn_in :]
    else:
        raise TypeError(f"unsupported model type {type(model).__name__}")
    return Series.from_values(values, unit="simulated")
