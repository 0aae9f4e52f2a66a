"""Independent reference implementations used as test oracles.

Everything here is written as plain loops, directly off the model equations,
so the vectorized library code is checked against a second derivation.
"""

import numpy as np


def garch_variances_loop(r, omega, alpha, beta, h0):
    h = [float(h0)]
    for t in range(1, len(r)):
        h.append(omega + alpha * r[t - 1] ** 2 + beta * h[-1])
    return np.array(h)


def garch_multistep_loop(omega, alpha, beta, first, m):
    out = [float(first)]
    for _ in range(m - 1):
        out.append(omega + (alpha + beta) * out[-1])
    return np.array(out)


def garch_catchall_loop(r, omega, alpha, beta, h0, m, w):
    """Naive double loop, recomputing every sigma^2_{t+l|t} from scratch."""
    n = len(r)
    h = garch_variances_loop(r, omega, alpha, beta, h0)
    total = 0.0
    for t in range(n - m):  # origins, 0-based
        seq = garch_multistep_loop(omega, alpha, beta, h[t + 1], m)
        for ell in range(1, m + 1):
            v = seq[ell - 1]
            total += w[ell - 1] * (r[t + ell] ** 2 / v + np.log(v))
    return total


def psi_long_division(ma_poly, ar_poly, count):
    """Series expansion of ma_poly(B) / ar_poly(B), constant terms first."""
    psi = []
    rem = list(ma_poly) + [0.0] * count
    for j in range(count):
        c = rem[j] / ar_poly[0]
        psi.append(c)
        for i, a in enumerate(ar_poly):
            rem[j + i] -= c * a
    return np.array(psi)


def cls_residuals_loop(x, phi, theta):
    a = [0.0]
    for t in range(1, len(x)):
        a.append(x[t] - phi * x[t - 1] - theta * a[-1])
    return np.array(a)


def arma_forecast_means_loop(x, phi, theta, s, m):
    """ARMA(1,1) core means from working-index origin s, horizons 1..m."""
    a = cls_residuals_loop(x[: s + 1], phi, theta)
    means = [phi * x[s] + theta * a[-1]]
    for _ in range(m - 1):
        means.append(phi * means[-1])
    return np.array(means)
