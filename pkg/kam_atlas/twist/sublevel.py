from __future__ import annotations
from typing import Optional
import numpy as np
from scipy import stats
from kam_atlas.errors import DomainError


def default_c_m(m: int) -> float:
    return float(2 ** m * m)


def sublevel_bound(xi: float, m: int, M: float, length: float, eta: float, c_m: Optional[float] = None) -> float:
    """
    (c_m / ξ^{1/m}) (M·length/ξ + 1) η^{1/m}: bound on meas{|f| ≤ η} over an interval for a (ξ, m)-non-degenerate
    f whose m-th derivative is bounded by M.
    """
    if min(xi, M, length, eta) <= 0 or m < 1:
        raise DomainError("sublevel bound needs positive ξ, M, length, η and m ≥ 1")

    c_m = default_c_m(m) if c_m is None else c_m

    return c_m / xi ** (1 / m) * (M * length / xi + 1) * eta ** (1 / m)


def midpoint_weights(x: np.ndarray) -> np.ndarray:
    # each sample owns the cell between the midpoints to its neighbours
    x = np.asarray(x, dtype=float)
    edges = np.concatenate([[x[0]], (x[1:] + x[:-1]) / 2, [x[-1]]])

    return np.diff(edges)


def empirical_sublevel(x, values, eta: float) -> float:
    values = np.asarray(values, dtype=float)

    return float(np.sum(midpoint_weights(x)[np.abs(values) <= eta]))


def sublevel_exponent(x, values, etas) -> float:
    """Log-log slope of the empirical sublevel measure against η."""
    etas = np.asarray(etas, dtype=float)
    measures = np.array([empirical_sublevel(x, values, eta) for eta in etas])

    if np.any(measures <= 0):
        raise DomainError("empty sublevel set; choose larger thresholds")

    return float(stats.linregress(np.log(etas), np.log(measures)).slope)


def sublevel_check(x, values, xi: float, m: int, M: float, eta: float, c_m: Optional[float] = None) -> dict:
    x = np.asarray(x, dtype=float)
    empirical = empirical_sublevel(x, values, eta)
    bound = sublevel_bound(xi, m, M, float(x[-1] - x[0]), eta, c_m)

    return {"eta": eta, "empirical": empirical, "bound": bound, "holds": empirical <= bound}
