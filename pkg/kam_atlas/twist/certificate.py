from __future__ import annotations
import numpy as np
from attr import define, field
from scipy.interpolate import UnivariateSpline
from kam_atlas.errors import CertificateNotFoundError, DomainError
from kam_atlas.twist.normalized import NormalizedTwist

SPLINE_DEGREE = 5
CHECK_POINTS = 401
NOISE_LEVEL = 1e-9
XI_FLOOR = 1e-8


@define(frozen=True)
class NondegeneracyCert:
    """min over the check grid of max_{1≤j≤m} |F⁽ʲ⁾| is at least ξ, after subtracting the grid-halving error."""

    xi: float = field(kw_only=True)
    m: int = field(kw_only=True)
    grid: np.ndarray = field(kw_only=True, eq=False, repr=False)
    lower_bounds: np.ndarray = field(kw_only=True, eq=False, repr=False)
    method: str = field(default="quintic smoothing spline, grid-halving error", kw_only=True)

    @property
    def holds(self) -> bool:
        return bool(np.all(self.lower_bounds >= self.xi))

    def to_dict(self) -> dict:
        return {
            "xi": self.xi,
            "m": self.m,
            "method": self.method,
            "grid": {"start": float(self.grid[0]), "stop": float(self.grid[-1]), "points": int(self.grid.size)},
            "holds": self.holds
        }


def _spline(x: np.ndarray, y: np.ndarray) -> UnivariateSpline:
    noise = NOISE_LEVEL * max(1.0, float(np.max(np.abs(y))))

    return UnivariateSpline(x, y, k=SPLINE_DEGREE, s=len(x) * noise ** 2)


def derivative_bounds(twist: NormalizedTwist, m_max: int, grid: np.ndarray) -> np.ndarray:
    """Row j−1 holds max(|F⁽ʲ⁾| − error, 0) on the grid for j = 1…m_max."""
    x, y = twist.x, twist.values

    if len(x[::2]) <= SPLINE_DEGREE:
        raise DomainError(f"need at least {2 * SPLINE_DEGREE + 1} samples for derivative error estimates")

    full = _spline(x, y)
    half = _spline(x[::2], y[::2])
    bounds = []

    for j in range(1, m_max + 1):
        estimate = full.derivative(j)(grid)
        error = np.abs(estimate - half.derivative(j)(grid))
        bounds.append(np.maximum(np.abs(estimate) - error, 0.0))

    return np.array(bounds)


def certify_nondegeneracy(
    twist: NormalizedTwist, m_max: int, interval: tuple[float, float] = None, points: int = CHECK_POINTS
) -> NondegeneracyCert:
    """Smallest m ≤ m_max with a positive grid-verified ξ; ξ is the largest lower bound the grid supports."""
    if not 1 <= m_max < SPLINE_DEGREE:
        raise DomainError(f"m_max must lie in [1, {SPLINE_DEGREE - 1}] for a degree {SPLINE_DEGREE} spline")

    low, high = interval or (float(twist.x[0]), float(twist.x[-1]))

    if not twist.x[0] <= low < high <= twist.x[-1]:
        raise DomainError("certificate interval must lie within the sampled range")

    grid = np.linspace(low, high, points)
    bounds = derivative_bounds(twist, m_max, grid)
    scale = max(1.0, float(np.max(np.abs(twist.values))))

    for m in range(1, m_max + 1):
        envelope = np.max(bounds[:m], axis=0)
        xi = float(np.min(envelope))

        if xi > XI_FLOOR * scale:
            return NondegeneracyCert(xi=xi, m=m, grid=grid, lower_bounds=envelope)

    raise CertificateNotFoundError(f"no derivative of order ≤ {m_max} stays away from zero on [{low:.4g}, {high:.4g}]")
