from __future__ import annotations
import logging
from typing import Optional
import numpy as np
from attr import define, field
from scipy.optimize import brentq, minimize_scalar
from kam_atlas.errors import DomainError, NotMorseError
from kam_atlas.fourier.series import OneDSeries

SCAN_SAMPLES = 2 ** 12
BRACKET_TOLERANCE = 1e-13
CURVATURE_TOLERANCE = 1e-9
DISTINCT_VALUE_TOLERANCE = 1e-10


@define(frozen=True)
class MorseProfile:
    """
    Critical data of a Morse trigonometric series.

    Points are ordered in [θ₀, θ₀ + 2π) starting at the global maximum, so maxima sit at even
    indices and minima at odd ones.
    """

    points: tuple[float, ...] = field(kw_only=True)
    values: tuple[float, ...] = field(kw_only=True)
    derivative_sum_min: float = field(kw_only=True)
    value_gap: float = field(kw_only=True)
    max_second_derivative: float = field(kw_only=True)
    shift: Optional[float] = field(default=None, kw_only=True)
    amplitude: Optional[float] = field(default=None, kw_only=True)
    residual_bound: Optional[float] = field(default=None, kw_only=True)

    @property
    def beta(self) -> float:
        return min(self.derivative_sum_min, self.value_gap)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def half_count(self) -> int:
        return len(self.points) // 2

    @property
    def count_bound(self) -> float:
        return float(np.pi * np.sqrt(2 * self.max_second_derivative / self.beta))

    @property
    def count_bound_holds(self) -> bool:
        return self.count <= self.count_bound

    @property
    def sup_abs(self) -> float:
        return max(abs(v) for v in self.values)

    @property
    def closed_points(self) -> tuple[float, ...]:
        # θ₀, …, θ_{2N} with θ_{2N} = θ₀ + 2π
        return self.points + (self.points[0] + 2 * np.pi,)

    @property
    def closed_values(self) -> tuple[float, ...]:
        return self.values + (self.values[0],)

    def is_maximum(self, index: int) -> bool:
        return index % 2 == 0

    def to_dict(self) -> dict:
        return {
            "points": list(self.points),
            "values": list(self.values),
            "beta": self.beta,
            "derivative_sum_min": self.derivative_sum_min,
            "value_gap": self.value_gap,
            "max_second_derivative": self.max_second_derivative,
            "count": self.count,
            "count_bound": self.count_bound,
            "count_bound_holds": self.count_bound_holds,
            "shift": self.shift,
            "amplitude": self.amplitude,
            "residual_bound": self.residual_bound
        }


def _polish(g: OneDSeries, a: float, b: float) -> float:
    root = brentq(g.derivative, a, b, args=(1,), xtol=BRACKET_TOLERANCE)
    curvature = g.derivative(root, 2)

    if curvature != 0:
        candidate = root - g.derivative(root, 1) / curvature

        if a <= candidate <= b and abs(g.derivative(candidate, 1)) <= abs(g.derivative(root, 1)):
            return float(candidate)

    return float(root)


def _critical_points(g: OneDSeries, samples: int) -> list[float]:
    theta, slope = g.sample(samples, 1)
    following = np.roll(slope, -1)
    roots = [float(t) for t, s in zip(theta, slope) if s == 0.0]

    for i in np.nonzero(slope * following < 0)[0]:
        a = theta[i]
        b = theta[i + 1] if i + 1 < samples else 2 * np.pi
        roots.append(_polish(g, a, b))

    return sorted(r % (2 * np.pi) for r in roots)


def _derivative_sum_min(g: OneDSeries, samples: int) -> float:
    theta = 2 * np.pi * np.arange(samples) / samples
    total = np.abs(g.derivative(theta, 1)) + np.abs(g.derivative(theta, 2))
    i = int(np.argmin(total))
    step = 2 * np.pi / samples

    refined = minimize_scalar(
        lambda t: abs(g.derivative(t, 1)) + abs(g.derivative(t, 2)),
        bounds=(theta[i] - step, theta[i] + step),
        method="bounded",
        options={"xatol": 1e-12}
    )

    return float(min(total[i], refined.fun))


def morse_analyze(g: OneDSeries, samples: int = SCAN_SAMPLES) -> MorseProfile:
    if g.is_empty:
        raise DomainError("cannot analyze an identically zero series")

    roots = _critical_points(g, samples)
    curvatures = np.array([g.derivative(r, 2) for r in roots])
    _, curvature_grid = g.sample(samples, 2)
    max_curvature = float(np.max(np.abs(curvature_grid)))

    if len(roots) < 2 or len(roots) % 2:
        raise NotMorseError(f"found {len(roots)} critical points; a Morse series has an even positive count")

    if np.min(np.abs(curvatures)) <= CURVATURE_TOLERANCE * max_curvature:
        raise NotMorseError("degenerate critical point: |g''| below tolerance")

    values = np.array([g(r) for r in roots])
    start = int(np.argmax(values))
    order = [(start + i) % len(roots) for i in range(len(roots))]
    points = tuple(float(roots[start] + (roots[i] - roots[start]) % (2 * np.pi)) for i in order)
    ordered_values = tuple(float(values[i]) for i in order)

    for index, i in enumerate(order):
        if (curvatures[i] < 0) != (index % 2 == 0):
            raise NotMorseError("critical points do not alternate between maxima and minima")

    gaps = np.diff(np.sort(values))
    value_gap = float(np.min(gaps))

    if value_gap < DISTINCT_VALUE_TOLERANCE * float(np.max(np.abs(values))):
        raise NotMorseError("two critical values coincide within tolerance")

    shift = amplitude = residual = None
    first = g.coefficients.get(1)

    if first is not None:
        shift = float(np.angle(first))
        amplitude = 2 * abs(first)
        residual = sum(abs(c) * np.exp(abs(j)) for j, c in g.coefficients.items() if abs(j) >= 2) / amplitude

    profile = MorseProfile(
        points=points,
        values=ordered_values,
        derivative_sum_min=_derivative_sum_min(g, samples),
        value_gap=value_gap,
        max_second_derivative=max_curvature,
        shift=shift,
        amplitude=amplitude,
        residual_bound=None if residual is None else float(residual)
    )

    if not profile.count_bound_holds:
        logging.warning(f"critical point count {profile.count} exceeds bound {profile.count_bound:.3f}")

    return profile
