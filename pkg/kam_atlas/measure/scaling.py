from __future__ import annotations
from typing import Optional, Sequence
import numpy as np
from attr import define, field
from scipy import stats
from kam_atlas.errors import DomainError
from kam_atlas.measure.montecarlo import MeasureEstimate, zone_measure
from kam_atlas.resonance.covering import CoveringParams, ZoneTag

MIN_POINTS = 3
MIN_DECADES = 2.0


@define(frozen=True)
class ScalingPoint:
    epsilon: float = field(kw_only=True)
    alpha: float = field(kw_only=True)
    estimate: MeasureEstimate = field(kw_only=True)

    def to_row(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "measure": self.estimate.value,
            "stderr": self.estimate.stderr,
            "hits": self.estimate.hits,
            "samples": self.estimate.samples
        }


@define(frozen=True)
class ScalingStudy:
    """Log-log regression of the measured zone measure against ε at fixed K; intercept is in log10."""

    params: CoveringParams = field(kw_only=True, repr=False)
    tag: ZoneTag = field(kw_only=True)
    points: list[ScalingPoint] = field(kw_only=True)
    slope: float = field(kw_only=True)
    intercept: float = field(kw_only=True)
    slope_stderr: float = field(kw_only=True)
    c2: Optional[float] = field(default=None, kw_only=True)

    @property
    def gamma(self) -> float:
        return self.params.gamma

    @property
    def polynomial(self) -> float:
        return float(self.params.K ** self.gamma)

    @property
    def fitted_constant(self) -> float:
        """Smallest c₂ with meas ≤ c₂·ε·K^γ at every point of the study."""
        return max(p.estimate.value / (p.epsilon * self.polynomial) for p in self.points)

    @property
    def implied_constant(self) -> float:
        """c₂ implied by the regression line at slope one."""
        return float(10 ** self.intercept / self.polynomial)

    @property
    def bound_holds(self) -> Optional[bool]:
        if self.c2 is None:
            return None

        return all(p.estimate.value <= self.c2 * p.epsilon * self.polynomial for p in self.points)

    def to_dict(self) -> dict:
        return {
            "covering": self.params.to_dict(),
            "zone": self.tag.name,
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "intercept_log10": self.intercept,
            "gamma": self.gamma,
            "fitted_constant": self.fitted_constant,
            "implied_constant": self.implied_constant,
            "c2": self.c2,
            "bound_holds": self.bound_holds,
            "points": [p.to_row() for p in self.points]
        }


def scaling_study(
    params: CoveringParams,
    epsilons: Sequence[float],
    samples: int = 10 ** 6,
    seed: int = 0,
    tag: ZoneTag = ZoneTag.DOUBLY_RESONANT,
    c2: Optional[float] = None,
    workers: int = 1
) -> ScalingStudy:
    """Every ε reuses the same seed, so the regression sees common random numbers."""
    epsilons = sorted(float(e) for e in epsilons)

    if len(epsilons) < MIN_POINTS:
        raise DomainError(f"a scaling study needs at least {MIN_POINTS} values of ε")
    if np.log10(epsilons[-1] / epsilons[0]) < MIN_DECADES - 1e-9:
        raise DomainError(f"values of ε must span at least {MIN_DECADES:g} decades")

    studies = [params.with_epsilon(e) for e in epsilons]

    for p in studies:
        p.require_small_alpha()

    points = [
        ScalingPoint(epsilon=p.epsilon, alpha=p.alpha, estimate=zone_measure(p, tag, samples, seed, workers))
        for p in studies
    ]
    measures = np.array([p.estimate.value for p in points])

    if np.any(measures <= 0):
        raise DomainError("degenerate regression: some zone measures are zero; raise the sample count")

    fit = stats.linregress(np.log10(epsilons), np.log10(measures))

    return ScalingStudy(
        params=params,
        tag=tag,
        points=points,
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        slope_stderr=float(fit.stderr),
        c2=c2
    )
