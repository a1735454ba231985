from __future__ import annotations
from typing import Optional, Union
import numpy as np
from attr import define, field
from kam_atlas.actions.profile import ActionProfile
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.errors import DomainError

F_SAMPLES = 33
F_MARGIN = 0.02


def clustered_grid(low: float, high: float, samples: int) -> np.ndarray:
    nodes = np.cos(np.pi * (2 * np.arange(samples) + 1) / (2 * samples))

    return np.sort(0.5 * (low + high) + 0.5 * (high - low) * nodes)


@define(frozen=True)
class NormalizedTwist:
    """
    Samples of F(x) = ∂²_{I₁}Ē(ā + (b̄ − ā)x), x ∈ (0, 1), where (ā, b̄) is the normalized action range of
    an inner region. F does not change when Ḡ is multiplied by a positive constant.
    """

    x: np.ndarray = field(kw_only=True, eq=False)
    values: np.ndarray = field(kw_only=True, eq=False)
    a_bar: float = field(default=0.0, kw_only=True)
    b_bar: float = field(default=1.0, kw_only=True)
    region_index: Optional[int] = field(default=None, kw_only=True)
    integrator: Optional[ActionIntegrator] = field(default=None, kw_only=True, repr=False, eq=False)

    @x.validator
    def validate_x(self, _, x: np.ndarray) -> None:
        if np.any(x <= 0) or np.any(x >= 1):
            raise DomainError("normalized twist samples must lie strictly inside (0, 1)")

    def at(self, x: float) -> float:
        if self.integrator is None:
            raise DomainError("this normalized twist carries samples only")
        if not 0 < x < 1:
            raise DomainError("x must lie strictly inside (0, 1)")

        return _evaluate(self.integrator, self.a_bar, self.b_bar, x)

    def sup_difference(self, other: NormalizedTwist) -> float:
        if self.x.shape != other.x.shape or not np.allclose(self.x, other.x, rtol=0, atol=1e-15):
            raise DomainError("normalized twists sampled on different grids")

        return float(np.max(np.abs(self.values - other.values)))

    def rows(self) -> list[dict]:
        return [{"x": float(x), "F": float(v)} for x, v in zip(self.x, self.values)]

    def to_dict(self) -> dict:
        return {
            "region": self.region_index,
            "a_bar": self.a_bar,
            "b_bar": self.b_bar,
            "max": float(np.max(self.values)),
            "min": float(np.min(self.values)),
            "samples": self.rows()
        }


def _evaluate(integrator: ActionIntegrator, a_bar: float, b_bar: float, x: float) -> float:
    e = integrator.normalized_energy(a_bar + (b_bar - a_bar) * x)

    return float(integrator.normalized_twist(e))


def normalized_F(
    source: Union[ActionProfile, ActionIntegrator],
    x: Optional[np.ndarray] = None,
    samples: int = F_SAMPLES,
    margin: float = F_MARGIN
) -> NormalizedTwist:
    integrator = source.integrator if isinstance(source, ActionProfile) else source
    region = integrator.region

    if not region.is_inner:
        raise DomainError(f"region {region.index} is an outer region; F is defined within separatrices only")

    if x is None:
        x = clustered_grid(margin, 1 - margin, samples)
    else:
        x = np.sort(np.asarray(x, dtype=float))

    a_bar = integrator.normalized_action(integrator.e_minus)
    b_bar = integrator.normalized_action(integrator.e_plus)

    return NormalizedTwist(
        x=x,
        values=np.array([_evaluate(integrator, a_bar, b_bar, t) for t in x]),
        a_bar=a_bar,
        b_bar=b_bar,
        region_index=region.index,
        integrator=integrator
    )
