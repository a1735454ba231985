from __future__ import annotations
from concurrent import futures
from typing import Optional
import numpy as np
from attr import define, field
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.errors import DomainError
from kam_atlas.portrait.regions import Region, RegionKind

PROFILE_SAMPLES = 64
CROSSCHECK_STEP = 1e-3

ORIENTATIONS = {
    RegionKind.OUTER_LOWER: "outer region below the separatrices (p < 0), action over one full period in q",
    RegionKind.OUTER_UPPER: "outer region above the separatrices (p > 0), action over one full period in q",
    RegionKind.INNER_ODD: "libration around a minimum, action vanishes at the bottom of the well",
    RegionKind.INNER_EVEN: "libration around a local maximum enclosed by two dominating maxima"
}


def chebyshev_energies(e_minus: float, e_plus: float, samples: int) -> np.ndarray:
    """Chebyshev nodes on the open interval (e_minus, e_plus), ascending."""
    nodes = np.cos(np.pi * (2 * np.arange(samples) + 1) / (2 * samples))

    return np.sort(0.5 * (e_minus + e_plus) + 0.5 * (e_plus - e_minus) * nodes)


@define(frozen=True)
class ActionProfile:
    integrator: ActionIntegrator = field(kw_only=True, repr=False)
    energies: np.ndarray = field(kw_only=True, eq=False)
    actions: np.ndarray = field(kw_only=True, eq=False)
    d1: np.ndarray = field(kw_only=True, eq=False)
    d2: Optional[np.ndarray] = field(default=None, kw_only=True, eq=False)
    d3: Optional[np.ndarray] = field(default=None, kw_only=True, eq=False)

    @property
    def region(self) -> Region:
        return self.integrator.region

    @property
    def orientation(self) -> str:
        return ORIENTATIONS[self.region.kind]

    @property
    def periods(self) -> np.ndarray:
        return 2 * np.pi * self.d1

    @property
    def is_monotone(self) -> bool:
        return bool(np.all(self.d1 > 0) and np.all(np.diff(self.actions) > 0))

    @property
    def twist(self) -> Optional[np.ndarray]:
        if self.d2 is None:
            return None

        return -self.d2 / self.d1 ** 3

    @property
    def derivative_floor(self) -> float:
        """Smallest √ε̄ ∂_E I₁ on the grid; its inverse is the fitted constant c of the lower bound 1/(c√ε̄)."""
        return float(np.min(self.d1) * np.sqrt(self.integrator.scale))

    def rows(self) -> list[dict]:
        rows = []

        for i, energy in enumerate(self.energies):
            row = {
                "energy": float(energy),
                "action": float(self.actions[i]),
                "d_action": float(self.d1[i]),
                "period": float(self.periods[i])
            }

            if self.d2 is not None:
                row["d2_action"] = float(self.d2[i])
                row["twist"] = float(self.twist[i])

            if self.d3 is not None:
                row["d3_action"] = float(self.d3[i])

            rows.append(row)

        return rows

    def to_dict(self) -> dict:
        return {
            "region": self.region.to_dict(),
            "orientation": self.orientation,
            "scale": self.integrator.scale,
            "monotone": self.is_monotone,
            "derivative_floor": self.derivative_floor,
            "rows": self.rows()
        }


def build_profile(
    region: Region,
    energies: Optional[np.ndarray] = None,
    samples: int = PROFILE_SAMPLES,
    second: bool = True,
    third: bool = False,
    workers: int = 1,
    **kwargs
) -> ActionProfile:
    """
    Tabulates I₁ and its energy derivatives over the region. Without an explicit grid the energies are
    Chebyshev nodes on the open interval, which cluster towards both separatrix ends.
    """
    integrator = ActionIntegrator(region, **kwargs)

    if energies is None:
        energies = chebyshev_energies(region.energy_minus, region.energy_plus, samples)
    else:
        energies = np.sort(np.asarray(energies, dtype=float))

    def row(energy: float) -> tuple:
        return (
            integrator.action(energy),
            integrator.d_action(energy),
            integrator.d2_action(energy) if second else np.nan,
            integrator.d3_action(energy) if third else np.nan
        )

    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as executor:
            table = list(executor.map(row, energies))
    else:
        table = [row(e) for e in energies]

    table = np.array(table, dtype=float).reshape(len(energies), 4)

    return ActionProfile(
        integrator=integrator,
        energies=energies,
        actions=table[:, 0],
        d1=table[:, 1],
        d2=table[:, 2] if second else None,
        d3=table[:, 3] if third else None
    )


def energy_from_action(profile: ActionProfile, action: float) -> float:
    return profile.integrator.energy(action)


def twist_1d(profile: ActionProfile, energy: float) -> float:
    """∂²E/∂I₁² = −∂²_E I₁ / (∂_E I₁)³ at an interior energy."""
    if not profile.region.contains(energy):
        raise DomainError(f"energy {energy:.12g} is not interior to region {profile.region.index}")

    return profile.integrator.twist(energy)


def twist_crosscheck(profile: ActionProfile, energy: float, step: float = CROSSCHECK_STEP) -> tuple[float, float]:
    """
    Returns (twist_1d, centered second difference of the inverted energy function) at one energy.

    Both are computed in normalized units, where the second derivative of E(I₁) is unchanged.
    """
    integrator = profile.integrator
    e = energy / integrator.scale
    action = integrator.normalized_action(e)
    low, high = integrator.normalized_action(integrator.e_minus), integrator.normalized_action(integrator.e_plus)
    h = min(step, (action - low) / 4, (high - action) / 4)

    if h <= 0:
        raise DomainError(f"energy {energy:.12g} is too close to the ends of region {profile.region.index}")

    difference = (
        integrator.normalized_energy(action + h) - 2 * e + integrator.normalized_energy(action - h)
    ) / h ** 2

    return twist_1d(profile, energy), float(difference)
