from __future__ import annotations
from enum import Enum
from typing import Optional
import numpy as np
from attr import define, field
from kam_atlas.fourier.morse import MorseProfile, morse_analyze
from kam_atlas.fourier.series import OneDSeries
from kam_atlas.portrait.standard_form import StandardForm1D


class RegionKind(Enum):
    OUTER_LOWER = "outer_lower"
    OUTER_UPPER = "outer_upper"
    INNER_ODD = "inner_odd"
    INNER_EVEN = "inner_even"


@define(frozen=True)
class Region:
    """
    One connected component of {H♭ < E♭} minus the separatrices, indexed 0…2N.

    Inner regions carry the angle brackets containing their left and right turning points.
    """

    index: int = field(kw_only=True)
    kind: RegionKind = field(kw_only=True)
    energy_minus: float = field(kw_only=True)
    energy_plus: float = field(kw_only=True)
    potential: OneDSeries = field(kw_only=True, repr=False, eq=False)
    profile: MorseProfile = field(kw_only=True, repr=False, eq=False)
    j_minus: Optional[int] = field(default=None, kw_only=True)
    j_plus: Optional[int] = field(default=None, kw_only=True)
    left_bracket: Optional[tuple[float, float]] = field(default=None, kw_only=True)
    right_bracket: Optional[tuple[float, float]] = field(default=None, kw_only=True)

    @property
    def is_inner(self) -> bool:
        return self.kind in (RegionKind.INNER_ODD, RegionKind.INNER_EVEN)

    @property
    def scale(self) -> float:
        # ε̄ used for normalization: sup |Ḡ|
        return self.profile.sup_abs

    @property
    def center(self) -> float:
        return self.profile.closed_points[self.index] if self.is_inner else self.profile.points[0]

    @property
    def upper_is_critical(self) -> bool:
        return self.is_inner

    def contains(self, energy: float) -> bool:
        return self.energy_minus < energy < self.energy_plus

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind.value,
            "energy_minus": self.energy_minus,
            "energy_plus": self.energy_plus,
            "j_minus": self.j_minus,
            "j_plus": self.j_plus,
            "left_bracket": None if self.left_bracket is None else list(self.left_bracket),
            "right_bracket": None if self.right_bracket is None else list(self.right_bracket)
        }


@define(frozen=True)
class Portrait:
    form: StandardForm1D = field(kw_only=True, repr=False)
    profile: MorseProfile = field(kw_only=True)
    regions: list[Region] = field(kw_only=True)

    @property
    def energy_flat(self) -> float:
        return self.form.energy_flat

    def region(self, index: int) -> Region:
        return self.regions[index]

    @property
    def inner_regions(self) -> list[Region]:
        return [r for r in self.regions if r.is_inner]

    def to_dict(self) -> dict:
        return {
            "energy_flat": self.energy_flat,
            "critical_points": list(self.profile.points),
            "critical_values": list(self.profile.values),
            "regions": [r.to_dict() for r in self.regions]
        }


def decompose(h: StandardForm1D, use_perturbed: bool = False) -> Portrait:
    potential = h.potential if use_perturbed else h.reference
    profile = morse_analyze(potential)
    theta = profile.closed_points
    energies = profile.closed_values
    half = profile.half_count
    flat = h.energy_flat
    common = {"potential": potential, "profile": profile}
    regions = [Region(index=0, kind=RegionKind.OUTER_LOWER, energy_minus=energies[0], energy_plus=flat, **common)]

    for i in range(1, 2 * half):
        if i % 2:
            regions.append(
                Region(
                    index=i,
                    kind=RegionKind.INNER_ODD,
                    energy_minus=energies[i],
                    energy_plus=min(energies[i - 1], energies[i + 1]),
                    left_bracket=(theta[i - 1], theta[i]),
                    right_bracket=(theta[i], theta[i + 1]),
                    **common
                )
            )
        else:
            j = i // 2
            j_minus = max(l for l in range(j) if energies[2 * l] > energies[i])
            j_plus = min(l for l in range(j + 1, half + 1) if energies[2 * l] > energies[i])
            regions.append(
                Region(
                    index=i,
                    kind=RegionKind.INNER_EVEN,
                    energy_minus=energies[i],
                    energy_plus=min(energies[2 * j_minus], energies[2 * j_plus]),
                    j_minus=j_minus,
                    j_plus=j_plus,
                    left_bracket=(theta[2 * j_minus], theta[2 * j_minus + 1]),
                    right_bracket=(theta[2 * j_plus - 1], theta[2 * j_plus]),
                    **common
                )
            )

    regions.append(
        Region(index=2 * half, kind=RegionKind.OUTER_UPPER, energy_minus=energies[0], energy_plus=flat, **common)
    )

    return Portrait(form=h, profile=profile, regions=regions)


def critical_order(portrait: Portrait) -> tuple[int, ...]:
    return tuple(int(i) for i in np.argsort(portrait.profile.values))
