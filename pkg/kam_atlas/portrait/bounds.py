from __future__ import annotations
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError
from kam_atlas.portrait.regions import critical_order, decompose
from kam_atlas.portrait.standard_form import StandardForm1D


@define(frozen=True)
class PhaseBoundsReport:
    inner_box_contained: bool = field(kw_only=True)
    contained_in_outer_box: bool = field(kw_only=True)
    max_level_momentum: float = field(kw_only=True)
    inner_half_width: float = field(kw_only=True)
    outer_half_width: float = field(kw_only=True)

    @property
    def holds(self) -> bool:
        return self.inner_box_contained and self.contained_in_outer_box

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "inner_box_contained": self.inner_box_contained,
            "contained_in_outer_box": self.contained_in_outer_box,
            "max_level_momentum": self.max_level_momentum,
            "inner_half_width": self.inner_half_width,
            "outer_half_width": self.outer_half_width
        }


def phase_bounds(h: StandardForm1D, points: int = 256) -> PhaseBoundsReport:
    """
    Grid check of (−R−r/3, R+r/3)×T ⊆ {H♭ < E♭} ⊆ (−R−r/2, R+r/2)×T.
    """
    if h.mu > 1 / (4 * h.kappa) ** 2:
        raise DomainError(f"mu = {h.mu:.3e} exceeds 1/(4κ)² = {1 / (4 * h.kappa) ** 2:.3e}")

    inner = h.R + h.r / 3
    outer = h.R + h.r / 2
    flat = h.energy_flat
    q = 2 * np.pi * np.arange(points) / points
    p = np.linspace(-1.25 * outer, 1.25 * outer, points)
    pp, qq = np.meshgrid(p, q)
    energy = h.hamiltonian(pp, qq)
    below = energy < flat

    inside_inner = np.abs(pp) < inner
    inner_ok = bool(np.all(below[inside_inner]))
    outer_ok = bool(np.all(np.abs(pp[below]) < outer))

    # E = E♭ level curve: |p| solves (1 + ν)p² = E♭ − G(q); ν is evaluated on the curve of the unperturbed solve
    gap = np.maximum(flat - h.potential(q), 0.0)
    level = np.sqrt(gap)

    if h.nu is not None:
        level = np.sqrt(gap / (1 + h.nu(level, q)))

    return PhaseBoundsReport(
        inner_box_contained=inner_ok,
        contained_in_outer_box=outer_ok and bool(np.max(level) <= outer),
        max_level_momentum=float(np.max(level)),
        inner_half_width=inner,
        outer_half_width=outer
    )


def order_preserved(h: StandardForm1D) -> bool:
    """Critical points of Ḡ and G = Ḡ + (G − Ḡ) appear in the same order with the same value ranking."""
    if h.mu > 1 / (2 * h.kappa) ** 6:
        raise DomainError(f"mu = {h.mu:.3e} exceeds 1/(2κ)⁶")

    reference = decompose(h)
    perturbed = decompose(h, use_perturbed=True)

    if reference.profile.count != perturbed.profile.count:
        return False

    drift = np.array(perturbed.profile.points) - np.array(reference.profile.points)
    drift = (drift + np.pi) % (2 * np.pi) - np.pi
    spacing = np.min(np.diff(reference.profile.closed_points))

    return bool(critical_order(reference) == critical_order(perturbed) and np.max(np.abs(drift)) < spacing / 2)
