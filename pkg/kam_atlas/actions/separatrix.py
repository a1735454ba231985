from __future__ import annotations
import logging
from typing import Optional
import numpy as np
from attr import define, field
from numpy.polynomial import polynomial
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.errors import DomainError, IllConditionedFitError
from kam_atlas.portrait.regions import Region, RegionKind

FIT_DEGREE = 3
FIT_SAMPLES = 48
CONDITION_LIMIT = 1e12
VANISHING_TOLERANCE = 1e-8
SIDES = ("upper", "lower")


@define(frozen=True)
class SeparatrixFit:
    """
    Least-squares fit I₁(E_c ∓ ε̄z) ≈ φ(z) + ψ(z)·z·log z near the critical energy E_c of one side
    of a region ("upper": E_c = E⁺ approached from below, "lower": E_c = E⁻ approached from above).

    Coefficients are in physical units, lowest order first.
    """

    region_index: int = field(kw_only=True)
    kind: RegionKind = field(kw_only=True)
    side: str = field(kw_only=True)
    scale: float = field(kw_only=True)
    critical_energy: float = field(kw_only=True)
    z: np.ndarray = field(kw_only=True, eq=False, repr=False)
    phi: np.ndarray = field(kw_only=True, eq=False)
    psi: np.ndarray = field(kw_only=True, eq=False)
    residual: float = field(kw_only=True)
    max_residual: float = field(kw_only=True)
    condition: float = field(kw_only=True)

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    @property
    def phi0(self) -> float:
        return float(self.phi[0])

    @property
    def psi0(self) -> float:
        return float(self.psi[0])

    @property
    def at_minimum(self) -> bool:
        return self.side == "lower" and self.kind == RegionKind.INNER_ODD

    @property
    def psi_contribution(self) -> float:
        """sup over the grid of |ψ(z)·z·log z|."""
        return float(np.max(np.abs(polynomial.polyval(self.z, self.psi) * self.z * np.log(self.z))))

    @property
    def b_bar(self) -> float:
        return -self.psi0 / np.sqrt(self.scale)

    @property
    def sign_condition_holds(self) -> bool:
        if self.at_minimum:
            return abs(self.phi0) <= VANISHING_TOLERANCE and self.psi_contribution <= VANISHING_TOLERANCE
        if self.side == "upper":
            return self.psi0 > 0

        return self.psi0 < 0

    def __call__(self, z):
        z = np.asarray(z, dtype=float)

        return polynomial.polyval(z, self.phi) + polynomial.polyval(z, self.psi) * z * np.log(z)

    def to_dict(self) -> dict:
        return {
            "region": self.region_index,
            "kind": self.kind.value,
            "side": self.side,
            "scale": self.scale,
            "critical_energy": self.critical_energy,
            "z_min": float(self.z[0]),
            "z_max": float(self.z[-1]),
            "samples": int(self.z.size),
            "phi": [float(c) for c in self.phi],
            "psi": [float(c) for c in self.psi],
            "phi0": self.phi0,
            "psi0": self.psi0,
            "residual": self.residual,
            "max_residual": self.max_residual,
            "condition": self.condition,
            "psi_contribution": self.psi_contribution,
            "sign_condition_holds": self.sign_condition_holds
        }


def _critical(integrator: ActionIntegrator, side: str) -> tuple[float, float]:
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")
    if side == "upper":
        if not integrator.region.is_inner:
            raise DomainError("the upper end of an outer region is E♭, which is not a critical energy")

        return integrator.e_plus, -1.0

    return integrator.e_minus, 1.0


def _design(z: np.ndarray, degree: int, log_degree: int) -> np.ndarray:
    # columns z^j for j ≤ degree, then z^{j+1} log z for j ≤ log_degree
    powers = np.vander(z, max(degree, log_degree) + 1, increasing=True)

    return np.hstack([powers[:, : degree + 1], powers[:, : log_degree + 1] * (z * np.log(z))[:, None]])


def separatrix_fit(
    region: Region,
    side: str,
    zmin: float = 1e-3,
    zmax: float = 0.1,
    degree: int = FIT_DEGREE,
    samples: int = FIT_SAMPLES,
    integrator: ActionIntegrator = None,
    log_degree: Optional[int] = None
) -> SeparatrixFit:
    """
    ψ has the same degree as φ unless log_degree is given; log_degree = degree − 1 restricts the
    logarithmic part to z^{j+1} log z with j < degree.
    """
    integrator = integrator or ActionIntegrator(region)
    critical, direction = _critical(integrator, side)
    width = integrator.e_plus - integrator.e_minus

    if not 0 < zmin < zmax < min(1.0, width):
        raise DomainError(f"need 0 < zmin < zmax < min(1, {width:.6g}) in normalized energy")

    log_degree = degree if log_degree is None else log_degree

    if not 0 <= log_degree <= degree:
        raise DomainError(f"log_degree must lie in [0, {degree}], got {log_degree}")
    if samples < 4 * (degree + 1):
        raise DomainError(f"at least {4 * (degree + 1)} samples are needed for degree {degree}")

    z = np.geomspace(zmin, zmax, samples)
    values = np.array([integrator.normalized_action(critical + direction * t) for t in z])
    design = _design(z, degree, log_degree)
    norms = np.linalg.norm(design, axis=0)
    scaled = design / norms
    condition = float(np.linalg.cond(scaled))

    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise IllConditionedFitError(f"fit basis condition number {condition:.3e} exceeds {CONDITION_LIMIT:.0e}")

    solution, *_ = np.linalg.lstsq(scaled, values, rcond=None)
    coefficients = solution / norms
    residuals = design @ coefficients - values
    root_scale = np.sqrt(integrator.scale)

    logging.debug(f"separatrix fit region {region.index} {side}: condition {condition:.3e}")

    return SeparatrixFit(
        region_index=region.index,
        kind=region.kind,
        side=side,
        scale=integrator.scale,
        critical_energy=critical * integrator.scale,
        z=z,
        phi=root_scale * coefficients[: degree + 1],
        psi=root_scale * coefficients[degree + 1 :],
        residual=float(root_scale * np.sqrt(np.mean(residuals ** 2))),
        max_residual=float(root_scale * np.max(np.abs(residuals))),
        condition=condition
    )


def regularized_weight(fit: SeparatrixFit, z) -> np.ndarray:
    """
    w(z) = z·(√ε̄ ∂_E I₁(E_c ∓ ε̄z))³ evaluated from the fitted expansion. Near a hyperbolic end it
    tends to zero like z·log³z.
    """
    z = np.asarray(z, dtype=float)
    root_scale = np.sqrt(fit.scale)
    phi, psi = fit.phi / root_scale, fit.psi / root_scale
    log_z = np.log(z)
    dz = (
        polynomial.polyval(z, polynomial.polyder(phi))
        + polynomial.polyval(z, polynomial.polyder(psi)) * z * log_z
        + polynomial.polyval(z, psi) * (log_z + 1)
    )
    # E = E_c ∓ ε̄z, so ∂_E = ∓ ε̄⁻¹ ∂_z
    direction = -1.0 if fit.side == "upper" else 1.0

    return z * (direction * dz) ** 3


def log_divergence_slope(region: Region, side: str, zs, integrator: ActionIntegrator = None) -> float:
    """Slope of √ε̄ ∂_E I₁ against log z near a critical energy."""
    integrator = integrator or ActionIntegrator(region)
    critical, direction = _critical(integrator, side)
    zs = np.asarray(zs, dtype=float)
    values = np.array([integrator.normalized_derivative(critical + direction * t) for t in zs])
    slope, _ = np.polyfit(np.log(zs), values, 1)

    return float(slope)
