from __future__ import annotations
from typing import Callable, Optional
import numpy as np
from attr import define, field
from kam_atlas.actions.profile import ActionProfile
from kam_atlas.errors import DomainError
from kam_atlas.resonance.zones import TransverseForm


@define(frozen=True)
class MuCorrection:
    """
    Second derivatives of the perturbation h̃ on the action grid, split into blocks: the scalar ∂²_{I₁}h̃,
    the mixed column ∂_{I₁}∂_Î h̃ and the transverse block ∂²_Î h̃. Each callback maps the I₁ grid (shape
    (N,)) to arrays of shape (N,), (N, n−1) and (N, n−1, n−1). Declared sup-norms bound the entries.
    """

    scalar: Callable[[np.ndarray], np.ndarray] = field(kw_only=True)
    mixed: Callable[[np.ndarray], np.ndarray] = field(kw_only=True)
    transverse: Callable[[np.ndarray], np.ndarray] = field(kw_only=True)
    sigma_scalar: float = field(kw_only=True)
    sigma_mixed: float = field(kw_only=True)
    sigma_transverse: float = field(kw_only=True)


def bordered_enclosure(dimension: int, hessian_norm: float, sigma_mixed: float, sigma_transverse: float) -> float:
    """Worst case of |vᵀ adj(M) v| from Hadamard's bound on the (n−2)-minors of M."""
    d = dimension - 1
    minor = (d - 1) ** ((d - 1) / 2) * (hessian_norm + sigma_transverse) ** (d - 1)

    return d ** 2 * sigma_mixed ** 2 * minor


@define(frozen=True)
class TwistField:
    """
    det ∂²h for h = E(I₁) + ĥ(Î) + h̃ over the I₁ grid of one region, computed blockwise:
    det = (E'' + a)·det(Ĥ + C) − vᵀ adj(Ĥ + C) v. The second term is the bordered correction.
    """

    form: TransverseForm = field(kw_only=True, repr=False)
    actions: np.ndarray = field(kw_only=True, eq=False)
    energies: np.ndarray = field(kw_only=True, eq=False)
    twist: np.ndarray = field(kw_only=True, eq=False)
    transverse_determinants: np.ndarray = field(kw_only=True, eq=False)
    bordered: np.ndarray = field(kw_only=True, eq=False)
    determinants: np.ndarray = field(kw_only=True, eq=False)
    enclosure: float = field(default=0.0, kw_only=True)

    @property
    def dimension(self) -> int:
        return self.form.generator.n

    @property
    def factorization_residual(self) -> float:
        product = self.twist * self.transverse_determinants

        return float(np.max(np.abs(self.determinants - product) / np.maximum(np.abs(product), 1e-300)))

    @property
    def bordered_within_enclosure(self) -> bool:
        return bool(np.all(np.abs(self.bordered) <= self.enclosure * (1 + 1e-12)))

    def rows(self) -> list[dict]:
        return [
            {
                "action": float(self.actions[i]),
                "energy": float(self.energies[i]),
                "twist": float(self.twist[i]),
                "transverse_det": float(self.transverse_determinants[i]),
                "bordered": float(self.bordered[i]),
                "det": float(self.determinants[i])
            }
            for i in range(self.actions.size)
        ]

    def to_dict(self) -> dict:
        return {
            "k": list(self.form.generator.components),
            "enclosure": self.enclosure,
            "min_abs_det": float(np.min(np.abs(self.determinants))),
            "factorization_residual": self.factorization_residual,
            "rows": self.rows()
        }


def twist_field(profile: ActionProfile, form: TransverseForm, mu: Optional[MuCorrection] = None) -> TwistField:
    if not form.positive_definite:
        raise DomainError(f"transverse form for k = {form.generator} is not positive definite")

    twist = profile.twist

    if twist is None:
        twist = np.array([profile.integrator.twist(e) for e in profile.energies])

    count = profile.energies.size
    d = form.generator.n - 1
    hessian = np.broadcast_to(form.hessian, (count, d, d))

    if mu is None:
        transverse = np.full(count, form.determinant)

        return TwistField(
            form=form,
            actions=profile.actions,
            energies=profile.energies,
            twist=twist,
            transverse_determinants=transverse,
            bordered=np.zeros(count),
            determinants=twist * transverse
        )

    scalar = np.asarray(mu.scalar(profile.actions), dtype=float).reshape(count)
    mixed = np.asarray(mu.mixed(profile.actions), dtype=float).reshape(count, d)
    correction = np.asarray(mu.transverse(profile.actions), dtype=float).reshape(count, d, d)
    block = hessian + correction

    if (
        np.max(np.abs(scalar)) > mu.sigma_scalar
        or np.max(np.abs(mixed)) > mu.sigma_mixed
        or np.max(np.abs(correction)) > mu.sigma_transverse
    ):
        raise DomainError("μ-correction exceeds its declared sup-norm")

    transverse = np.linalg.det(block)
    # vᵀ adj(M) v = det(M) · vᵀ M⁻¹ v
    bordered = -transverse * np.einsum("ni,ni->n", mixed, np.linalg.solve(block, mixed[..., None])[..., 0])

    return TwistField(
        form=form,
        actions=profile.actions,
        energies=profile.energies,
        twist=twist + scalar,
        transverse_determinants=transverse,
        bordered=bordered,
        determinants=(twist + scalar) * transverse + bordered,
        enclosure=bordered_enclosure(form.generator.n, form.hessian_norm, mu.sigma_mixed, mu.sigma_transverse)
    )
