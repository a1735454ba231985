from __future__ import annotations
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError

SYMMETRY_TOLERANCE = 1e-12


@define(frozen=True)
class DeterminantBound:
    """det(P + Q) ≥ (1 − λ)^d det P for λ = |P⁻¹||Q| < 1 (operator norms)."""

    dimension: int = field(kw_only=True)
    lam: float = field(kw_only=True)
    det_sum: float = field(kw_only=True)
    det_p: float = field(kw_only=True)

    @property
    def bound(self) -> float:
        return (1 - self.lam) ** self.dimension * self.det_p

    @property
    def holds(self) -> bool:
        return self.det_sum >= self.bound

    @property
    def half_bound_holds(self) -> bool:
        # only claimed when λ ≤ 1/(2d)
        return self.lam > 1 / (2 * self.dimension) or self.det_sum >= self.det_p / 2

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "lambda": self.lam,
            "det_sum": self.det_sum,
            "det_p": self.det_p,
            "bound": self.bound,
            "holds": self.holds,
            "half_bound_holds": self.half_bound_holds
        }


def _require_positive_definite(name: str, matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"{name} must be a square matrix")
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * max(1.0, np.max(np.abs(matrix))):
        raise DomainError(f"{name} is not symmetric")

    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        raise DomainError(f"{name} is not positive definite")


def pd_det_bound(P, Q) -> DeterminantBound:
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)

    _require_positive_definite("P", P)
    _require_positive_definite("Q", Q)

    if P.shape != Q.shape:
        raise DomainError("P and Q must have the same shape")

    # symmetric positive definite: |P⁻¹| = 1/λ_min(P), |Q| = λ_max(Q)
    lam = float(np.max(np.linalg.eigvalsh(Q)) / np.min(np.linalg.eigvalsh(P)))

    if lam >= 1:
        raise DomainError(f"λ = |P⁻¹||Q| = {lam:.6g} must be below 1")

    return DeterminantBound(
        dimension=P.shape[0], lam=lam, det_sum=float(np.linalg.det(P + Q)), det_p=float(np.linalg.det(P))
    )
