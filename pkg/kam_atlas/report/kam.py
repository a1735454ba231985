from __future__ import annotations
from attr import define, field
from kam_atlas.errors import DomainError


def _positive(_, attribute, value) -> None:
    if not value > 0:
        raise DomainError(f"KAM threshold input {attribute.name} must be positive")


@define(frozen=True)
class KamThresholdInput:
    """
    Data of the KAM smallness condition: M bounds the Hessian of the integrable part, d bounds its determinant
    from below, r and s_bar are the analyticity radii in actions and angles. C_kam is not effective and
    defaults to 1, so thresholds are relative.
    """

    M: float = field(kw_only=True, validator=_positive)
    d: float = field(kw_only=True, validator=_positive)
    r: float = field(kw_only=True, validator=_positive)
    s_bar: float = field(kw_only=True, validator=_positive)
    n: int = field(kw_only=True, validator=_positive)
    C_kam: float = field(default=1.0, kw_only=True, validator=_positive)
    domain_diameter: float = field(default=2.0, kw_only=True, validator=_positive)

    @d.validator
    def validate_d(self, _, d: float) -> None:
        if d > self.M ** self.n:
            raise DomainError(f"d = {d:.6g} exceeds M^n = {self.M ** self.n:.6g}")


@define(frozen=True)
class KamThreshold:
    inputs: KamThresholdInput = field(kw_only=True)

    @property
    def d_star(self) -> float:
        return self.inputs.d / self.inputs.M ** self.inputs.n

    @property
    def r_star(self) -> float:
        return self.d_star ** 2 * self.inputs.r

    @property
    def relative(self) -> float:
        """Bound on |f|/(M r²)."""
        i = self.inputs

        return self.d_star ** 8 * i.s_bar ** (4 * (i.n + 1)) / i.C_kam

    @property
    def threshold(self) -> float:
        """Largest admissible sup-norm r² d⁸ s^{4n+4} / (C M^{8n−1})."""
        i = self.inputs

        return i.r ** 2 * i.d ** 8 * i.s_bar ** (4 * i.n + 4) / (i.C_kam * i.M ** (8 * i.n - 1))

    @property
    def loss_coefficient(self) -> float:
        """Factor in front of √ε in the measure of the complement of the KAM tori."""
        i = self.inputs

        return (
            max(self.r_star, i.domain_diameter) ** i.n * i.C_kam / (self.d_star ** (i.n + 5) * i.s_bar ** (3 * (i.n + 1)))
        )

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "relative": self.relative,
            "d_star": self.d_star,
            "r_star": self.r_star,
            "loss_coefficient": self.loss_coefficient,
            "C_kam": self.inputs.C_kam
        }


def kam_threshold(inputs: KamThresholdInput) -> KamThreshold:
    return KamThreshold(inputs=inputs)
