from __future__ import annotations
from typing import Optional
import numpy as np
from attr import define, field, Factory
from kam_atlas.errors import DomainError

REALITY_TOLERANCE = 1e-14


def _normalize_coefficients(coefficients: dict) -> dict[int, complex]:
    return {int(j): complex(c) for j, c in coefficients.items() if complex(c) != 0}


@define(frozen=True)
class OneDSeries:
    """
    Real trigonometric series θ ↦ Σ_j c_j e^{ijθ} with finite support and zero average.

    Both c_j and c_{−j} are stored; the reality constraint c_{−j} = conj(c_j) is checked at
    construction.
    """

    coefficients: dict[int, complex] = field(converter=_normalize_coefficients)
    _orders: np.ndarray = field(
        init=False,
        repr=False,
        eq=False,
        default=Factory(lambda self: np.array(sorted(j for j in self.coefficients if j > 0), dtype=float), takes_self=True)
    )
    _amplitudes: np.ndarray = field(
        init=False,
        repr=False,
        eq=False,
        default=Factory(
            lambda self: np.array([self.coefficients[int(j)] for j in self._orders], dtype=complex), takes_self=True
        )
    )

    @coefficients.validator
    def validate_coefficients(self, _, coefficients: dict[int, complex]) -> None:
        if 0 in coefficients:
            raise DomainError("series must have zero average (no coefficient at j = 0)")

        for j, c in coefficients.items():
            partner = coefficients.get(-j, 0j)

            if abs(partner - c.conjugate()) > REALITY_TOLERANCE * max(1.0, abs(c)):
                raise DomainError(f"reality violated at j = {j}: c_-j must equal conj(c_j)")

    @classmethod
    def from_positive(cls, modes: dict[int, complex]) -> OneDSeries:
        coefficients = {}

        for j, c in modes.items():
            if j <= 0:
                raise DomainError("from_positive expects positive orders only")

            coefficients[j] = complex(c)
            coefficients[-j] = complex(c).conjugate()

        return cls(coefficients)

    @classmethod
    def trigonometric(cls, cos: Optional[dict[int, float]] = None, sin: Optional[dict[int, float]] = None) -> OneDSeries:
        """Series Σ a_j cos jθ + b_j sin jθ from real cosine and sine amplitudes."""
        modes: dict[int, complex] = {}

        for j, a in (cos or {}).items():
            modes[j] = modes.get(j, 0j) + a / 2

        for j, b in (sin or {}).items():
            modes[j] = modes.get(j, 0j) - 1j * b / 2

        return cls.from_positive(modes)

    @property
    def is_empty(self) -> bool:
        return not self.coefficients

    @property
    def max_order(self) -> int:
        return int(self._orders[-1]) if self._orders.size else 0

    def __call__(self, theta):
        return self.derivative(theta, 0)

    def derivative(self, theta, order: int = 1):
        theta = np.asarray(theta, dtype=float)

        if not self._orders.size:
            return np.zeros_like(theta)

        weights = self._amplitudes * (1j * self._orders) ** order
        phases = np.exp(1j * np.multiply.outer(theta, self._orders))

        return 2.0 * np.real(phases @ weights)

    def scaled(self, factor: float) -> OneDSeries:
        return OneDSeries({j: c * factor for j, c in self.coefficients.items()})

    def divided(self, divisor: float) -> OneDSeries:
        return OneDSeries({j: c / divisor for j, c in self.coefficients.items()})

    def added(self, other: OneDSeries) -> OneDSeries:
        keys = set(self.coefficients) | set(other.coefficients)

        return OneDSeries({j: self.coefficients.get(j, 0j) + other.coefficients.get(j, 0j) for j in keys})

    def strip_bound(self, sigma: float) -> float:
        # upper bound of sup |g| over the complex strip |Im θ| < sigma
        return float(sum(abs(c) * np.exp(abs(j) * sigma) for j, c in self.coefficients.items()))

    def sample(self, points: int = 4096, order: int = 0) -> tuple[np.ndarray, np.ndarray]:
        theta = 2 * np.pi * np.arange(points) / points

        return theta, self.derivative(theta, order)

    def to_dict(self) -> dict:
        return {
            "coefficients": [
                {"j": j, "re": c.real, "im": c.imag} for j, c in sorted(self.coefficients.items())
            ]
        }
