from __future__ import annotations
from typing import Optional, Sequence
import numpy as np
from attr import define, field
from scipy.optimize import brentq
from kam_atlas.errors import DomainError


def doubly_resonant_gamma(n: int) -> int:
    """Exponent 11n + 4 of the doubly-resonant measure bound."""
    return 11 * n + 4


@define(frozen=True)
class BudgetShape:
    """
    Non-torus budget (2π)ⁿ c₂ ε K^γ + e^{−K/c} as a function of K, with the crossover K* where both terms
    are equal and the two standard choices K = c|ln ε| and K = ε^{−(1−a)/γ}.
    """

    epsilon: float = field(kw_only=True)
    n: int = field(kw_only=True)
    c: float = field(kw_only=True)
    gamma: float = field(kw_only=True)
    c2: float = field(default=1.0, kw_only=True)
    a: float = field(default=0.5, kw_only=True)
    torus_factor: bool = field(default=True, kw_only=True)

    @property
    def prefactor(self) -> float:
        return (2 * np.pi) ** self.n * self.c2 if self.torus_factor else self.c2

    def polynomial_term(self, K: float) -> float:
        return float(self.prefactor * self.epsilon * K ** self.gamma)

    def exponential_term(self, K: float) -> float:
        return float(np.exp(-K / self.c))

    def row(self, K: float) -> dict:
        polynomial, exponential = self.polynomial_term(K), self.exponential_term(K)

        return {"K": float(K), "polynomial": polynomial, "exponential": exponential, "total": polynomial + exponential}

    @property
    def crossover(self) -> float:
        # log(poly) − log(exp) is increasing in K > 0
        def gap(K):
            return np.log(self.prefactor * self.epsilon) + self.gamma * np.log(K) + K / self.c

        low, high = 1e-12, 1.0

        while gap(high) < 0:
            high *= 2

        return float(brentq(gap, low, high, xtol=1e-12, rtol=1e-14))

    @property
    def logarithmic_choice(self) -> float:
        """K = c|ln ε|, for which the exponential term equals ε."""
        return self.c * abs(np.log(self.epsilon))

    @property
    def power_choice(self) -> float:
        """K = ε^{−(1−a)/γ}, for which the polynomial term is the prefactor times ε^a."""
        return float(self.epsilon ** (-(1 - self.a) / self.gamma))

    def to_dict(self, K_list: Sequence[float] = ()) -> dict:
        return {
            "epsilon": self.epsilon,
            "n": self.n,
            "c": self.c,
            "gamma": self.gamma,
            "c2": self.c2,
            "a": self.a,
            "crossover": self.row(self.crossover),
            "logarithmic_choice": self.row(self.logarithmic_choice),
            "power_choice": self.row(self.power_choice),
            "rows": [self.row(K) for K in K_list]
        }


def budget_shape(
    epsilon: float,
    n: int,
    c: float,
    gamma: Optional[float] = None,
    c2: float = 1.0,
    a: float = 0.5,
    torus_factor: bool = True
) -> BudgetShape:
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    if min(c, c2) <= 0 or not 0 < a < 1:
        raise DomainError("budget constants must be positive and a must lie in (0, 1)")

    return BudgetShape(
        epsilon=epsilon,
        n=n,
        c=c,
        gamma=doubly_resonant_gamma(n) if gamma is None else gamma,
        c2=c2,
        a=a,
        torus_factor=torus_factor
    )
