from __future__ import annotations
import logging
import numpy as np
from attr import define, field, Factory
from scipy.integrate import quad
from scipy.optimize import brentq
from kam_atlas.errors import DerivativeNoiseError, DomainError, TurningPointError
from kam_atlas.fourier.series import OneDSeries
from kam_atlas.portrait.regions import Region

EPSREL = 1e-12
EPSABS = 1e-14
SUBDIVISION_LIMIT = 200
MAX_STEP = 1e-2
NOISE_TOLERANCE = 1e-2


def _richardson(estimate, h: float) -> tuple[float, float]:
    # two Richardson levels on a second-order difference formula; returns (value, error estimate)
    d = [estimate(h / 2 ** i) for i in range(3)]
    first = [(4 * d[i + 1] - d[i]) / 3 for i in range(2)]
    value = (16 * first[1] - first[0]) / 15

    return value, abs(value - first[1])


@define(frozen=True)
class ActionIntegrator:
    """
    Action I₁(E) of one region and its energy derivatives.

    Quadrature runs on Ḡ/ε̄ with ε̄ = sup|Ḡ|; physical values follow from
    I₁(E) = √ε̄ · i(E/ε̄).
    """

    region: Region = field()
    epsrel: float = field(default=EPSREL, kw_only=True)
    limit: int = field(default=SUBDIVISION_LIMIT, kw_only=True)
    _normalized: OneDSeries = field(
        init=False, repr=False, eq=False, default=Factory(lambda self: self.region.potential.divided(self.region.scale), takes_self=True)
    )

    @property
    def scale(self) -> float:
        return self.region.scale

    @property
    def e_minus(self) -> float:
        return self.region.energy_minus / self.scale

    @property
    def e_plus(self) -> float:
        return self.region.energy_plus / self.scale

    def _check(self, e: float, strict: bool) -> None:
        inside = self.e_minus < e < self.e_plus if strict else self.e_minus <= e <= self.e_plus

        if not inside:
            raise DomainError(
                f"energy {e * self.scale:.12g} outside region {self.region.index} interval "
                f"({self.region.energy_minus:.12g}, {self.region.energy_plus:.12g})"
            )

    def _quad(self, integrand, a: float, b: float) -> float:
        value, _ = quad(integrand, a, b, epsabs=EPSABS, epsrel=self.epsrel, limit=self.limit)

        return value

    # outer regions: closed-form differentiated integrals over one period

    def _outer_moment(self, e: float, power: float) -> float:
        g = self._normalized
        start = self.region.profile.points[0]

        def integrand(q):
            gap = e - g(q)

            return gap ** power if gap > 0 else 0.0

        return self._quad(integrand, start, start + 2 * np.pi)

    # inner regions: split at the center, q = q_turn ± u² on each side; Ḡ < E strictly between the turning points

    def turning_points(self, e: float) -> tuple[float, float]:
        g = self._normalized

        try:
            left = brentq(lambda q: g(q) - e, *self.region.left_bracket, xtol=1e-15)
            right = brentq(lambda q: g(q) - e, *self.region.right_bracket, xtol=1e-15)
        except ValueError as error:
            raise TurningPointError(f"turning point bracketing failed in region {self.region.index}: {error}") from error

        return float(left), float(right)

    def _inner_moment(self, e: float, power: float) -> float:
        g = self._normalized
        center = self.region.center
        left, right = self.turning_points(e)
        total = 0.0

        for turn, sign, width in ((left, 1.0, center - left), (right, -1.0, right - center)):
            if width <= 0:
                continue

            def integrand(u, turn=turn, sign=sign):
                gap = e - g(turn + sign * u * u)

                return gap ** power * 2 * u if gap > 0 else 0.0

            total += self._quad(integrand, 0.0, np.sqrt(width))

        return total

    def _at_bottom(self, e: float) -> bool:
        return self.region.index % 2 == 1 and e <= self.e_minus

    def normalized_action(self, e: float) -> float:
        self._check(e, strict=False)

        if self.region.is_inner:
            return 0.0 if self._at_bottom(e) else self._inner_moment(e, 0.5) / np.pi

        return self._outer_moment(e, 0.5) / (2 * np.pi)

    def normalized_derivative(self, e: float) -> float:
        self._check(e, strict=True)

        if self.region.is_inner:
            return self._inner_moment(e, -0.5) / (2 * np.pi)

        return self._outer_moment(e, -0.5) / (4 * np.pi)

    def _step(self, e: float) -> float:
        distance = min(e - self.e_minus, self.e_plus - e)

        return min(MAX_STEP, distance / 4)

    def _extrapolate(self, estimate, e: float) -> float:
        value, error = _richardson(estimate, self._step(e))

        if error > NOISE_TOLERANCE * abs(value):
            raise DerivativeNoiseError(f"derivative noise {error:.2e} at normalized energy {e:.6g} too large")
        if error > 1e-6 * abs(value):
            logging.debug(f"derivative error estimate {error:.2e} at normalized energy {e:.6g}")

        return value

    def normalized_second(self, e: float) -> float:
        self._check(e, strict=True)

        if not self.region.is_inner:
            return -self._outer_moment(e, -1.5) / (8 * np.pi)

        d = self.normalized_derivative

        return self._extrapolate(lambda h: (d(e + h) - d(e - h)) / (2 * h), e)

    def normalized_third(self, e: float) -> float:
        self._check(e, strict=True)

        if not self.region.is_inner:
            return 3 * self._outer_moment(e, -2.5) / (16 * np.pi)

        d = self.normalized_derivative
        center = d(e)

        return self._extrapolate(lambda h: (d(e + h) - 2 * center + d(e - h)) / h ** 2, e)

    def normalized_energy(self, i: float) -> float:
        low, high = self.normalized_action(self.e_minus), self.normalized_action(self.e_plus)

        if not low <= i <= high:
            raise DomainError(f"action {i * np.sqrt(self.scale):.12g} outside the range of region {self.region.index}")
        if i == low:
            return self.e_minus
        if i == high:
            return self.e_plus

        return float(
            brentq(lambda e: self.normalized_action(e) - i, self.e_minus, self.e_plus, xtol=1e-15, rtol=4.5e-16)
        )

    def normalized_twist(self, e: float) -> float:
        return -self.normalized_second(e) / self.normalized_derivative(e) ** 3

    # physical units

    def action(self, energy: float) -> float:
        return np.sqrt(self.scale) * self.normalized_action(energy / self.scale)

    def d_action(self, energy: float) -> float:
        return self.normalized_derivative(energy / self.scale) / np.sqrt(self.scale)

    def d2_action(self, energy: float) -> float:
        return self.normalized_second(energy / self.scale) / self.scale ** 1.5

    def d3_action(self, energy: float) -> float:
        return self.normalized_third(energy / self.scale) / self.scale ** 2.5

    def energy(self, action: float) -> float:
        return self.scale * self.normalized_energy(action / np.sqrt(self.scale))

    def twist(self, energy: float) -> float:
        # ∂²E/∂I² = −I''/I'³ is invariant under Ḡ → λḠ
        return self.normalized_twist(energy / self.scale)

    @property
    def action_range(self) -> tuple[float, float]:
        return self.action(self.region.energy_minus), self.action(self.region.energy_plus)
