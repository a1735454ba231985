from __future__ import annotations
from typing import Callable, Optional
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError, NotMorseError
from kam_atlas.fourier.morse import morse_analyze
from kam_atlas.fourier.series import OneDSeries

GRID_POINTS = 1024
RELATIVE_SLACK = 1e-9


@define(frozen=True)
class StandardForm1D:
    """
    H♭ = (1 + ν(p, q)) p² + G(q) with G = Ḡ + perturbation, together with the characteristics
    (R, r, s̄, β, ε̄, μ, κ) of the generic standard form.
    """

    reference: OneDSeries = field(kw_only=True)
    R: float = field(kw_only=True)
    r: float = field(kw_only=True)
    s_bar: float = field(default=1.0, kw_only=True)
    beta: float = field(kw_only=True)
    epsilon_bar: float = field(kw_only=True)
    mu: float = field(default=0.0, kw_only=True)
    kappa: float = field(default=4.0, kw_only=True)
    perturbation: Optional[OneDSeries] = field(default=None, kw_only=True)
    nu: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = field(default=None, kw_only=True, eq=False)

    @r.validator
    def validate_r(self, _, r: float) -> None:
        if not r > 0:
            raise DomainError("r must be positive")

    @R.validator
    def validate_big_r(self, _, R: float) -> None:
        if not R > 0:
            raise DomainError("R must be positive")

    @classmethod
    def from_reference(cls, reference: OneDSeries, kappa: Optional[float] = None) -> StandardForm1D:
        """
        Unperturbed standard form around a Morse reference: ε̄ = sup|Ḡ|, β its Morse constant, r = 2⁸√ε̄ and
        R = 2r, so that every clause of the form holds with κ = max(4, ε̄/β).
        """
        profile = morse_analyze(reference)
        epsilon_bar = profile.sup_abs
        r = 2 ** 8 * np.sqrt(epsilon_bar)

        return cls(
            reference=reference,
            R=2 * r,
            r=r,
            beta=profile.beta,
            epsilon_bar=epsilon_bar,
            kappa=max(4.0, epsilon_bar / profile.beta) if kappa is None else kappa
        )

    @property
    def energy_flat(self) -> float:
        return self.R ** 2 + self.R * self.r

    @property
    def potential(self) -> OneDSeries:
        if self.perturbation is None:
            return self.reference

        return self.reference.added(self.perturbation)

    def hamiltonian(self, p, q):
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        factor = 1.0 if self.nu is None else 1.0 + self.nu(p, q)

        return factor * p ** 2 + self.potential(q)

    def perturbation_sup(self) -> float:
        if self.perturbation is None or self.perturbation.is_empty:
            return 0.0

        _, values = self.perturbation.sample(GRID_POINTS)

        return float(np.max(np.abs(values)))

    def nu_sup(self) -> float:
        if self.nu is None:
            return 0.0

        bound = self.R + self.r
        p, q = np.meshgrid(np.linspace(-bound, bound, 257), 2 * np.pi * np.arange(256) / 256)

        return float(np.max(np.abs(self.nu(p, q))))

    def to_dict(self) -> dict:
        return {
            "reference": self.reference.to_dict(),
            "R": self.R,
            "r": self.r,
            "s_bar": self.s_bar,
            "beta": self.beta,
            "epsilon_bar": self.epsilon_bar,
            "mu": self.mu,
            "kappa": self.kappa,
            "energy_flat": self.energy_flat
        }


@define(frozen=True)
class Clause:
    name: str = field(kw_only=True)
    lhs: float = field(kw_only=True)
    rhs: float = field(kw_only=True)
    holds: bool = field(kw_only=True)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "margin": self.margin}


@define(frozen=True)
class ValidationReport:
    clauses: list[Clause] = field(factory=list, kw_only=True)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.clauses)

    @property
    def violations(self) -> list[Clause]:
        return [c for c in self.clauses if not c.holds]

    def clause(self, name: str) -> Clause:
        return next(c for c in self.clauses if c.name == name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "clauses": [c.to_dict() for c in self.clauses]}


def _at_most(name: str, lhs: float, rhs: float) -> Clause:
    return Clause(name=name, lhs=float(lhs), rhs=float(rhs), holds=bool(lhs <= rhs * (1 + RELATIVE_SLACK)))


def validate(h: StandardForm1D) -> ValidationReport:
    try:
        profile = morse_analyze(h.reference)
        reference_sup = profile.sup_abs
        morse_beta = profile.beta
    except (NotMorseError, DomainError):
        _, values = h.reference.sample(GRID_POINTS)
        reference_sup = float(np.max(np.abs(values))) if values.size else 0.0
        morse_beta = 0.0

    clauses = [
        _at_most("reference_size", reference_sup, h.epsilon_bar),
        _at_most("perturbation_size", h.perturbation_sup(), h.epsilon_bar * h.mu),
        _at_most("epsilon_bar_vs_r", h.epsilon_bar, h.r ** 2 / 2 ** 16),
        _at_most("nu_size", h.nu_sup(), h.mu),
        Clause(name="mu_range", lhs=h.mu, rhs=1.0, holds=bool(0 <= h.mu < 1)),
        _at_most("s_bar_lower", 1 / h.kappa, h.s_bar),
        _at_most("s_bar_upper", h.s_bar, 1.0),
        _at_most("radius_ratio_lower", 1.0, h.R / h.r),
        _at_most("radius_ratio_upper", h.R / h.r, h.kappa),
        _at_most("epsilon_beta_lower", 0.5, h.epsilon_bar / h.beta),
        _at_most("epsilon_beta_upper", h.epsilon_bar / h.beta, h.kappa),
        _at_most("kappa_floor", 4.0, h.kappa),
        _at_most("reference_morse", h.beta, morse_beta)
    ]

    return ValidationReport(clauses=clauses)
