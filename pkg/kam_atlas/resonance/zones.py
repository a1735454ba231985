from __future__ import annotations
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError
from kam_atlas.fourier.potential import FourierPotential, cutoff_N, project
from kam_atlas.resonance.bezout import BezoutFrame, bezout_complete
from kam_atlas.resonance.covering import CoveringParams
from kam_atlas.resonance.generators import Generator, generator_matrix


def c1_constant(n: int) -> float:
    return 5 * n * (n - 1) ** ((n - 1) / 2)


def c2_constant(n: int) -> float:
    return 4 * n ** 1.5 * c1_constant(n)


@define(frozen=True)
class ZoneParams:
    generator: Generator = field(kw_only=True)
    covering: CoveringParams = field(kw_only=True, repr=False)
    frame: BezoutFrame = field(kw_only=True, repr=False)
    low_mode: bool = field(kw_only=True)
    R: float = field(kw_only=True)
    r: float = field(kw_only=True)
    epsilon_k: float = field(kw_only=True)
    chi_k: float = field(kw_only=True)
    beta_bar: float = field(kw_only=True)
    epsilon_bar: float = field(kw_only=True)
    s_bar: float = field(kw_only=True)
    s_hat: float = field(kw_only=True)
    mu: float = field(kw_only=True)
    kappa: float = field(kw_only=True)
    c_s: float = field(kw_only=True)

    @property
    def checks(self) -> dict[str, bool]:
        n = self.generator.n
        K = self.covering.K

        return {
            "small_epsilon_bar": bool(np.sqrt(self.epsilon_bar) < self.R / K ** (4.5 * n)),
            "s_bar_range": bool(1 / self.kappa <= self.s_bar <= 1),
            "radius_ratio": bool(1 <= self.R / self.r <= self.kappa)
        }

    def to_dict(self) -> dict:
        return {
            "k": list(self.generator.components),
            "low_mode": self.low_mode,
            "R": self.R,
            "r": self.r,
            "epsilon_k": self.epsilon_k,
            "chi_k": self.chi_k,
            "beta_bar": self.beta_bar,
            "epsilon_bar": self.epsilon_bar,
            "s_bar": self.s_bar,
            "s_hat": self.s_hat,
            "mu": self.mu,
            "kappa": self.kappa,
            "checks": self.checks
        }


def zone_params(k: Generator, p: CoveringParams, f: FourierPotential, beta: float, delta: float = 1.0) -> ZoneParams:
    if not isinstance(k, Generator):
        k = Generator(k)
    if k.l1 > p.K0:
        raise DomainError(f"|k|₁ = {k.l1} exceeds K0 = {p.K0}")
    if not beta > 0:
        raise DomainError("beta must be positive")

    n = p.n
    s = f.s
    c_s = max(1.0, 1 / s)
    c2 = c2_constant(n)
    R = p.alpha / k.norm_squared
    epsilon_k = 2 * p.epsilon / k.norm_squared
    low_mode = k.l1 < cutoff_N(delta, s, n)
    coefficient = abs(f.mode(k.components))
    s_star = s * (1 - 1 / p.K)

    if low_mode:
        chi_k, beta_bar = 1.0, epsilon_k * beta
        s_bar, s_hat = min(s / 2, 1.0), k.l1 * s_star * (1 - 1 / p.K)
    else:
        chi_k, beta_bar = coefficient, epsilon_k * coefficient
        s_bar, s_hat = 1.0, 1.0

    return ZoneParams(
        generator=k,
        covering=p,
        frame=bezout_complete(k),
        low_mode=low_mode,
        R=R,
        r=R / c2,
        epsilon_k=epsilon_k,
        chi_k=chi_k,
        beta_bar=beta_bar,
        epsilon_bar=c_s * epsilon_k * chi_k,
        s_bar=s_bar,
        s_hat=s_hat,
        mu=float(p.K) ** (-5 * n),
        kappa=max(c2, 4 * c_s, c_s / beta),
        c_s=c_s
    )


def external_domain_contains(p_hat, zone: ZoneParams) -> bool:
    """Membership of p̂ in D̂: |P⊥_k Âᵀp̂| < 1 and min_ℓ |(P⊥_k Âᵀp̂)·ℓ| ≥ 3αK/|k|."""
    k = zone.generator
    kv = k.as_array()
    y = zone.frame.hat.T.astype(float) @ np.asarray(p_hat, dtype=float)
    y = y - (y @ kv) * kv / k.norm_squared

    if np.linalg.norm(y) >= 1:
        return False

    ell = generator_matrix([g for g in zone.covering.generators if g != k], k.n)
    threshold = zone.covering.threshold_multiplier * zone.covering.alpha * zone.covering.K / k.norm

    return bool(ell.size == 0 or np.min(np.abs(ell @ y)) >= threshold)


@define(frozen=True)
class TransverseForm:
    generator: Generator = field(kw_only=True)
    hessian: np.ndarray = field(kw_only=True, eq=False)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.hessian))

    @property
    def d_k(self) -> float:
        return float(self.generator.norm_squared ** (-self.generator.n))

    @property
    def hessian_norm(self) -> float:
        return float(np.max(np.abs(self.hessian)))

    @property
    def hessian_bound(self) -> float:
        return 2 * self.generator.n ** 5 + 1

    @property
    def positive_definite(self) -> bool:
        try:
            np.linalg.cholesky(self.hessian)
            return True
        except np.linalg.LinAlgError:
            return False

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "hessian_bound": self.hessian_norm <= self.hessian_bound,
            "determinant_bound": self.determinant >= self.d_k,
            "positive_definite": self.positive_definite
        }

    def value(self, p_hat) -> float:
        p_hat = np.asarray(p_hat, dtype=float)

        return float(p_hat @ self.hessian @ p_hat / 2)

    def to_dict(self) -> dict:
        return {
            "k": list(self.generator.components),
            "hessian": self.hessian.tolist(),
            "determinant": self.determinant,
            "d_k": self.d_k,
            "checks": self.checks
        }


def transverse_form(k: Generator, frame: BezoutFrame = None) -> TransverseForm:
    """Hessian 2(Â P⊥_k Âᵀ)/|k|² of ĥ(p̂) = |P⊥_k Âᵀ p̂|²/|k|²."""
    if not isinstance(k, Generator):
        k = Generator(k)

    frame = frame or bezout_complete(k)
    kv = k.as_array()
    projector = np.eye(k.n) - np.outer(kv, kv) / k.norm_squared
    hat = frame.hat.astype(float)

    return TransverseForm(generator=k, hessian=2 * hat @ projector @ hat.T / k.norm_squared)
