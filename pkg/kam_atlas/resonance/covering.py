from __future__ import annotations
import logging
from enum import Enum
from typing import Optional
import numpy as np
from attr import define, field, Factory
from kam_atlas.errors import CoveringHypothesisError, DomainError
from kam_atlas.resonance.generators import Generator, enumerate_generators, generator_matrix

DEFAULT_THRESHOLD_MULTIPLIER = 3.0


class ZoneTag(Enum):
    NON_RESONANT = 0
    SIMPLY_RESONANT = 1
    DOUBLY_RESONANT = 2


@define(frozen=True)
class CoveringParams:
    """
    Thresholds of the resonance covering of the action ball.

    `alpha_exponent` defaults to ν = 9n/2 + 2; desk-scale studies override it so that α stays
    below one at measurable ε.
    """

    n: int = field(kw_only=True)
    epsilon: float = field(kw_only=True)
    K0: int = field(kw_only=True)
    K: int = field(kw_only=True)
    alpha_exponent: Optional[float] = field(default=None, kw_only=True)
    threshold_multiplier: float = field(default=DEFAULT_THRESHOLD_MULTIPLIER, kw_only=True)
    _low_generators: list[Generator] = field(
        init=False, repr=False, eq=False, default=Factory(lambda self: enumerate_generators(self.n, self.K0), takes_self=True)
    )
    _generators: list[Generator] = field(
        init=False, repr=False, eq=False, default=Factory(lambda self: enumerate_generators(self.n, self.K), takes_self=True)
    )

    @K0.validator
    def validate_k0(self, _, K0: int) -> None:
        if K0 < 2:
            raise DomainError("K0 must be at least 2")

    @K.validator
    def validate_k(self, _, K: int) -> None:
        if K < 6 * self.K0:
            raise DomainError(f"K must be at least 6·K0 = {6 * self.K0}")

    @epsilon.validator
    def validate_epsilon(self, _, epsilon: float) -> None:
        if not epsilon > 0:
            raise DomainError("epsilon must be positive")

    @property
    def nu(self) -> float:
        return 9 * self.n / 2 + 2 if self.alpha_exponent is None else float(self.alpha_exponent)

    @property
    def alpha(self) -> float:
        return float(np.sqrt(self.epsilon) * self.K ** self.nu)

    @property
    def gamma(self) -> float:
        return 2 * self.nu + 2 * self.n

    @property
    def r_o(self) -> float:
        return self.alpha / (16 * self.K0)

    def r_k(self, k: Generator) -> float:
        return self.alpha / k.norm

    @property
    def low_generators(self) -> list[Generator]:
        return self._low_generators

    @property
    def generators(self) -> list[Generator]:
        return self._generators

    def require_small_alpha(self) -> None:
        if self.alpha >= 1:
            raise CoveringHypothesisError(f"alpha = {self.alpha:.3e} ≥ 1: covering hypotheses violated")

        if self.alpha >= self.K ** (-self.n):
            logging.warning(f"alpha = {self.alpha:.3e} exceeds K^-n; zones may overlap at this scale")

    def with_epsilon(self, epsilon: float) -> CoveringParams:
        return CoveringParams(
            n=self.n,
            epsilon=epsilon,
            K0=self.K0,
            K=self.K,
            alpha_exponent=self.alpha_exponent,
            threshold_multiplier=self.threshold_multiplier
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "K0": self.K0,
            "K": self.K,
            "nu": self.nu,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "r_o": self.r_o,
            "threshold_multiplier": self.threshold_multiplier
        }


@define(frozen=True)
class ZoneLabel:
    tag: ZoneTag = field(kw_only=True)
    generator: Optional[Generator] = field(default=None, kw_only=True)
    qualifying: tuple[Generator, ...] = field(factory=tuple, kw_only=True)
    # min_k |y·k| − α/2 over G_{K0}; positive iff non-resonant
    nonresonant_margin: float = field(kw_only=True)
    # for the reported k: min_ℓ |P⊥_k y·ℓ| − threshold
    transverse_margin: Optional[float] = field(default=None, kw_only=True)

    def to_row(self, y) -> dict:
        row = {f"y{i + 1}": float(c) for i, c in enumerate(y)}
        row.update({
            "label": self.tag.name,
            "k": "" if self.generator is None else str(self.generator),
            "nonresonant_margin": self.nonresonant_margin,
            "transverse_margin": "" if self.transverse_margin is None else self.transverse_margin
        })

        return row


def _transverse_minima(y: np.ndarray, dots_k: np.ndarray, k: Generator, ell: np.ndarray, dots_ell: np.ndarray) -> np.ndarray:
    # min over ℓ ∈ G_K \ Zk of |P⊥_k y·ℓ| for each row of y
    kv = k.as_array()
    projected = dots_ell - np.outer(dots_k, ell @ kv) / k.norm_squared
    parallel = np.all(np.abs(ell - kv) == 0, axis=1)
    projected = np.abs(projected)
    projected[:, parallel] = np.inf

    return projected.min(axis=1) if projected.shape[1] else np.full(len(y), np.inf)


def classify_many(points, p: CoveringParams) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized classification. Returns (tags, witness) where tags hold ZoneTag values and
    witness the index into p.low_generators of the reported k (−1 otherwise).
    """
    y = np.atleast_2d(np.asarray(points, dtype=float))
    low = generator_matrix(p.low_generators, p.n)
    ell = generator_matrix(p.generators, p.n)
    alpha = p.alpha
    dots_low = np.abs(y @ low.T)
    tags = np.full(len(y), ZoneTag.DOUBLY_RESONANT.value, dtype=np.int8)
    witness = np.full(len(y), -1, dtype=np.int64)

    nonresonant = np.all(dots_low > alpha / 2, axis=1)
    tags[nonresonant] = ZoneTag.NON_RESONANT.value
    candidates = np.nonzero(~nonresonant & np.any(dots_low < alpha, axis=1))[0]

    if candidates.size:
        sub = y[candidates]
        dots_ell = sub @ ell.T

        for index, k in enumerate(p.low_generators):
            undecided = witness[candidates] < 0
            near = (np.abs(sub @ k.as_array()) < alpha) & undecided

            if not near.any():
                continue

            rows = np.nonzero(near)[0]
            minima = _transverse_minima(sub[rows], sub[rows] @ k.as_array(), k, ell, dots_ell[rows])
            simple = minima > p.threshold_multiplier * alpha * p.K / k.norm
            chosen = candidates[rows[simple]]
            tags[chosen] = ZoneTag.SIMPLY_RESONANT.value
            witness[chosen] = index

    return tags, witness


def classify(y, p: CoveringParams) -> ZoneLabel:
    y = np.asarray(y, dtype=float)

    if y.shape != (p.n,):
        raise DomainError(f"action point must have {p.n} components")
    if np.linalg.norm(y) >= 1:
        raise DomainError("action point must lie in the open unit ball")

    alpha = p.alpha
    low = p.low_generators
    ell = generator_matrix(p.generators, p.n)
    dots = np.array([abs(y @ k.as_array()) for k in low])
    nonresonant_margin = float(dots.min() - alpha / 2) if len(low) else float("inf")

    if nonresonant_margin > 0:
        return ZoneLabel(tag=ZoneTag.NON_RESONANT, nonresonant_margin=nonresonant_margin)

    qualifying = []
    margins = []

    for k, dot in zip(low, dots):
        if dot >= alpha:
            continue

        minimum = _transverse_minima(y[None, :], np.array([y @ k.as_array()]), k, ell, (y @ ell.T)[None, :])[0]
        margin = float(minimum - p.threshold_multiplier * alpha * p.K / k.norm)

        if margin > 0:
            qualifying.append(k)
            margins.append(margin)

    if qualifying:
        return ZoneLabel(
            tag=ZoneTag.SIMPLY_RESONANT,
            generator=qualifying[0],
            qualifying=tuple(qualifying),
            nonresonant_margin=nonresonant_margin,
            transverse_margin=margins[0]
        )

    return ZoneLabel(tag=ZoneTag.DOUBLY_RESONANT, nonresonant_margin=nonresonant_margin)
