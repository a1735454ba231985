from __future__ import annotations
import logging
from typing import Optional, Sequence
import numpy as np
from attr import define, field, Factory
from kam_atlas.errors import DomainError, NotMorseError
from kam_atlas.fourier.morse import morse_analyze
from kam_atlas.fourier.series import OneDSeries, REALITY_TOLERANCE
from kam_atlas.resonance.generators import Generator, enumerate_generators

PROTOTYPE_CAP = 32


def _normalize_modes(modes: dict) -> dict[tuple[int, ...], complex]:
    return {tuple(int(c) for c in k): complex(v) for k, v in modes.items() if complex(v) != 0}


@define(frozen=True)
class FourierPotential:
    n: int = field(kw_only=True)
    s: float = field(kw_only=True)
    modes: dict[tuple[int, ...], complex] = field(kw_only=True, converter=_normalize_modes)
    generator: Optional[dict] = field(default=None, kw_only=True)
    _wavevectors: np.ndarray = field(
        init=False,
        repr=False,
        eq=False,
        default=Factory(
            lambda self: np.array(list(self.modes), dtype=float).reshape(len(self.modes), self.n), takes_self=True
        )
    )
    _amplitudes: np.ndarray = field(
        init=False,
        repr=False,
        eq=False,
        default=Factory(lambda self: np.array(list(self.modes.values()), dtype=complex), takes_self=True)
    )

    @n.validator
    def validate_n(self, _, n: int) -> None:
        if n < 2:
            raise DomainError("potential dimension must be at least 2")

    @s.validator
    def validate_s(self, _, s: float) -> None:
        if not s > 0:
            raise DomainError("decay s must be positive")

    @modes.validator
    def validate_modes(self, _, modes: dict[tuple[int, ...], complex]) -> None:
        for k, c in modes.items():
            if len(k) != self.n:
                raise DomainError(f"mode {k} has wrong dimension (expected {self.n})")
            if not any(k):
                raise DomainError("potential must have zero average (no mode at k = 0)")

            partner = modes.get(tuple(-c for c in k), 0j)

            if abs(partner - c.conjugate()) > REALITY_TOLERANCE * max(1.0, abs(c)):
                raise DomainError(f"reality violated at k = {k}")

    @classmethod
    def from_half_modes(cls, n: int, s: float, modes: dict, **kwargs) -> FourierPotential:
        full = {}

        for k, c in modes.items():
            k = tuple(int(x) for x in k)
            full[k] = complex(c)
            full[tuple(-x for x in k)] = complex(c).conjugate()

        return cls(n=n, s=s, modes=full, **kwargs)

    @property
    def support_radius(self) -> int:
        return max((sum(abs(c) for c in k) for k in self.modes), default=0)

    @property
    def norm_s(self) -> float:
        return max((abs(c) * np.exp(sum(abs(x) for x in k) * self.s) for k, c in self.modes.items()), default=0.0)

    def mode(self, k: Sequence[int]) -> complex:
        return self.modes.get(tuple(int(c) for c in k), 0j)

    def evaluate_complex(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)

        if not self.modes:
            return np.zeros(x.shape[:-1], dtype=complex)

        return np.exp(1j * (x @ self._wavevectors.T)) @ self._amplitudes

    def evaluate(self, x):
        return np.real(self.evaluate_complex(x))


def evaluate(f: FourierPotential, x) -> float:
    return f.evaluate(x)


def prototype(n: int, s: float, cap: int = PROTOTYPE_CAP) -> FourierPotential:
    """f = 2 Σ_{k∈G, |k|₁≤cap} e^{−|k|₁ s} cos k·x."""
    modes = {g.components: np.exp(-g.l1 * s) for g in enumerate_generators(n, cap)}

    return FourierPotential.from_half_modes(n, s, modes, generator={"rule": "prototype", "cap": cap})


def project(f: FourierPotential, k: Generator) -> OneDSeries:
    if not isinstance(k, Generator):
        k = Generator(k)
    if k.n != f.n:
        raise DomainError(f"generator dimension {k.n} does not match potential dimension {f.n}")

    coefficients = {}

    for wavevector, c in f.modes.items():
        j = k.multiple_of(wavevector)

        if j:
            coefficients[j] = c

    return OneDSeries(coefficients)


def single_line(f: FourierPotential) -> Optional[Generator]:
    """The generator carrying every mode of f when all modes lie on one resonance line, else None."""
    if not f.modes:
        return None

    line = Generator.of(next(iter(f.modes)))

    return line if all(line.multiple_of(k) for k in f.modes) else None


def cutoff_N(delta: float, s: float, n: int) -> float:
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    if not s > 0:
        raise DomainError("s must be positive")
    if n < 1:
        raise DomainError("n must be positive")

    log_cn = 44 * np.log(2) + n * np.log(2 * n / np.e)

    return float(2 * max(1.0, (log_cn - n * np.log(s) - np.log(delta)) / s))


@define(frozen=True)
class GenericityEntry:
    generator: Generator = field(kw_only=True)
    clause: str = field(kw_only=True)
    holds: bool = field(kw_only=True)
    coefficient_margin: float = field(kw_only=True)
    morse_beta: Optional[float] = field(default=None, kw_only=True)
    count_bound_holds: Optional[bool] = field(default=None, kw_only=True)
    detail: str = field(default="", kw_only=True)

    def to_dict(self) -> dict:
        return {
            "k": list(self.generator.components),
            "clause": self.clause,
            "holds": self.holds,
            "coefficient_margin": self.coefficient_margin,
            "morse_beta": self.morse_beta,
            "count_bound_holds": self.count_bound_holds,
            "detail": self.detail
        }


@define(frozen=True)
class GenericityReport:
    cutoff: float = field(kw_only=True)
    delta: float = field(kw_only=True)
    beta: float = field(kw_only=True)
    K: int = field(kw_only=True)
    entries: list[GenericityEntry] = field(factory=list, kw_only=True)

    @property
    def passed(self) -> bool:
        return all(e.holds for e in self.entries)

    @property
    def first_failure(self) -> Optional[GenericityEntry]:
        return next((e for e in self.entries if not e.holds), None)

    def to_dict(self) -> dict:
        failure = self.first_failure

        return {
            "passed": self.passed,
            "cutoff": self.cutoff,
            "delta": self.delta,
            "beta": self.beta,
            "K": self.K,
            "first_failure": None if failure is None else failure.to_dict(),
            "entries": [e.to_dict() for e in self.entries]
        }


def check_genericity(f: FourierPotential, delta: float, beta: float, K: int) -> GenericityReport:
    cutoff = cutoff_N(delta, f.s, f.n)
    entries = []

    for k in enumerate_generators(f.n, K):
        coefficient = abs(f.mode(k.components))
        coefficient_margin = float(coefficient * k.l1 ** f.n * np.exp(k.l1 * f.s) / delta)

        if k.l1 >= cutoff:
            holds = coefficient_margin >= 1
            entries.append(
                GenericityEntry(
                    generator=k,
                    clause="coefficient",
                    holds=holds,
                    coefficient_margin=coefficient_margin,
                    detail="" if holds else ("missing mode" if coefficient == 0 else "coefficient below bound")
                )
            )
        else:
            series = project(f, k)

            if series.is_empty:
                entries.append(
                    GenericityEntry(
                        generator=k, clause="morse", holds=False, coefficient_margin=coefficient_margin, detail="missing mode"
                    )
                )
                continue

            try:
                profile = morse_analyze(series)
                found = profile.beta

                if found < beta:
                    detail = f"projection is only {found:.3e}-Morse"
                elif not profile.count_bound_holds:
                    detail = f"{profile.count} critical points exceed the bound {profile.count_bound:.3f}"
                else:
                    detail = ""

                entries.append(
                    GenericityEntry(
                        generator=k,
                        clause="morse",
                        holds=not detail,
                        coefficient_margin=coefficient_margin,
                        morse_beta=found,
                        count_bound_holds=profile.count_bound_holds,
                        detail=detail
                    )
                )
            except NotMorseError as e:
                entries.append(
                    GenericityEntry(
                        generator=k, clause="morse", holds=False, coefficient_margin=coefficient_margin, detail=str(e)
                    )
                )

    report = GenericityReport(cutoff=cutoff, delta=delta, beta=beta, K=K, entries=entries)

    if not report.passed:
        logging.info(f"genericity check failed first at k = {report.first_failure.generator}")

    return report
