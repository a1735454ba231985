from __future__ import annotations
import json
from pathlib import Path
from typing import Optional
from attr import define, evolve, field
from schema import And, Or, Schema, SchemaError, Use
from schema import Optional as Maybe
from kam_atlas.errors import ConfigError
from kam_atlas.fourier.io import load_potential, potential_from_dict
from kam_atlas.fourier.potential import FourierPotential

SCHEMA_VERSION = "1"
SECTIONS = ("genericity", "covering", "portraits", "actions", "fits", "twist", "scaling", "budget", "logring", "kam")

Positive = And(Or(int, float), lambda x: x > 0, error="must be a positive number")
PositiveInt = And(int, lambda x: x > 0, error="must be a positive integer")
Fraction01 = And(Or(int, float), lambda x: 0 < x < 1, error="must lie in (0, 1)")

SECTION_SCHEMAS = {
    "covering": Schema({
        Maybe("epsilons", default=[1e-5, 1e-6, 1e-7]): [Positive],
        Maybe("K0", default=4): And(int, lambda x: x >= 2),
        Maybe("K", default=24): PositiveInt,
        Maybe("alpha_exponent", default=None): Or(None, And(Or(int, float), lambda x: x >= 0)),
        Maybe("threshold_multiplier", default=3.0): Positive,
        Maybe("c2", default=None): Or(None, Positive),
        Maybe("census_samples", default=2 ** 18): And(int, lambda x: x >= 1000)
    }),
    "portraits": Schema({
        Maybe("max_generators", default=4): PositiveInt,
        Maybe("kappa", default=None): Or(None, Positive)
    }),
    "quadrature": Schema({
        Maybe("epsrel", default=1e-12): Positive,
        Maybe("limit", default=200): PositiveInt,
        Maybe("profile_samples", default=32): PositiveInt
    }),
    "fits": Schema({
        Maybe("degree", default=3): PositiveInt,
        Maybe("samples", default=48): PositiveInt,
        Maybe("zmin", default=1e-3): Positive,
        Maybe("zmax", default=0.1): Positive,
        Maybe("zmax_minimum", default=2e-2): Positive,
        Maybe("tolerance", default=1e-6): Positive
    }),
    "twist": Schema({
        Maybe("m_max", default=3): PositiveInt,
        Maybe("samples", default=33): PositiveInt,
        Maybe("interval", default=[0.05, 0.95]): And([Use(float)], lambda x: len(x) == 2 and 0 < x[0] < x[1] < 1)
    }),
    "monte_carlo": Schema({
        Maybe("samples", default=10 ** 6): And(int, lambda x: x >= 1000),
        Maybe("seed", default=0): And(int, lambda x: 0 <= x < 2 ** 64),
        Maybe("workers", default=1): PositiveInt,
        Maybe("slope_tolerance", default=0.1): Positive
    }),
    "budget": Schema({
        Maybe("epsilon", default=None): Or(None, Fraction01),
        Maybe("c", default=10.0): Positive,
        Maybe("c2", default=1.0): Positive,
        Maybe("a", default=0.5): Fraction01,
        Maybe("K_list", default=None): Or(None, [Positive])
    }),
    "logring": Schema({
        Maybe("n_max", default=3): And(int, lambda x: x >= 2),
        Maybe("m_max", default=3): And(int, lambda x: x >= 0),
        Maybe("k_max", default=9): And(int, lambda x: x >= 0)
    }),
    "kam": Schema({
        Maybe("M", default=2.0): Positive,
        Maybe("d", default=0.5): Positive,
        Maybe("r", default=1.0): Positive,
        Maybe("s_bar", default=1.0): Positive,
        Maybe("C_kam", default=1.0): Positive,
        Maybe("domain_diameter", default=2.0): Positive
    })
}

STUDY_SCHEMA = Schema({
    Maybe("name", default="study"): str,
    "potential": Or({"file": str}, dict),
    Maybe("delta", default=1.0): And(Positive, lambda x: x <= 1),
    "beta": Positive,
    Maybe("output", default="out"): str,
    Maybe("sections", default={}): {Maybe(Or(*SECTIONS)): bool},
    **{Maybe(name, default={}): dict for name in SECTION_SCHEMAS}
})


@define(frozen=True)
class CoveringSection:
    epsilons: list[float] = field(kw_only=True)
    K0: int = field(kw_only=True)
    K: int = field(kw_only=True)
    alpha_exponent: Optional[float] = field(kw_only=True)
    threshold_multiplier: float = field(kw_only=True)
    c2: Optional[float] = field(kw_only=True)
    census_samples: int = field(kw_only=True)


@define(frozen=True)
class PortraitSection:
    max_generators: int = field(kw_only=True)
    kappa: Optional[float] = field(kw_only=True)


@define(frozen=True)
class QuadratureSection:
    epsrel: float = field(kw_only=True)
    limit: int = field(kw_only=True)
    profile_samples: int = field(kw_only=True)


@define(frozen=True)
class FitSection:
    degree: int = field(kw_only=True)
    samples: int = field(kw_only=True)
    zmin: float = field(kw_only=True)
    zmax: float = field(kw_only=True)
    zmax_minimum: float = field(kw_only=True)
    tolerance: float = field(kw_only=True)


@define(frozen=True)
class TwistSection:
    m_max: int = field(kw_only=True)
    samples: int = field(kw_only=True)
    interval: list[float] = field(kw_only=True)


@define(frozen=True)
class MonteCarloSection:
    samples: int = field(kw_only=True)
    seed: int = field(kw_only=True)
    workers: int = field(kw_only=True)
    slope_tolerance: float = field(kw_only=True)


@define(frozen=True)
class BudgetSection:
    epsilon: Optional[float] = field(kw_only=True)
    c: float = field(kw_only=True)
    c2: float = field(kw_only=True)
    a: float = field(kw_only=True)
    K_list: Optional[list[float]] = field(kw_only=True)


@define(frozen=True)
class LogRingSection:
    n_max: int = field(kw_only=True)
    m_max: int = field(kw_only=True)
    k_max: int = field(kw_only=True)


@define(frozen=True)
class KamSection:
    M: float = field(kw_only=True)
    d: float = field(kw_only=True)
    r: float = field(kw_only=True)
    s_bar: float = field(kw_only=True)
    C_kam: float = field(kw_only=True)
    domain_diameter: float = field(kw_only=True)


SECTION_TYPES = {
    "covering": CoveringSection,
    "portraits": PortraitSection,
    "quadrature": QuadratureSection,
    "fits": FitSection,
    "twist": TwistSection,
    "monte_carlo": MonteCarloSection,
    "budget": BudgetSection,
    "logring": LogRingSection,
    "kam": KamSection
}


@define(frozen=True)
class StudyConfig:
    name: str = field(kw_only=True)
    potential: FourierPotential = field(kw_only=True, repr=False)
    delta: float = field(kw_only=True)
    beta: float = field(kw_only=True)
    output: Path = field(kw_only=True)
    enabled: dict[str, bool] = field(factory=dict, kw_only=True)
    covering: CoveringSection = field(kw_only=True)
    portraits: PortraitSection = field(kw_only=True)
    quadrature: QuadratureSection = field(kw_only=True)
    fits: FitSection = field(kw_only=True)
    twist: TwistSection = field(kw_only=True)
    monte_carlo: MonteCarloSection = field(kw_only=True)
    budget: BudgetSection = field(kw_only=True)
    logring: LogRingSection = field(kw_only=True)
    kam: KamSection = field(kw_only=True)

    def is_enabled(self, section: str) -> bool:
        return self.enabled.get(section, True)

    def with_overrides(self, output: Optional[str | Path] = None, seed: Optional[int] = None) -> StudyConfig:
        config = self

        if seed is not None:
            if not 0 <= seed < 2 ** 64:
                raise ConfigError("seed must be an unsigned 64-bit integer")

            config = evolve(config, monte_carlo=evolve(config.monte_carlo, seed=seed))

        if output is not None:
            config = evolve(config, output=Path(output))

        return config


def _potential(document: dict, base: Path) -> FourierPotential:
    if set(document) == {"file"}:
        path = Path(document["file"])

        return load_potential(path if path.is_absolute() else base / path)

    return potential_from_dict(document)


def config_from_dict(document: dict, base: Path = Path(".")) -> StudyConfig:
    try:
        data = STUDY_SCHEMA.validate(document)
        sections = {
            name: SECTION_TYPES[name](**schema.validate(data[name])) for name, schema in SECTION_SCHEMAS.items()
        }
    except SchemaError as e:
        raise ConfigError(f"invalid study config: {e}") from e

    output = Path(data["output"])

    return StudyConfig(
        name=data["name"],
        potential=_potential(data["potential"], base),
        delta=float(data["delta"]),
        beta=float(data["beta"]),
        output=output if output.is_absolute() else base / output,
        enabled=dict(data["sections"]),
        **sections
    )


def load_config(path: str | Path) -> StudyConfig:
    path = Path(path)

    if not path.exists():
        raise ConfigError(f"config file not found: {path}")

    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e

    return config_from_dict(document, base=path.parent)
