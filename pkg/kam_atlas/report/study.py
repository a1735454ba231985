from __future__ import annotations
import logging
from enum import Enum
from pathlib import Path
from typing import Callable, Optional
import numpy as np
import stringcase
from attr import define, field, Factory
from kam_atlas.actions.profile import ActionProfile, build_profile
from kam_atlas.actions.separatrix import separatrix_fit
from kam_atlas.figures import portrait_figure, scaling_figure, svg_bytes
from kam_atlas.fourier.potential import check_genericity, project, single_line
from kam_atlas.logring.element import LogElement
from kam_atlas.logring.operator import compose_apply, expand_operator, leading_constant, operator_order
from kam_atlas.measure.budget import budget_shape
from kam_atlas.measure.montecarlo import zone_census
from kam_atlas.measure.scaling import scaling_study
from kam_atlas.portrait.bounds import phase_bounds
from kam_atlas.portrait.regions import Portrait, Region, RegionKind, decompose
from kam_atlas.portrait.standard_form import StandardForm1D, validate
from kam_atlas.report.config import SCHEMA_VERSION, SECTIONS, LogRingSection, StudyConfig
from kam_atlas.report.export import provenance, write_bytes, write_csv, write_json
from kam_atlas.report.kam import KamThresholdInput, kam_threshold
from kam_atlas.resonance.covering import CoveringParams, ZoneTag
from kam_atlas.resonance.generators import Generator, enumerate_generators
from kam_atlas.resonance.zones import transverse_form, zone_params
from kam_atlas.twist.birkhoff import birkhoff_delta
from kam_atlas.twist.certificate import certify_nondegeneracy
from kam_atlas.twist.field import twist_field
from kam_atlas.twist.normalized import normalized_F

GOLDEN_OPERATOR = "z^6*D^7 + 18*z^5*D^6 + 98*z^4*D^5 + 184*z^3*D^4 + 100*z^2*D^3 + 8*z*D^2"
JENSEN_TOLERANCE = 1e-6


class SectionStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@define(frozen=True)
class SectionResult:
    name: str = field(kw_only=True)
    status: SectionStatus = field(kw_only=True)
    summary: dict = field(factory=dict, kw_only=True)
    files: list[str] = field(factory=list, kw_only=True)
    message: str = field(default="", kw_only=True)

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "message": self.message,
            "files": sorted(self.files),
            "summary": self.summary
        }


def _result(name: str, passed: bool, summary: dict, files: list[Path], message: str = "") -> SectionResult:
    return SectionResult(
        name=name,
        status=SectionStatus.PASSED if passed else SectionStatus.FAILED,
        summary=summary,
        files=[f.name for f in files],
        message=message
    )


def generator_label(k: Generator) -> str:
    return "k" + "_".join(str(c).replace("-", "m") for c in k.components)


@define
class StudyContext:
    """Shared state of one study run; portraits and action profiles are built once per generator."""

    config: StudyConfig = field()
    _portraits: dict[Generator, Portrait] = field(factory=dict, init=False)
    _profiles: dict[tuple[Generator, int], ActionProfile] = field(factory=dict, init=False)
    _generators: list[Generator] = field(
        init=False, default=Factory(lambda self: self._select_generators(), takes_self=True)
    )

    @property
    def potential(self):
        return self.config.potential

    @property
    def line(self) -> Optional[Generator]:
        return single_line(self.potential)

    @property
    def generators(self) -> list[Generator]:
        return self._generators

    def _select_generators(self) -> list[Generator]:
        line = single_line(self.config.potential)

        if line is not None:
            return [line]

        low = [
            k for k in enumerate_generators(self.config.potential.n, self.config.covering.K0)
            if not project(self.config.potential, k).is_empty
        ]

        return sorted(low, key=lambda k: (k.l1, k.components))[: self.config.portraits.max_generators]

    def portrait(self, k: Generator) -> Portrait:
        if k not in self._portraits:
            form = StandardForm1D.from_reference(project(self.potential, k), kappa=self.config.portraits.kappa)
            self._portraits[k] = decompose(form)

        return self._portraits[k]

    def profile(self, k: Generator, region: Region) -> ActionProfile:
        key = (k, region.index)

        if key not in self._profiles:
            quadrature = self.config.quadrature
            self._profiles[key] = build_profile(
                region,
                samples=quadrature.profile_samples,
                workers=self.config.monte_carlo.workers,
                epsrel=quadrature.epsrel,
                limit=quadrature.limit
            )

        return self._profiles[key]

    def covering_params(self, epsilon: float) -> CoveringParams:
        covering = self.config.covering

        return CoveringParams(
            n=self.potential.n,
            epsilon=epsilon,
            K0=covering.K0,
            K=covering.K,
            alpha_exponent=covering.alpha_exponent,
            threshold_multiplier=covering.threshold_multiplier
        )


def run_genericity(context: StudyContext, directory: Path) -> SectionResult:
    config = context.config
    report = check_genericity(config.potential, config.delta, config.beta, config.covering.K0)
    path = write_json(directory / "genericity.json", report.to_dict())
    failure = report.first_failure
    summary = {
        "cutoff": provenance(report.cutoff, "cutoff_N"),
        "generators": provenance(len(report.entries), "enumerate_generators"),
        "passed": provenance(report.passed, "check_genericity"),
        "count_bound_holds": provenance(all(e.count_bound_holds is not False for e in report.entries), "morse_analyze")
    }

    return _result("genericity", report.passed, summary, [path], "" if failure is None else failure.detail)


def run_covering(context: StudyContext, directory: Path) -> SectionResult:
    if context.line is not None:
        return SectionResult(name="covering", status=SectionStatus.SKIPPED, message="potential lies on one resonance line")

    config = context.config
    rows, zones, summary = [], [], {}

    for epsilon in sorted(config.covering.epsilons, reverse=True):
        params = context.covering_params(epsilon)
        census = zone_census(params, config.covering.census_samples, config.monte_carlo.seed, config.monte_carlo.workers)

        for tag, estimate in census.items():
            rows.append({"epsilon": epsilon, "alpha": params.alpha, "zone": tag.name, **estimate.to_dict()})

        zones.append({
            "params": params.to_dict(),
            "zones": [zone_params(k, params, config.potential, config.beta, config.delta).to_dict() for k in context.generators]
        })
        summary[f"alpha_{epsilon:.0e}"] = provenance(params.alpha, "CoveringParams.alpha")
        summary[f"double_{epsilon:.0e}"] = provenance(
            census[ZoneTag.DOUBLY_RESONANT].value, "zone_census", census[ZoneTag.DOUBLY_RESONANT].stderr
        )

    files = [write_csv(directory / "covering.csv", rows), write_json(directory / "zones.json", zones)]

    return _result("covering", True, summary, files)


def run_portraits(context: StudyContext, directory: Path) -> SectionResult:
    files, summary, passed = [], {}, True

    for k in context.generators:
        label = generator_label(k)
        portrait = context.portrait(k)
        report = validate(portrait.form)
        bounds = phase_bounds(portrait.form)
        passed = passed and report.passed and bounds.holds and portrait.profile.count_bound_holds

        files.append(
            write_json(
                directory / f"portrait_{label}.json",
                {
                    "k": list(k.components),
                    "form": portrait.form.to_dict(),
                    "validation": report.to_dict(),
                    "phase_bounds": bounds.to_dict(),
                    "morse": portrait.profile.to_dict(),
                    "portrait": portrait.to_dict()
                }
            )
        )
        files.append(write_bytes(directory / f"portrait_{label}.svg", svg_bytes(portrait_figure(portrait))))
        summary[label] = provenance(len(portrait.regions), "decompose")

    return _result("portraits", passed, summary, files)


def run_actions(context: StudyContext, directory: Path) -> SectionResult:
    files, summary, passed = [], {}, True

    for k in context.generators:
        label = generator_label(k)
        rows = []

        for region in context.portrait(k).regions:
            profile = context.profile(k, region)
            passed = passed and profile.is_monotone
            rows.extend({"region": region.index, "kind": region.kind.value, **row} for row in profile.rows())
            summary[f"{label}_r{region.index}_floor"] = provenance(profile.derivative_floor, "ActionProfile.derivative_floor")

        files.append(write_csv(directory / f"actions_{label}.csv", rows))

    return _result("actions", passed, summary, files, "" if passed else "action is not monotone in energy")


def _fit_sides(region: Region) -> list[tuple[str, bool]]:
    """(side, critical point is a minimum) pairs with a separatrix or a well bottom to fit against."""
    if region.is_inner:
        return [("upper", False), ("lower", region.kind == RegionKind.INNER_ODD)]

    return [("lower", False)]


def run_fits(context: StudyContext, directory: Path) -> SectionResult:
    settings = context.config.fits
    fits, summary, passed = [], {}, True

    for k in context.generators:
        label = generator_label(k)

        for region in context.portrait(k).regions:
            integrator = context.profile(k, region).integrator
            width = (region.energy_plus - region.energy_minus) / region.scale

            for side, minimum in _fit_sides(region):
                zmax = min(settings.zmax_minimum if minimum else settings.zmax, 0.5 * min(1.0, width))

                if settings.zmin >= zmax:
                    logging.warning(f"region {region.index} of {k} is too narrow for a fit on the {side} side")
                    continue

                fit = separatrix_fit(
                    region,
                    side,
                    zmin=settings.zmin,
                    zmax=zmax,
                    degree=settings.degree,
                    samples=settings.samples,
                    integrator=integrator
                )
                tolerance = settings.tolerance * np.sqrt(region.scale)
                accepted = fit.sign_condition_holds and fit.residual <= tolerance
                passed = passed and accepted
                fits.append({"k": list(k.components), "accepted": accepted, **fit.to_dict()})
                summary[f"{label}_r{region.index}_{side}"] = provenance(fit.residual, "separatrix_fit", tolerance)

    return _result("fits", passed, summary, [write_json(directory / "fits.json", fits)])


def run_twist(context: StudyContext, directory: Path) -> SectionResult:
    settings = context.config.twist
    files, summary, passed, failures = [], {}, True, []

    for k in context.generators:
        label = generator_label(k)
        portrait = context.portrait(k)
        form = transverse_form(k)
        details = {"k": list(k.components), "transverse_form": form.to_dict(), "regions": [], "birkhoff": []}

        for region in portrait.regions:
            profile = context.profile(k, region)
            entry = {"index": region.index, "kind": region.kind.value}

            if region.is_inner:
                twist = normalized_F(profile, samples=settings.samples)

                try:
                    cert = certify_nondegeneracy(twist, settings.m_max, interval=tuple(settings.interval))
                    entry["certificate"] = cert.to_dict()
                    summary[f"{label}_r{region.index}_xi"] = provenance(cert.xi, "certify_nondegeneracy")
                except Exception as error:
                    passed = False
                    failures.append(f"{label} region {region.index}: {error}")

                entry["F"] = twist.to_dict()
            else:
                lowest = float(np.min(profile.twist))
                jensen = lowest >= 2 * (1 - JENSEN_TOLERANCE)
                passed = passed and jensen
                entry["jensen"] = {"min_twist": lowest, "holds": jensen}
                summary[f"{label}_r{region.index}_min_twist"] = provenance(lowest, "ActionProfile.twist", JENSEN_TOLERANCE)

            field_ = twist_field(profile, form)
            entry["field"] = field_.to_dict()
            files.append(write_csv(directory / f"twist_field_{label}_r{region.index}.csv", field_.rows()))
            details["regions"].append(entry)

        for index in range(1, portrait.profile.count, 2):
            details["birkhoff"].append(birkhoff_delta(portrait.form.reference, portrait.profile.points[index]).to_dict())

        files.append(write_json(directory / f"twist_{label}.json", details))

    return _result("twist", passed, summary, files, "; ".join(failures))


def run_scaling(context: StudyContext, directory: Path) -> SectionResult:
    if context.line is not None:
        return SectionResult(name="scaling", status=SectionStatus.SKIPPED, message="potential lies on one resonance line")

    config = context.config
    epsilons = config.covering.epsilons
    study = scaling_study(
        context.covering_params(max(epsilons)),
        epsilons,
        samples=config.monte_carlo.samples,
        seed=config.monte_carlo.seed,
        c2=config.covering.c2,
        workers=config.monte_carlo.workers
    )
    tolerance = config.monte_carlo.slope_tolerance
    passed = abs(study.slope - 1) <= tolerance and study.bound_holds is not False
    files = [
        write_csv(directory / "scaling.csv", [point.to_row() for point in study.points]),
        write_json(directory / "scaling.json", study.to_dict()),
        write_bytes(directory / "scaling.svg", svg_bytes(scaling_figure(study)))
    ]
    summary = {
        "slope": provenance(study.slope, "scipy.stats.linregress", tolerance),
        "slope_stderr": provenance(study.slope_stderr, "scipy.stats.linregress")
    }

    return _result("scaling", passed, summary, files, "" if passed else f"slope {study.slope:.4f} is not 1 ± {tolerance:g}")


def run_budget(context: StudyContext, directory: Path) -> SectionResult:
    config = context.config
    settings = config.budget
    epsilon = settings.epsilon if settings.epsilon is not None else min(config.covering.epsilons)
    K_list = settings.K_list or [config.covering.K0, config.covering.K, 2 * config.covering.K]
    shape = budget_shape(epsilon, config.potential.n, settings.c, c2=settings.c2, a=settings.a)
    files = [
        write_csv(directory / "budget.csv", [shape.row(K) for K in K_list]),
        write_json(directory / "budget.json", shape.to_dict(K_list))
    ]
    summary = {"crossover": provenance(shape.crossover, "scipy.optimize.brentq")}

    return _result("budget", True, summary, files)


def logring_payload(settings: LogRingSection) -> tuple[bool, dict]:
    operators, constants, passed = [], [], True

    for n in range(2, settings.n_max + 1):
        operator = expand_operator(n)
        sample = LogElement.monomial(n + 1, 2) + LogElement.monomial(3 * n, 1, 2)
        consistent = operator.apply(sample) == compose_apply(n, sample)
        golden = n != 2 or operator.to_text() == GOLDEN_OPERATOR
        ok = consistent and golden and operator.order == operator_order(n) and operator.lowest_order == n
        passed = passed and ok
        operators.append({"n": n, "order": operator.order, "text": operator.to_text(), "consistent": consistent, "ok": ok})

    for m in range(settings.m_max + 1):
        for k in range(settings.k_max + 1):
            constant = leading_constant(m, k)
            passed = passed and constant.matches
            constants.append(constant.to_dict())

    return passed, {"operators": operators, "leading_constants": constants}


def run_logring(context: StudyContext, directory: Path) -> SectionResult:
    passed, payload = logring_payload(context.config.logring)
    summary = {"operators": provenance(len(payload["operators"]), "expand_operator")}

    return _result("logring", passed, summary, [write_json(directory / "logring.json", payload)])


def run_kam(context: StudyContext, directory: Path) -> SectionResult:
    settings = context.config.kam
    threshold = kam_threshold(
        KamThresholdInput(
            M=settings.M,
            d=settings.d,
            r=settings.r,
            s_bar=settings.s_bar,
            n=context.potential.n,
            C_kam=settings.C_kam,
            domain_diameter=settings.domain_diameter
        )
    )
    summary = {"threshold": provenance(threshold.threshold, "kam_threshold")}

    return _result("kam", True, summary, [write_json(directory / "kam.json", threshold.to_dict())])


SECTION_RUNNERS: dict[str, Callable[[StudyContext, Path], SectionResult]] = {
    "genericity": run_genericity,
    "covering": run_covering,
    "portraits": run_portraits,
    "actions": run_actions,
    "fits": run_fits,
    "twist": run_twist,
    "scaling": run_scaling,
    "budget": run_budget,
    "logring": run_logring,
    "kam": run_kam
}


@define(frozen=True)
class StudyReport:
    name: str = field(kw_only=True)
    seed: int = field(kw_only=True)
    output: Path = field(kw_only=True)
    sections: list[SectionResult] = field(factory=list, kw_only=True)

    @property
    def passed(self) -> bool:
        return all(s.status != SectionStatus.FAILED for s in self.sections)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def section(self, name: str) -> SectionResult:
        return next(s for s in self.sections if s.name == name)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "sections": {s.name: s.to_dict() for s in self.sections}
        }


def run_study(config: StudyConfig, only: Optional[list[str]] = None) -> StudyReport:
    """
    Runs every enabled section in order and writes its artifacts plus summary.json under config.output.
    A failing section is logged and recorded; later sections still run.
    """
    directory = config.output
    directory.mkdir(parents=True, exist_ok=True)
    context = StudyContext(config)
    results = []

    for name in SECTIONS:
        if not config.is_enabled(name) or (only is not None and name not in only):
            continue

        title = stringcase.sentencecase(name)
        logging.info(f"{title} section started")

        try:
            result = SECTION_RUNNERS[name](context, directory)
        except Exception as error:
            logging.error(f"{title} section failed: {error}")
            result = SectionResult(name=name, status=SectionStatus.FAILED, message=str(error))

        logging.info(f"{title} section {result.status.value}")
        results.append(result)

    report = StudyReport(name=config.name, seed=config.monte_carlo.seed, output=directory, sections=results)
    write_json(directory / "summary.json", report.to_dict())

    return report
