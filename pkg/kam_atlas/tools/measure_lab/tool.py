from __future__ import annotations
from attr import define, field
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core import BaseTool
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.measure.budget import budget_shape
from kam_atlas.measure.montecarlo import zone_measure
from kam_atlas.measure.scaling import scaling_study
from kam_atlas.report.export import json_text
from kam_atlas.resonance.covering import ZoneTag
from kam_atlas.tools.resonance_cartographer.tool import COVERING_SCHEMA, covering_params

SAMPLING_SCHEMA = {
    Optional(Literal("zone", description="NON_RESONANT, SIMPLY_RESONANT or DOUBLY_RESONANT")): str,
    Optional(Literal("samples", description="Number of Monte Carlo samples, at least 1000")): int,
    Optional(Literal("seed", description="Seed of the Philox generator")): int
}


@define
class MeasureLab(BaseTool):
    workers: int = field(default=1, kw_only=True)

    @activity(config={
        "description": "Can be used to estimate the measure of one resonance zone inside the unit ball",
        "uses_default_memory": False,
        "schema": Schema({**COVERING_SCHEMA, **SAMPLING_SCHEMA})
    })
    def estimate_zone_measure(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            estimate = zone_measure(
                covering_params(values),
                ZoneTag[values.get("zone", ZoneTag.DOUBLY_RESONANT.name)],
                samples=values.get("samples", 10 ** 5),
                seed=values.get("seed", 0),
                workers=self.workers
            )

            return TextArtifact(json_text(estimate.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error estimating zone measure: {e}")

    @activity(config={
        "description": "Can be used to fit the log-log slope of a zone measure against ε with common random numbers",
        "uses_default_memory": False,
        "schema": Schema({
            **COVERING_SCHEMA,
            **SAMPLING_SCHEMA,
            Literal("epsilons", description="At least three values of ε spanning two decades"): [float]
        })
    })
    def scaling_study(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            study = scaling_study(
                covering_params(values),
                values["epsilons"],
                samples=values.get("samples", 10 ** 5),
                seed=values.get("seed", 0),
                tag=ZoneTag[values.get("zone", ZoneTag.DOUBLY_RESONANT.name)],
                workers=self.workers
            )

            return TextArtifact(json_text(study.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error running scaling study: {e}")

    @activity(config={
        "description": "Can be used to tabulate the polynomial and exponential terms of the non-torus measure budget "
                       "and find where they cross",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("epsilon", description="Perturbation size in (0, 1)"): float,
            Literal("n", description="Number of degrees of freedom"): int,
            Literal("c", description="Decay constant of the exponential term"): float,
            Optional(Literal("gamma", description="Exponent of K; defaults to 11n + 4")): float,
            Optional(Literal("K_list", description="Cut-offs to tabulate")): [float]
        })
    })
    def budget_shape(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            shape = budget_shape(values["epsilon"], values["n"], values["c"], gamma=values.get("gamma"))

            return TextArtifact(json_text(shape.to_dict(values.get("K_list", []))))
        except Exception as e:
            return ErrorArtifact(f"error computing budget shape: {e}")
