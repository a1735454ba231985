from __future__ import annotations
from attr import define
from griptape.artifacts import BaseArtifact, CsvRowArtifact, ErrorArtifact, TextArtifact
from griptape.core import BaseTool
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.fourier.io import potential_from_dict
from kam_atlas.report.export import json_text
from kam_atlas.resonance.bezout import bezout_complete
from kam_atlas.resonance.covering import CoveringParams, classify
from kam_atlas.resonance.generators import enumerate_generators
from kam_atlas.resonance.zones import transverse_form, zone_params

GENERATOR_LITERAL = Literal("k", description="Primitive integer vector, first nonzero component positive")
COVERING_SCHEMA = {
    Literal("n", description="Number of degrees of freedom"): int,
    Literal("epsilon", description="Perturbation size ε"): float,
    Literal("K0", description="Low-mode cut-off, at least 2"): int,
    Literal("K", description="Ultraviolet cut-off, at least 6·K0"): int,
    Optional(Literal("alpha_exponent", description="Exponent ν in α = √ε K^ν; defaults to 9n/2 + 2")): float
}


def covering_params(values: dict) -> CoveringParams:
    return CoveringParams(
        n=values["n"],
        epsilon=values["epsilon"],
        K0=values["K0"],
        K=values["K"],
        alpha_exponent=values.get("alpha_exponent")
    )


@define
class ResonanceCartographer(BaseTool):
    @activity(config={
        "description": "Can be used to list the generators of resonance lines with |k|₁ ≤ K",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("n", description="Dimension"): int,
            Literal("K", description="Largest |k|₁"): int
        })
    })
    def list_generators(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text([list(k.components) for k in enumerate_generators(values["n"], values["K"])]))
        except Exception as e:
            return ErrorArtifact(f"error listing generators: {e}")

    @activity(config={
        "description": "Can be used to complete a generator k to a unimodular integer matrix with first row k",
        "uses_default_memory": False,
        "schema": Schema({GENERATOR_LITERAL: [int]})
    })
    def bezout_frame(self, params: dict) -> BaseArtifact:
        try:
            return TextArtifact(json_text(bezout_complete(params["values"]["k"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error completing frame: {e}")

    @activity(config={
        "description": "Can be used to classify action points of the unit ball as non-resonant, simply resonant "
                       "or doubly resonant",
        "uses_default_memory": False,
        "schema": Schema({
            **COVERING_SCHEMA,
            Literal("points", description="Action points, each a list of n floats inside the unit ball"): [[float]]
        })
    })
    def classify_actions(self, params: dict) -> list[CsvRowArtifact] | ErrorArtifact:
        try:
            values = params["values"]
            p = covering_params(values)

            return [CsvRowArtifact(classify(y, p).to_row(y)) for y in values["points"]]
        except Exception as e:
            return ErrorArtifact(f"error classifying actions: {e}")

    @activity(config={
        "description": "Can be used to compute the standard-form parameters of the simple-resonance zone of k",
        "uses_default_memory": False,
        "schema": Schema({
            **COVERING_SCHEMA,
            Literal("potential", description="Potential document with keys n, s and modes or generator"): dict,
            GENERATOR_LITERAL: [int],
            Literal("beta", description="Morse constant of the low-mode projections"): float,
            Optional(Literal("delta", description="Coefficient lower bound, in (0, 1]")): float
        })
    })
    def zone_parameters(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            zone = zone_params(
                values["k"],
                covering_params(values),
                potential_from_dict(values["potential"]),
                values["beta"],
                values.get("delta", 1.0)
            )

            return TextArtifact(json_text(zone.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing zone parameters: {e}")

    @activity(config={
        "description": "Can be used to get the transverse kinetic Hessian of the resonance of k in Bezout coordinates",
        "uses_default_memory": False,
        "schema": Schema({GENERATOR_LITERAL: [int]})
    })
    def transverse_form(self, params: dict) -> BaseArtifact:
        try:
            return TextArtifact(json_text(transverse_form(params["values"]["k"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing transverse form: {e}")
