from __future__ import annotations
import numpy as np
from attr import define
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core import BaseTool
from griptape.core.decorators import activity
from schema import Schema, Literal
from kam_atlas.fourier.io import potential_from_dict
from kam_atlas.fourier.morse import morse_analyze
from kam_atlas.fourier.potential import check_genericity, project
from kam_atlas.report.export import json_text

POTENTIAL_LITERAL = Literal(
    "potential",
    description="Potential document: {'n': 2, 's': 1.0, 'modes': [{'k': [1, 0], 're': 0.5, 'im': 0.0}, ...]} "
                "or {'n': 2, 's': 1.0, 'generator': {'rule': 'prototype', 'cap': 32}}"
)
GENERATOR_LITERAL = Literal("k", description="Primitive integer vector, first nonzero component positive")


@define
class PotentialInspector(BaseTool):
    @activity(config={
        "description": "Can be used to evaluate a Fourier potential f(x) at points of the n-torus",
        "uses_default_memory": False,
        "schema": Schema({
            POTENTIAL_LITERAL: dict,
            Literal("points", description="List of points, each a list of n angles"): [[float]]
        })
    })
    def evaluate_potential(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            f = potential_from_dict(values["potential"])

            return TextArtifact(json_text(f.evaluate(np.asarray(values["points"], dtype=float))))
        except Exception as e:
            return ErrorArtifact(f"error evaluating potential: {e}")

    @activity(config={
        "description": "Can be used to project a potential onto the resonance line of a generator k",
        "uses_default_memory": False,
        "schema": Schema({
            POTENTIAL_LITERAL: dict,
            GENERATOR_LITERAL: [int]
        })
    })
    def project_potential(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text(project(potential_from_dict(values["potential"]), values["k"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error projecting potential: {e}")

    @activity(config={
        "description": "Can be used to check that a potential is generic: β-Morse projections below the cut-off "
                       "and large enough coefficients above it",
        "uses_default_memory": False,
        "schema": Schema({
            POTENTIAL_LITERAL: dict,
            Literal("delta", description="Coefficient lower bound, in (0, 1]"): float,
            Literal("beta", description="Required Morse constant of the projections"): float,
            Literal("K", description="Largest |k|₁ to check"): int
        })
    })
    def check_genericity(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            report = check_genericity(
                potential_from_dict(values["potential"]), values["delta"], values["beta"], values["K"]
            )

            return TextArtifact(json_text(report.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error checking genericity: {e}")

    @activity(config={
        "description": "Can be used to find the critical points, critical values and Morse constant of a projection",
        "uses_default_memory": False,
        "schema": Schema({
            POTENTIAL_LITERAL: dict,
            GENERATOR_LITERAL: [int]
        })
    })
    def analyze_morse(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            series = project(potential_from_dict(values["potential"]), values["k"])

            return TextArtifact(json_text(morse_analyze(series).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error analyzing critical points: {e}")
