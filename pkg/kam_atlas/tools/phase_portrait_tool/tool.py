from __future__ import annotations
from attr import define, evolve
from griptape.artifacts import BaseArtifact, BlobArtifact, ErrorArtifact, TextArtifact
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.figures import portrait_figure, svg_bytes
from kam_atlas.portrait.bounds import phase_bounds
from kam_atlas.portrait.standard_form import validate
from kam_atlas.report.export import json_text
from kam_atlas.tools.base_series_tool import SERIES_SCHEMA, BaseSeriesTool

FORM_OVERRIDES = ("R", "r", "s_bar", "beta", "epsilon_bar", "mu", "kappa")


@define
class PhasePortraitTool(BaseSeriesTool):
    @activity(config={
        "description": "Can be used to check the clauses of the generic standard form for p² + Ḡ(q). Characteristics "
                       "that are not given default to the unperturbed form built around Ḡ",
        "uses_default_memory": False,
        "schema": Schema({
            **SERIES_SCHEMA,
            **{Optional(Literal(name, description=f"Characteristic {name} of the form")): float for name in FORM_OVERRIDES}
        })
    })
    def validate_standard_form(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            form = evolve(self.form(values), **{name: values[name] for name in FORM_OVERRIDES if name in values})

            return TextArtifact(json_text(validate(form).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error validating standard form: {e}")

    @activity(config={
        "description": "Can be used to split the phase space of p² + Ḡ(q) into outer and inner regions",
        "uses_default_memory": False,
        "schema": Schema(SERIES_SCHEMA)
    })
    def decompose_portrait(self, params: dict) -> BaseArtifact:
        try:
            return TextArtifact(json_text(self.portrait(params["values"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error decomposing portrait: {e}")

    @activity(config={
        "description": "Can be used to check that the energy sub-level {H < E♭} sits between the inner and outer boxes",
        "uses_default_memory": False,
        "schema": Schema(SERIES_SCHEMA)
    })
    def check_phase_bounds(self, params: dict) -> BaseArtifact:
        try:
            return TextArtifact(json_text(phase_bounds(self.form(params["values"])).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error checking phase bounds: {e}")

    @activity(config={
        "description": "Can be used to draw the level lines of p² + Ḡ(q) through every critical value as SVG",
        "uses_default_memory": False,
        "schema": Schema(SERIES_SCHEMA)
    })
    def render_portrait(self, params: dict) -> BaseArtifact:
        try:
            return BlobArtifact(svg_bytes(portrait_figure(self.portrait(params["values"]))), name="portrait.svg")
        except Exception as e:
            return ErrorArtifact(f"error rendering portrait: {e}")
