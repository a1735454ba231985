from __future__ import annotations
from attr import define
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.actions.profile import build_profile
from kam_atlas.actions.separatrix import FIT_DEGREE, separatrix_fit
from kam_atlas.report.export import json_text
from kam_atlas.tools.base_series_tool import REGION_SCHEMA, BaseSeriesTool


@define
class ActionAngleTool(BaseSeriesTool):
    @activity(config={
        "description": "Can be used to compute the action I(E), its energy derivative and the period at given energies "
                       "of one region of p² + Ḡ(q)",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Literal("energies", description="Energies inside the region's interval"): [float]
        })
    })
    def compute_action(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            region = self.portrait(values).region(values["region"])
            profile = build_profile(region, energies=values["energies"], second=False, epsrel=self.epsrel)

            return TextArtifact(json_text(profile.rows()))
        except Exception as e:
            return ErrorArtifact(f"error computing action: {e}")

    @activity(config={
        "description": "Can be used to invert the action, returning the energy E(I) of one region",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Literal("action", description="Action value inside the region's action range"): float
        })
    })
    def energy_from_action(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text(self.integrator(values).energy(values["action"])))
        except Exception as e:
            return ErrorArtifact(f"error inverting action: {e}")

    @activity(config={
        "description": "Can be used to fit the logarithmic expansion of the action near a separatrix or a well bottom",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Literal("side", description="'upper' or 'lower' end of the region's energy interval"): str,
            Optional(Literal("zmin", description="Smallest normalized distance to the critical energy")): float,
            Optional(Literal("zmax", description="Largest normalized distance to the critical energy")): float,
            Optional(Literal("degree", description="Polynomial degree of both expansion factors")): int
        })
    })
    def fit_separatrix(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            integrator = self.integrator(values)
            fit = separatrix_fit(
                integrator.region,
                values["side"],
                zmin=values.get("zmin", 1e-3),
                zmax=values.get("zmax", 0.1),
                degree=values.get("degree", FIT_DEGREE),
                integrator=integrator
            )

            return TextArtifact(json_text(fit.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error fitting separatrix expansion: {e}")

    @activity(config={
        "description": "Can be used to compute the twist ∂²E/∂I² at an energy of one region",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Literal("energy", description="Energy strictly inside the region's interval"): float
        })
    })
    def compute_twist(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text(self.integrator(values).twist(values["energy"])))
        except Exception as e:
            return ErrorArtifact(f"error computing twist: {e}")
