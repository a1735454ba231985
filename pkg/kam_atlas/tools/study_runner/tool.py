from __future__ import annotations
import os
from attr import define, field
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core import BaseTool
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.report.config import load_config
from kam_atlas.report.export import json_text
from kam_atlas.report.kam import KamThresholdInput, kam_threshold
from kam_atlas.report.study import run_study


@define
class StudyRunner(BaseTool):
    dir: str = field(default=os.getcwd(), kw_only=True)

    @activity(config={
        "description": "Can be used to evaluate the KAM smallness threshold r² d⁸ s^{4n+4} / (C M^{8n−1}) together "
                       "with the measure-loss coefficient",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("M", description="Bound on the Hessian of the integrable part"): float,
            Literal("d", description="Lower bound on the Hessian determinant, at most M^n"): float,
            Literal("r", description="Analyticity radius in the actions"): float,
            Literal("s_bar", description="Analyticity radius in the angles"): float,
            Literal("n", description="Number of degrees of freedom"): int,
            Optional(Literal("C_kam", description="KAM constant, 1 gives relative thresholds")): float,
            Optional(Literal("domain_diameter", description="Diameter of the action domain")): float
        })
    })
    def kam_threshold(self, params: dict) -> BaseArtifact:
        try:
            threshold = kam_threshold(KamThresholdInput(**params["values"]))

            return TextArtifact(json_text(threshold.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing KAM threshold: {e}")

    @activity(config={
        "description": "Can be used to run a study from a JSON config and return its summary",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("config", description="Path of the study config relative to the working directory"): str,
            Optional(Literal("out", description="Output directory overriding the config")): str,
            Optional(Literal("seed", description="Monte Carlo seed overriding the config")): int
        })
    })
    def run_study(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            out = values.get("out")
            config = load_config(os.path.join(self.dir, values["config"])).with_overrides(
                output=None if out is None else os.path.join(self.dir, out), seed=values.get("seed")
            )

            return TextArtifact(json_text(run_study(config).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error running study: {e}")
