from __future__ import annotations
from attr import define
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core import BaseTool
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from sympy import Rational
from kam_atlas.logring.element import LogElement
from kam_atlas.logring.operator import expand_operator, leading_constant
from kam_atlas.report.export import json_text

OPERATIONS = {
    "d": LogElement.derivative,
    "euler": LogElement.euler
}


@define
class LogRingCalculator(BaseTool):
    @activity(config={
        "description": "Can be used to expand the operator L^{3m}(∂ L^{3m})^m with m = n − 1 and L = z∂ into "
                       "Σ a_j(z) ∂^j",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("n", description="Number of degrees of freedom, at least 2"): int
        })
    })
    def expand_operator(self, params: dict) -> BaseArtifact:
        try:
            return TextArtifact(expand_operator(params["values"]["n"]).to_text())
        except Exception as e:
            return ErrorArtifact(f"error expanding operator: {e}")

    @activity(config={
        "description": "Can be used to compute the constant term of L^k(∂ L^k)^m applied to z^m log^k z",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("m", description="Number of ∂ L^k factors"): int,
            Literal("k", description="Power of log and of L"): int
        })
    })
    def leading_constant(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text(leading_constant(values["m"], values["k"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing leading constant: {e}")

    @activity(config={
        "description": "Can be used to apply ∂ or L = z∂ repeatedly to a sum of terms c·z^p·log^j z",
        "uses_default_memory": False,
        "schema": Schema({
            Literal(
                "terms",
                description="Terms as [{'p': 2, 'j': 1, 'c': '3/2'}], c a rational number written as text"
            ): [{"p": int, "j": int, "c": str}],
            Optional(Literal("operator", description="'d' for ∂ or 'euler' for z∂")): str,
            Optional(Literal("times", description="How many times to apply the operator")): int
        })
    })
    def differentiate(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            element = LogElement({(t["p"], t["j"]): Rational(t["c"]) for t in values["terms"]})
            operation = OPERATIONS[values.get("operator", "d")]

            for _ in range(values.get("times", 1)):
                element = operation(element)

            return TextArtifact(element.to_text())
        except Exception as e:
            return ErrorArtifact(f"error differentiating: {e}")
