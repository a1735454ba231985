from __future__ import annotations
import sympy
from attr import define
from griptape.artifacts import BaseArtifact, ErrorArtifact, TextArtifact
from griptape.core.decorators import activity
from schema import Schema, Literal, Optional
from kam_atlas.report.export import json_text
from kam_atlas.tools.base_series_tool import REGION_SCHEMA, BaseSeriesTool
from kam_atlas.twist.birkhoff import birkhoff_delta_symbolic
from kam_atlas.twist.certificate import certify_nondegeneracy
from kam_atlas.twist.linalg import pd_det_bound
from kam_atlas.twist.normalized import F_SAMPLES, normalized_F
from kam_atlas.twist.sublevel import sublevel_bound


@define
class TwistAnalyzer(BaseSeriesTool):
    @activity(config={
        "description": "Can be used to sample the normalized twist F(x) of a well, with x the relative action "
                       "between the well bottom or lower separatrix and the upper separatrix",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Optional(Literal("samples", description="Number of x samples in (0, 1)")): int
        })
    })
    def normalized_twist(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            twist = normalized_F(self.integrator(values), samples=values.get("samples", F_SAMPLES))

            return TextArtifact(json_text(twist.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing normalized twist: {e}")

    @activity(config={
        "description": "Can be used to certify that some derivative of order ≤ m_max of the normalized twist stays "
                       "away from zero",
        "uses_default_memory": False,
        "schema": Schema({
            **REGION_SCHEMA,
            Literal("m_max", description="Highest derivative order to try, between 1 and 4"): int,
            Optional(Literal("interval", description="Sub-interval [a, b] of (0, 1) to certify")): [float]
        })
    })
    def certify(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            twist = normalized_F(self.integrator(values))
            interval = values.get("interval")
            cert = certify_nondegeneracy(twist, values["m_max"], interval=None if interval is None else tuple(interval))

            return TextArtifact(json_text(cert.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error certifying non-degeneracy: {e}")

    @activity(config={
        "description": "Can be used to bound the measure of {|f| ≤ η} for a (ξ, m)-non-degenerate function",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("xi", description="Non-degeneracy constant ξ"): float,
            Literal("m", description="Derivative order"): int,
            Literal("M", description="Bound on the m-th derivative"): float,
            Literal("length", description="Interval length"): float,
            Literal("eta", description="Sublevel threshold η"): float
        })
    })
    def sublevel_bound(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(
                json_text(sublevel_bound(values["xi"], values["m"], values["M"], values["length"], values["eta"]))
            )
        except Exception as e:
            return ErrorArtifact(f"error bounding sublevel set: {e}")

    @activity(config={
        "description": "Can be used to compute the exact Birkhoff twist coefficient δ = 3d₂d₄ − 5d₃² of a potential "
                       "at a nondegenerate minimum",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("expression", description="Potential in the variable q, for example 'cos(q) - cos(2*q)/8'"): str,
            Literal("minimum", description="Exact location of the minimum, for example 'pi'"): str
        })
    })
    def birkhoff_delta(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]
            q = sympy.Symbol("q", real=True)
            expression = sympy.parse_expr(values["expression"], local_dict={"q": q})
            coefficients = birkhoff_delta_symbolic(expression, q, sympy.parse_expr(values["minimum"]))

            return TextArtifact(json_text(coefficients.to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error computing Birkhoff coefficients: {e}")

    @activity(config={
        "description": "Can be used to bound det(P + Q) from below for positive definite P and Q with |P⁻¹||Q| < 1",
        "uses_default_memory": False,
        "schema": Schema({
            Literal("P", description="Symmetric positive definite matrix as a list of rows"): [[float]],
            Literal("Q", description="Symmetric positive definite matrix as a list of rows"): [[float]]
        })
    })
    def pd_det_bound(self, params: dict) -> BaseArtifact:
        try:
            values = params["values"]

            return TextArtifact(json_text(pd_det_bound(values["P"], values["Q"]).to_dict()))
        except Exception as e:
            return ErrorArtifact(f"error bounding determinant: {e}")
