from __future__ import annotations
from abc import ABC
from attr import define, field
from griptape.core import BaseTool
from schema import Literal, Optional, Or
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.fourier.series import OneDSeries
from kam_atlas.portrait.regions import Portrait, decompose
from kam_atlas.portrait.standard_form import StandardForm1D

SERIES_SCHEMA = {
    Literal(
        "cos",
        description="Cosine amplitudes of the 1D potential keyed by harmonic order, for example {'1': 1.0}"
    ): {str: Or(int, float)},
    Optional(Literal("sin", description="Sine amplitudes keyed by harmonic order")): {str: Or(int, float)}
}

REGION_SCHEMA = {
    **SERIES_SCHEMA,
    Literal(
        "region",
        description="Region index: 0 is the lower outer region, odd indices are wells, the last is the upper outer region"
    ): int
}


@define
class BaseSeriesTool(BaseTool, ABC):
    """Tools working on a one-dimensional potential given by its trigonometric amplitudes."""

    epsrel: float = field(default=1e-12, kw_only=True)

    def series(self, values: dict) -> OneDSeries:
        return OneDSeries.trigonometric(
            cos={int(j): float(a) for j, a in values["cos"].items()},
            sin={int(j): float(b) for j, b in values.get("sin", {}).items()}
        )

    def form(self, values: dict) -> StandardForm1D:
        return StandardForm1D.from_reference(self.series(values), kappa=values.get("kappa"))

    def portrait(self, values: dict) -> Portrait:
        return decompose(self.form(values))

    def integrator(self, values: dict) -> ActionIntegrator:
        return ActionIntegrator(self.portrait(values).region(values["region"]), epsrel=self.epsrel)
