from __future__ import annotations
from typing import Union
import numpy as np
import sympy
from attr import define, field
from kam_atlas.errors import NotAMinimumError
from kam_atlas.fourier.series import OneDSeries

STATIONARY_TOLERANCE = 1e-8

Number = Union[float, sympy.Expr]


@define(frozen=True)
class BirkhoffCoefficients:
    """
    Derivatives d_j = g⁽ʲ⁾(q₀) at a nondegenerate minimum and the quantities of the first Birkhoff
    coefficient: δ = 3d₂d₄ − 5d₃², ω₀ = √(2d₂), c = (d₄/d₂ − 5d₃²/(3d₂²))/4.

    A positive δ means the oscillation frequency grows with amplitude near the bottom of the well.
    """

    minimum: Number = field(kw_only=True)
    d2: Number = field(kw_only=True)
    d3: Number = field(kw_only=True)
    d4: Number = field(kw_only=True)

    @property
    def exact(self) -> bool:
        return isinstance(self.d2, sympy.Expr)

    @property
    def delta(self) -> Number:
        return 3 * self.d2 * self.d4 - 5 * self.d3 ** 2

    @property
    def omega0(self) -> Number:
        return sympy.sqrt(2 * self.d2) if self.exact else float(np.sqrt(2 * self.d2))

    @property
    def c(self) -> Number:
        return (self.d4 / self.d2 - 5 * self.d3 ** 2 / (3 * self.d2 ** 2)) / 4

    def to_dict(self) -> dict:
        values = {
            "minimum": self.minimum,
            "d2": self.d2,
            "d3": self.d3,
            "d4": self.d4,
            "delta": self.delta,
            "omega0": self.omega0,
            "c": self.c
        }

        if self.exact:
            return {key: str(value) for key, value in values.items()} | {"float": {k: float(v) for k, v in values.items()}}

        return {key: float(value) for key, value in values.items()}


def birkhoff_delta(g: OneDSeries, minimum: float) -> BirkhoffCoefficients:
    """Derivatives come from the Fourier coefficients directly (multiplication by (ij)^k)."""
    slope = float(g.derivative(minimum, 1))
    d = [float(g.derivative(minimum, order)) for order in (2, 3, 4)]
    scale = max([1.0] + [abs(c) for c in g.coefficients.values()])

    if abs(slope) > STATIONARY_TOLERANCE * scale:
        raise NotAMinimumError(f"g'({minimum:.12g}) = {slope:.3e} is not zero")
    if d[0] <= 0:
        raise NotAMinimumError(f"g''({minimum:.12g}) = {d[0]:.6g} is not positive")

    return BirkhoffCoefficients(minimum=float(minimum), d2=d[0], d3=d[1], d4=d[2])


def birkhoff_delta_symbolic(expression: sympy.Expr, q: sympy.Symbol, minimum) -> BirkhoffCoefficients:
    minimum = sympy.sympify(minimum)
    d = [sympy.simplify(sympy.diff(expression, q, order).subs(q, minimum)) for order in (1, 2, 3, 4)]

    if d[0] != 0:
        raise NotAMinimumError(f"derivative at {minimum} is {d[0]}, not zero")
    if not d[1] > 0:
        raise NotAMinimumError(f"second derivative at {minimum} is {d[1]}, not positive")

    return BirkhoffCoefficients(minimum=minimum, d2=d[1], d3=d[2], d4=d[3])
