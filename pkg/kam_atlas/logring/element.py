from __future__ import annotations
from typing import Union
import numpy as np
from attr import define, field
from sympy import Rational
from kam_atlas.errors import LogRingOverflowError

MAX_POWER = 64
MAX_LOG = 32

Scalar = Union[int, Rational]
Monomial = tuple[int, int]


def _canonical(terms: dict) -> dict[Monomial, Rational]:
    result = {}

    for (p, j), c in terms.items():
        c = Rational(c)

        if c == 0:
            continue
        if abs(p) > MAX_POWER or j > MAX_LOG:
            raise LogRingOverflowError(f"term z^{p} log^{j} exceeds the caps |p| ≤ {MAX_POWER}, j ≤ {MAX_LOG}")
        if j < 0:
            raise ValueError("log powers are non-negative")

        result[(int(p), int(j))] = c

    return result


def format_coefficient(c: Rational, bare: bool) -> str:
    if bare:
        return str(c)

    return "" if c == 1 else f"{c}*"


@define(frozen=True)
class LogElement:
    """
    Finite sum Σ c·z^p·log^j z with rational c, integer p and j ≥ 0; an element z^h Σ u_j(z) log^j z of the
    ring with h the lowest power of z.
    """

    terms: dict[Monomial, Rational] = field(factory=dict, converter=_canonical)

    @classmethod
    def monomial(cls, p: int, j: int = 0, c: Scalar = 1) -> LogElement:
        return cls({(p, j): c})

    @classmethod
    def constant(cls, c: Scalar) -> LogElement:
        return cls({(0, 0): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def h(self) -> int:
        return min((p for p, _ in self.terms), default=0)

    @property
    def ell(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def order(self) -> Monomial:
        """(h, ℓ) such that the element is O(h, ℓ)."""
        return self.h, self.ell

    def u(self, j: int) -> dict[int, Rational]:
        """Polynomial u_j in z (power → coefficient) after factoring z^h."""
        return {p - self.h: c for (p, i), c in self.terms.items() if i == j}

    def coefficient(self, p: int, j: int = 0) -> Rational:
        return self.terms.get((p, j), Rational(0))

    @property
    def constant_term(self) -> Rational:
        return self.coefficient(0, 0)

    def without_constant(self) -> LogElement:
        return LogElement({m: c for m, c in self.terms.items() if m != (0, 0)})

    @property
    def vanishes_at_zero(self) -> bool:
        return all(p >= 1 for p, _ in self.terms)

    def __add__(self, other: Union[LogElement, Scalar]) -> LogElement:
        other = other if isinstance(other, LogElement) else LogElement.constant(other)
        terms = dict(self.terms)

        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c

        return LogElement(terms)

    __radd__ = __add__

    def __neg__(self) -> LogElement:
        return LogElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Union[LogElement, Scalar]) -> LogElement:
        return self + (-other)

    def __mul__(self, other: Union[LogElement, Scalar]) -> LogElement:
        if not isinstance(other, LogElement):
            return LogElement({m: c * other for m, c in self.terms.items()})

        terms = {}

        for (p, j), c in self.terms.items():
            for (q, i), d in other.terms.items():
                key = (p + q, j + i)
                terms[key] = terms.get(key, 0) + c * d

        return LogElement(terms)

    __rmul__ = __mul__

    def derivative(self) -> LogElement:
        # ∂(z^p log^j z) = p z^{p−1} log^j z + j z^{p−1} log^{j−1} z
        terms = {}

        for (p, j), c in self.terms.items():
            if p:
                terms[(p - 1, j)] = terms.get((p - 1, j), 0) + p * c
            if j:
                terms[(p - 1, j - 1)] = terms.get((p - 1, j - 1), 0) + j * c

        return LogElement(terms)

    def euler(self) -> LogElement:
        """L = z∂: L(z^p log^j z) = p z^p log^j z + j z^p log^{j−1} z."""
        terms = {}

        for (p, j), c in self.terms.items():
            if p:
                terms[(p, j)] = terms.get((p, j), 0) + p * c
            if j:
                terms[(p, j - 1)] = terms.get((p, j - 1), 0) + j * c

        return LogElement(terms)

    def evaluate(self, z):
        z = np.asarray(z, dtype=float)
        log_z = np.log(z)
        total = np.zeros_like(z)

        for (p, j), c in self.terms.items():
            total = total + float(c) * z ** p * log_z ** j

        return total

    def to_text(self) -> str:
        """Canonical text: terms by ascending power of z, then descending power of log."""
        if self.is_zero:
            return "0"

        pieces = []

        for p, j in sorted(self.terms, key=lambda m: (m[0], -m[1])):
            c = self.terms[(p, j)]
            factors = []

            if p == 1:
                factors.append("z")
            elif p:
                factors.append(f"z^{p}")
            if j == 1:
                factors.append("log(z)")
            elif j:
                factors.append(f"log(z)^{j}")

            body = format_coefficient(abs(c), bare=not factors) + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))

        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]

        return text + "".join(f" {sign} {body}" for sign, body in pieces[1:])

    def __str__(self) -> str:
        return self.to_text()
