from __future__ import annotations
from math import comb, factorial
from typing import Optional
from attr import define, field
from sympy import Rational
from kam_atlas.errors import DomainError, LogRingOverflowError
from kam_atlas.logring.element import LogElement, format_coefficient

MAX_ORDER = 64


def _canonical(terms: dict) -> dict[tuple[int, int], Rational]:
    result = {}

    for (j, p), c in terms.items():
        c = Rational(c)

        if c == 0:
            continue
        if j > MAX_ORDER:
            raise LogRingOverflowError(f"operator order {j} exceeds {MAX_ORDER}")
        if j < 0 or p < 0:
            raise ValueError("operators have polynomial coefficients and non-negative orders")

        result[(int(j), int(p))] = c

    return result


@define(frozen=True)
class DiffOperator:
    """Σ c·z^p·∂^j with rational c, keyed by (j, p)."""

    terms: dict[tuple[int, int], Rational] = field(factory=dict, converter=_canonical)

    @classmethod
    def identity(cls) -> DiffOperator:
        return cls({(0, 0): 1})

    @classmethod
    def d(cls) -> DiffOperator:
        return cls({(1, 0): 1})

    @classmethod
    def euler(cls) -> DiffOperator:
        return cls({(1, 1): 1})

    @property
    def order(self) -> int:
        return max((j for j, _ in self.terms), default=0)

    @property
    def lowest_order(self) -> int:
        return min((j for j, _ in self.terms), default=0)

    def coefficient(self, j: int) -> dict[int, Rational]:
        """a_j as power → coefficient."""
        return {p: c for (i, p), c in self.terms.items() if i == j}

    def __add__(self, other: DiffOperator) -> DiffOperator:
        terms = dict(self.terms)

        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c

        return DiffOperator(terms)

    def __matmul__(self, other: DiffOperator) -> DiffOperator:
        """
        Composition self ∘ other by Leibniz:
        (z^p ∂^j)(z^q ∂^k) = Σ_i C(j, i)·q!/(q − i)!·z^{p+q−i} ∂^{j+k−i}.
        """
        terms = {}

        for (j, p), c in self.terms.items():
            for (k, q), d in other.terms.items():
                for i in range(min(j, q) + 1):
                    key = (j + k - i, p + q - i)
                    weight = comb(j, i) * factorial(q) // factorial(q - i)
                    terms[key] = terms.get(key, 0) + c * d * weight

        return DiffOperator(terms)

    def __pow__(self, exponent: int) -> DiffOperator:
        result = DiffOperator.identity()

        for _ in range(exponent):
            result = self @ result

        return result

    def apply(self, element: LogElement) -> LogElement:
        total = LogElement()
        derivative = element

        for j in range(self.order + 1):
            for p, c in self.coefficient(j).items():
                total = total + LogElement.monomial(p, 0, c) * derivative

            derivative = derivative.derivative()

        return total

    def to_text(self) -> str:
        """Canonical text: terms by descending order of ∂, then descending power of z."""
        if not self.terms:
            return "0"

        pieces = []

        for j, p in sorted(self.terms, key=lambda key: (-key[0], -key[1])):
            c = self.terms[(j, p)]
            factors = []

            if p == 1:
                factors.append("z")
            elif p:
                factors.append(f"z^{p}")
            if j == 1:
                factors.append("D")
            elif j:
                factors.append(f"D^{j}")

            body = format_coefficient(abs(c), bare=not factors) + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))

        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]

        return text + "".join(f" {sign} {body}" for sign, body in pieces[1:])

    def __str__(self) -> str:
        return self.to_text()


def operator_order(n: int) -> int:
    """3n̄² + 4n̄ = 3n² − 2n − 1 with n̄ = n − 1."""
    return 3 * n * n - 2 * n - 1


def expand_operator(n: int) -> DiffOperator:
    """𝓛 = L^{3n̄}(∂ L^{3n̄})^{n̄} with L = z∂ and n̄ = n − 1, expanded as Σ a_j(z) ∂^j."""
    if n < 2:
        raise DomainError("expand_operator needs n ≥ 2")
    if operator_order(n) > MAX_ORDER:
        raise LogRingOverflowError(f"operator of order {operator_order(n)} exceeds {MAX_ORDER}")

    m = n - 1
    euler_power = DiffOperator.euler() ** (3 * m)

    return euler_power @ (DiffOperator.d() @ euler_power) ** m


def _apply_factors(element: LogElement, m: int, k: int) -> LogElement:
    # L^k (∂ L^k)^m, innermost factor first
    for _ in range(m):
        for _ in range(k):
            element = element.euler()
        element = element.derivative()

    for _ in range(k):
        element = element.euler()

    return element


def compose_apply(n: int, element: LogElement) -> LogElement:
    """Applies 𝓛 factor by factor, without expanding it."""
    if n < 2:
        raise DomainError("compose_apply needs n ≥ 2")

    return _apply_factors(element, n - 1, 3 * (n - 1))


@define(frozen=True)
class LeadingConstant:
    m: int = field(kw_only=True)
    k: int = field(kw_only=True)
    constant: Rational = field(kw_only=True)
    residual: LogElement = field(kw_only=True)

    @property
    def expected(self) -> int:
        return factorial(self.m) ** (self.k + 1) * factorial(self.k)

    @property
    def matches(self) -> bool:
        return self.constant == self.expected

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "constant": str(self.constant),
            "expected": self.expected,
            "matches": self.matches,
            "residual": self.residual.to_text(),
            "residual_vanishes_at_zero": self.residual.vanishes_at_zero
        }


def leading_constant(
    m: int, k: int, f1: Optional[LogElement] = None, f2: Optional[LogElement] = None
) -> LeadingConstant:
    """
    Applies 𝓛_{m,k} = L^k(∂ L^k)^m to z^m log^k z + f₁ + f₂ with f₁ ∈ O(0, ℓ) for ℓ < k and f₂ ∈ O(m + 1, q).
    The constant term is (m!)^{k+1} k!.
    """
    if m < 0 or k < 0:
        raise DomainError("m and k must be non-negative")

    f1 = f1 or LogElement()
    f2 = f2 or LogElement()

    if not f1.is_zero and (f1.h < 0 or f1.ell >= k):
        raise DomainError(f"f1 must be O(0, ℓ) with ℓ < {k}")
    if not f2.is_zero and f2.h < m + 1:
        raise DomainError(f"f2 must be O({m + 1}, q)")

    result = _apply_factors(LogElement.monomial(m, k) + f1 + f2, m, k)

    return LeadingConstant(m=m, k=k, constant=result.constant_term, residual=result.without_constant())
