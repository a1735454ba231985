from __future__ import annotations
from functools import reduce
from math import gcd
from typing import Iterator, Sequence
import numpy as np
from attr import define, field
from kam_atlas.errors import DomainError, NotPrimitiveError


def sign_normalized(k: Sequence[int]) -> bool:
    for component in k:
        if component != 0:
            return component > 0

    return False


def is_primitive(k: Sequence[int]) -> bool:
    return any(k) and reduce(gcd, (abs(c) for c in k)) == 1


@define(frozen=True)
class Generator:
    """Sign-normalized primitive integer vector indexing one resonance line."""

    components: tuple[int, ...] = field(converter=lambda k: tuple(int(c) for c in k))

    @components.validator
    def validate_components(self, _, components: tuple[int, ...]) -> None:
        if not any(components):
            raise NotPrimitiveError("generator must be nonzero")
        if not is_primitive(components):
            raise NotPrimitiveError(f"{components} is not primitive (gcd > 1)")
        if not sign_normalized(components):
            raise NotPrimitiveError(f"{components} is not sign-normalized (first nonzero component must be positive)")

    @classmethod
    def of(cls, k: Sequence[int]) -> Generator:
        """Generator of the line through k, i.e. k/gcd with the sign fixed."""
        if not any(k):
            raise NotPrimitiveError("the zero vector spans no line")

        divisor = reduce(gcd, (abs(int(c)) for c in k))
        reduced = [int(c) // divisor for c in k]

        if not sign_normalized(reduced):
            reduced = [-c for c in reduced]

        return cls(reduced)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def l1(self) -> int:
        return sum(abs(c) for c in self.components)

    @property
    def linf(self) -> int:
        return max(abs(c) for c in self.components)

    @property
    def norm(self) -> float:
        return float(np.sqrt(sum(c * c for c in self.components)))

    @property
    def norm_squared(self) -> int:
        return sum(c * c for c in self.components)

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=float)

    def multiple_of(self, k: Sequence[int]) -> int:
        """Integer j with k = j·self, or 0 when k is not on this line."""
        k = tuple(int(c) for c in k)

        if len(k) != self.n:
            return 0

        dot = sum(a * b for a, b in zip(k, self.components))
        j, remainder = divmod(dot, self.norm_squared)

        if remainder == 0 and j != 0 and all(a == j * b for a, b in zip(k, self.components)):
            return j

        return 0

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"


def _ball(n: int, budget: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return

    for head in range(-budget, budget + 1):
        for tail in _ball(n - 1, budget - abs(head)):
            yield (head,) + tail


def enumerate_generators(n: int, K: int) -> list[Generator]:
    """All sign-normalized primitive vectors with |k|₁ ≤ K in lexicographic order."""
    if n < 2:
        raise DomainError("dimension must be at least 2")
    if K < 0:
        raise DomainError("cut-off must be nonnegative")

    return [Generator(k) for k in sorted(_ball(n, K)) if sign_normalized(k) and is_primitive(k)]


def generator_matrix(generators: Sequence[Generator], n: int) -> np.ndarray:
    if not generators:
        return np.zeros((0, n))

    return np.array([g.components for g in generators], dtype=float)
