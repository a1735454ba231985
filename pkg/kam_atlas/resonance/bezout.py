from __future__ import annotations
from functools import reduce
from math import gcd
import numpy as np
from attr import define, field
from kam_atlas.errors import KamAtlasError
from kam_atlas.resonance.generators import Generator


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u·a + v·b = g = gcd(a, b) ≥ 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1

    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v

    if old_r < 0:
        return -old_r, -old_u, -old_v

    return old_r, old_u, old_v


def _complete(k: list[int]) -> list[list[int]]:
    # unimodular integer matrix with first row k; k primitive with first nonzero entry positive
    n = len(k)

    if n == 1:
        return [[1]]

    head, last = k[:-1], k[-1]

    if not any(head):
        # k = e_n: cyclic permutation, one row negated to fix the sign of the determinant
        rows = [[0] * (n - 1) + [1]] + [[1 if j == i else 0 for j in range(n)] for i in range(n - 1)]

        if n % 2 == 0:
            rows[1] = [-x for x in rows[1]]

        return rows

    divisor = reduce(gcd, (abs(c) for c in head))
    first = next(c for c in head if c != 0)
    divisor = divisor if first > 0 else -divisor
    reduced = [c // divisor for c in head]
    inner = _complete(reduced)

    # last row (x·k', y) with y·divisor − x·last = 1
    if last == 0:
        y, x = divisor, 0
    else:
        _, u, _ = extended_gcd(divisor, last)
        y = u % abs(last)
        x = (y * divisor - 1) // last

    rows = [list(k)]
    rows += [row + [0] for row in inner[1:]]
    rows.append([x * c for c in reduced] + [y])

    return rows


@define(frozen=True)
class BezoutFrame:
    generator: Generator = field(kw_only=True)
    matrix: np.ndarray = field(kw_only=True, repr=False, eq=False)
    inverse: np.ndarray = field(kw_only=True, repr=False, eq=False)

    @property
    def hat(self) -> np.ndarray:
        return self.matrix[1:]

    @property
    def determinant(self) -> int:
        return int(round(np.linalg.det(self.matrix)))

    @property
    def hat_norm(self) -> int:
        return int(np.max(np.abs(self.hat))) if self.hat.size else 0

    @property
    def inverse_norm(self) -> int:
        return int(np.max(np.abs(self.inverse)))

    @property
    def inverse_bound(self) -> float:
        n = self.generator.n

        return (n - 1) ** ((n - 1) / 2) * self.generator.linf ** (n - 1)

    @property
    def satisfies_bounds(self) -> bool:
        return (
            tuple(self.matrix[0]) == self.generator.components
            and self.determinant == 1
            and self.hat_norm <= self.generator.linf
            and self.inverse_norm <= self.inverse_bound
        )

    def to_dict(self) -> dict:
        return {
            "k": list(self.generator.components),
            "matrix": self.matrix.tolist(),
            "inverse": self.inverse.tolist(),
            "determinant": self.determinant,
            "hat_norm": self.hat_norm,
            "inverse_norm": self.inverse_norm,
            "inverse_bound": self.inverse_bound
        }


def bezout_complete(k: Generator) -> BezoutFrame:
    if not isinstance(k, Generator):
        k = Generator(k)

    matrix = np.array(_complete(list(k.components)), dtype=np.int64)
    inverse = np.rint(np.linalg.inv(matrix.astype(float))).astype(np.int64)

    if not np.array_equal(matrix @ inverse, np.eye(k.n, dtype=np.int64)):
        raise KamAtlasError(f"integer inversion failed for frame of {k}")

    return BezoutFrame(generator=k, matrix=matrix, inverse=inverse)
