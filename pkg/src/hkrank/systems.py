"""Coefficient matrices of the two binomial linear systems.

Problem I: ``(l+1) x (k+1)`` Hankel matrix with ``A[r][c] = C(M, j+l+k-r-c) mod 2``
and right-hand side ``(0, ..., 0, 1)``.

Problem II stacks ``q`` rows of truncated Vandermonde sums (the "heart" rows,
``i = q`` on top down to ``i = 1``) above the Problem I block, with ``M = alpha + delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf2 import Gf2Matrix, Gf2Vector
from .parity import binom_parity


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class ProblemIInstance:
    m: int
    j: int
    k: int
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        _require(self.m >= 1, "M must be positive")
        _require(self.j >= 0, "j must be non-negative")
        _require(self.k >= 1 and self.l >= 1, "k and l must be positive")


@dataclass(frozen=True)
class ProblemIIInstance:
    alpha: int
    delta: int
    j: int
    k: int
    l: int  # noqa: E741
    q: int

    def __post_init__(self) -> None:
        _require(self.alpha >= 1 and self.delta >= 1, "alpha and delta must be positive")
        _require(self.j >= 0, "j must be non-negative")
        _require(min(self.k, self.l, self.q) >= 1, "k, l and q must be positive")

    @property
    def m(self) -> int:
        return self.alpha + self.delta

    def problem_i(self) -> ProblemIInstance:
        return ProblemIInstance(self.m, self.j, self.k, self.l)


def _hankel_rows(m: int, j: int, k: int, l: int) -> list[int]:  # noqa: E741
    top = j + l + k
    rows = []
    for r in range(l + 1):
        bits = 0
        for c in range(k + 1):
            n = top - r - c
            if n <= m and n & m == n:
                bits |= 1 << c
        rows.append(bits)
    return rows


def build_table1(inst: ProblemIInstance) -> tuple[Gf2Matrix, Gf2Vector]:
    rows = _hankel_rows(inst.m, inst.j, inst.k, inst.l)
    return Gf2Matrix(inst.l + 1, inst.k + 1, tuple(rows)), Gf2Vector.unit(inst.l + 1, inst.l)


def vandermonde(m: int, n: int, j: int) -> int:
    """``sum_{s=0}^{j} C(m, s) * C(n, j - s)`` as an exact integer."""

    def comb(a: int, b: int) -> int:
        return math.comb(a, b) if 0 <= b <= a else 0

    return sum(comb(m, s) * comb(n, j - s) for s in range(max(0, j - n), min(j, m) + 1))


def heart(alpha: int, delta: int, i: int, r: int, j: int, k: int, l: int) -> int:  # noqa: E741
    """Parity of ``sum_{s=0}^{j+k+l-r} C(alpha, s) * C(delta, j+k+l+i-r-s)``.

    The sum stops at ``s = j+k+l-r``, so the ``i`` lowest delta-indices are
    left out of the full Vandermonde convolution.
    """
    top = j + k + l + i - r
    total = 0
    for s in range(min(j + k + l - r, alpha) + 1):
        total ^= binom_parity(alpha, s) & binom_parity(delta, top - s)
    return total


def _heart_rows(alpha: int, delta: int, j: int, k: int, l: int, qmax: int) -> list[int]:  # noqa: E741
    """Packed heart rows for ``i = 1..qmax`` (list index ``i - 1``)."""
    out = []
    for i in range(1, qmax + 1):
        bits = 0
        for c in range(k + 1):
            if heart(alpha, delta, i, c, j, k, l):
                bits |= 1 << c
        out.append(bits)
    return out


def build_table2(inst: ProblemIIInstance) -> tuple[Gf2Matrix, Gf2Vector]:
    return table2_family(inst.alpha, inst.delta, inst.j, inst.k, inst.l, inst.q)[-1]


def table2_family(
    alpha: int, delta: int, j: int, k: int, l: int, qmax: int  # noqa: E741
) -> list[tuple[Gf2Matrix, Gf2Vector]]:
    """Problem II systems for ``q = 1..qmax`` sharing one computation of the heart rows."""
    ProblemIIInstance(alpha, delta, j, k, l, qmax)
    hearts = _heart_rows(alpha, delta, j, k, l, qmax)
    hankel = _hankel_rows(alpha + delta, j, k, l)
    out = []
    for q in range(1, qmax + 1):
        rows = tuple(hearts[q - 1 :: -1]) + tuple(hankel)
        n = len(rows)
        out.append((Gf2Matrix(n, k + 1, rows), Gf2Vector.unit(n, n - 1)))
    return out


def system_dump(a: Gf2Matrix, b: Gf2Vector) -> str:
    """Matrix dump followed by the right-hand side as a final '0'/'1' line."""
    return a.dump() + b.to_string() + "\n"
