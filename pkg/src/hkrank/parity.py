"""Parity of binomial coefficients along a row of Pascal's triangle.

Positions are 1-based from the left: position ``p`` holds ``C(M, p - 1)``.
Positions past ``M + 1`` hold zero, which is even.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any

from .gf2 import RefusalError

EXACT_BINOMIAL_MAX = 512


def binom_parity(m: int, n: int) -> int:
    """``C(m, n) mod 2``; odd exactly when the bits of ``n`` are a subset of those of ``m``."""
    if n < 0 or m < 0 or n > m:
        return 0
    return 1 if n & m == n else 0


def exact_binomial(m: int, n: int, bound: int = EXACT_BINOMIAL_MAX) -> int:
    if m > bound:
        raise RefusalError(f"exact binomial for M={m} exceeds bound {bound}")
    if n < 0 or n > m:
        return 0
    return math.comb(m, n)


def parity_row(m: int) -> list[int]:
    """Parities of ``C(m, 0), ..., C(m, m)``."""
    return [1 if n & m == n else 0 for n in range(m + 1)]


def parity_at(m: int, pos: int) -> int:
    """Parity of the entry at 1-based position ``pos``."""
    return binom_parity(m, pos - 1)


@dataclass(frozen=True)
class BinaryExpansion:
    """``M = sum(2**e for e in exponents)`` with exponents strictly decreasing."""

    m: int
    exponents: tuple[int, ...]

    @classmethod
    def of(cls, m: int) -> BinaryExpansion:
        if m < 1:
            raise ValueError("M must be positive")
        return cls(m, tuple(e for e in range(m.bit_length() - 1, -1, -1) if m >> e & 1))

    @property
    def ascending(self) -> tuple[int, ...]:
        return self.exponents[::-1]

    def value(self) -> int:
        return sum(1 << e for e in self.exponents)


@dataclass(frozen=True)
class OddIndex:
    m: int
    tuples: tuple[tuple[int, ...], ...]
    positions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.positions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "M": self.m,
            "count": len(self.positions),
            "positions": list(self.positions),
            "tuples": [list(t) for t in self.tuples],
        }


def index_tuples(m: int) -> list[tuple[int, ...]]:
    """All ``(m+1)``-tuples ``(1, a_1, ..., a_m)`` over ``{0} | {2**l_i}``.

    The nonzero entries strictly decrease and are followed only by zeros, so each
    tuple is a subset of the powers of two in ``M`` written in descending order.
    """
    powers = [1 << e for e in BinaryExpansion.of(m).exponents]
    width = len(powers)
    out = []
    for size in range(width + 1):
        for combo in itertools.combinations(powers, size):
            out.append((1, *combo, *([0] * (width - size))))
    return out


def precedes(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Componentwise order on index tuples (only a partial order once M has 3+ bits)."""
    return all(x <= y for x, y in zip(a, b))


def odd_positions(m: int) -> OddIndex:
    """Positions of the odd entries in row ``m``, with their generating tuples."""
    tuples = sorted(index_tuples(m), key=lambda t: (sum(t), t))
    return OddIndex(m, tuple(tuples), tuple(sum(t) for t in tuples))


@dataclass(frozen=True)
class Run:
    start: int
    length: int
    parity: int

    def to_dict(self) -> dict[str, Any]:
        return {"start": self.start, "length": self.length, "parity": "odd" if self.parity else "even"}


@dataclass(frozen=True)
class RunProfile:
    m: int
    runs: tuple[Run, ...]

    def even_lengths(self) -> list[int]:
        return [r.length for r in self.runs if not r.parity]

    def to_dict(self) -> dict[str, Any]:
        return {"M": self.m, "runs": [r.to_dict() for r in self.runs]}


def even_run_profile(m: int) -> RunProfile:
    """Maximal constant-parity runs of row ``m`` over positions ``1..m+1``."""
    if m < 1:
        raise ValueError("M must be positive")
    runs = []
    start = 1
    for bit, group in itertools.groupby(parity_row(m)):
        length = sum(1 for _ in group)
        runs.append(Run(start, length, bit))
        start += length
    return RunProfile(m, tuple(runs))


def _check_pos(m: int, pos: int) -> None:
    if not 1 <= pos <= m + 1:
        raise IndexError(f"position {pos} outside 1..{m + 1}")


def odd_run_from(m: int, pos: int) -> int:
    """Consecutive odd entries starting at ``pos`` (inclusive)."""
    _check_pos(m, pos)
    return _run_from(m, pos, 1)


def even_run_from(m: int, pos: int) -> int:
    """Consecutive even entries starting at ``pos``, stopping at the row end."""
    _check_pos(m, pos)
    return _run_from(m, pos, 0)


def _run_from(m: int, pos: int, parity: int) -> int:
    count = 0
    while pos <= m + 1 and parity_at(m, pos) == parity:
        count += 1
        pos += 1
    return count


def prefix_sum_parity(z: int, y: int) -> int:
    """Parity of ``C(z,0) + ... + C(z,y-1)``, via the identity sum = ``C(z-1, y-1)``."""
    if y < 1:
        raise ValueError("y must be >= 1")
    if z < 1:
        raise ValueError("Z must be positive")
    return binom_parity(z - 1, y - 1)


def gap_lengths(m: int) -> list[int]:
    """Admissible even-run lengths ``2**l_g - 2**l_{g-1} - ... - 2**l_1 - 1`` for g = 1..m."""
    asc = BinaryExpansion.of(m).ascending
    return [(1 << asc[g]) - sum(1 << e for e in asc[:g]) - 1 for g in range(len(asc))]


@dataclass
class StructureAudit:
    m: int
    fact1: bool = True
    fact2: bool = True
    fact3: bool = True
    counterexamples: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.fact1 and self.fact2 and self.fact3

    def to_dict(self) -> dict[str, Any]:
        return {
            "M": self.m,
            "fact1": self.fact1,
            "fact2": self.fact2,
            "fact3": self.fact3,
            "counterexamples": self.counterexamples,
        }


def audit_structure_facts(m: int) -> StructureAudit:
    """Check the three even-run facts of row ``m``.

    1. every even run has a length from :func:`gap_lengths`;
    2. the run profile reads the same from both ends;
    3. between consecutive even runs of the g-th admissible length lie exactly
       ``2**g - 1`` even runs of other lengths (g is 1-based).

    Facts 2 and 3 are reported, not enforced; failures record the first counterexample.
    """
    profile = even_run_profile(m)
    audit = StructureAudit(m)
    allowed = gap_lengths(m)
    evens = [r for r in profile.runs if not r.parity]

    for run in evens:
        if run.length not in allowed:
            audit.fact1 = False
            audit.counterexamples["fact1"] = {"start": run.start, "length": run.length, "allowed": allowed}
            break

    signature = [(r.length, r.parity) for r in profile.runs]
    if signature != signature[::-1]:
        audit.fact2 = False
        first = next(i for i, (a, b) in enumerate(zip(signature, signature[::-1])) if a != b)
        audit.counterexamples["fact2"] = {"run_index": first}

    lengths = [r.length for r in evens]
    for g, target in enumerate(allowed, start=1):
        if target < 1:
            continue
        hits = [i for i, n in enumerate(lengths) if n == target]
        for a, b in zip(hits, hits[1:]):
            between = sum(1 for n in lengths[a + 1 : b] if n != target)
            if between != (1 << g) - 1:
                audit.fact3 = False
                audit.counterexamples["fact3"] = {
                    "g": g,
                    "length": target,
                    "left_start": evens[a].start,
                    "right_start": evens[b].start,
                    "others_between": between,
                    "expected": (1 << g) - 1,
                }
                break
        if not audit.fact3:
            break
    return audit


def pascal_mod2(rows: int, fmt: str = "ascii") -> str:
    """Rows ``0..rows-1`` of Pascal's triangle mod 2 as '0'/'1' text or plain PBM (P1)."""
    if rows < 1:
        raise ValueError("rows must be >= 1")
    lines = [parity_row(m) for m in range(rows)]
    if fmt == "ascii":
        return "\n".join("".join(map(str, line)) for line in lines) + "\n"
    if fmt == "pbm":
        width = rows
        out = ["P1", f"{width} {rows}"]
        for line in lines:
            padded = line + [0] * (width - len(line))
            out.append(" ".join(map(str, padded)))
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
