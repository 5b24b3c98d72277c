"""Combinatorial answers to the two binomial systems.

Two kinds of predicates live here:

* string conditions on the parity row (``restated_conditions_i`` and the
  Problem II parity conditions), evaluated for one ``(k, l[, q])``;
* case-by-case enumerators that list the ``(k, l)`` pairs the case analysis
  produces for a fixed ``(M, j)``, each tagged with its sub-case and the free
  parameters chosen.

Conventions: positions are 1-based (``C(M, n)`` sits at position ``n + 1``);
positions past ``M + 1`` are even. ``S[i]`` is the i-th odd position (1-based
``i``) and ``gap(i) = S[i+1] - S[i] - 1``; gaps after the last odd position are
undefined, so sub-cases that need them emit nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterator

from .parity import BinaryExpansion, binom_parity, odd_positions, parity_at, prefix_sum_parity

SUBCASES = (
    "I.a",
    "I.b.either",
    "I.b.or",
    "II.a.either",
    "II.a.or",
    "II.b",
    "II.c.main",
    "II.c.nontrivial.i",
    "II.c.nontrivial.ii",
    "II.c.nontrivial.iii",
)


class PreconditionError(ValueError):
    """An enumerator was called outside its case."""


@dataclass(frozen=True)
class Bounds:
    kmax: int
    lmax: int
    qmax: int = 1

    def __post_init__(self) -> None:
        if min(self.kmax, self.lmax, self.qmax) < 1:
            raise ValueError("bounds must be >= 1")


@dataclass(frozen=True, order=True)
class CandidateSolution:
    k: int
    l: int  # noqa: E741
    subcase: str
    choices: tuple[tuple[str, int], ...] = field(default=())
    q: int | None = None

    def sort_key(self) -> tuple:
        return (self.k, self.l, self.q or 0, self.subcase, self.choices)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"k": self.k, "l": self.l}
        if self.q is not None:
            out["q"] = self.q
        out["subcase"] = self.subcase
        out["choices"] = dict(self.choices)
        return out


# ---------------------------------------------------------------------------
# restated conditions


def restated_conditions_i(m: int, j: int, k: int, l: int) -> bool:  # noqa: E741
    """The three string conditions on ``C(M, j), ..., C(M, j+l+k)``.

    1. ``C(M, j)`` and ``C(M, j+k+1)`` differ in parity;
    2. the block ``C(M, j+1..j+k+1)`` repeats with period ``k+1`` up to ``C(M, j+l+k)``;
    3. that block holds an even number of odd entries.
    """
    if binom_parity(m, j) == binom_parity(m, j + k + 1):
        return False
    period = k + 1
    last = j + l + k
    for t in range(1, period + 1):
        ref = binom_parity(m, j + t)
        n = j + t + period
        while n <= last:
            if binom_parity(m, n) != ref:
                return False
            n += period
    return sum(binom_parity(m, j + t) for t in range(1, period + 1)) % 2 == 0


def string_sum_parity(z: int, j: int, k: int, l: int, a: int) -> int:  # noqa: E741
    """Parity of ``C(z, j+l+a) + ... + C(z, j+k+l+a)``, summed term by term."""
    if a < 1:
        raise ValueError("shift a must be >= 1")
    total = 0
    for t in range(j + l + a, j + k + l + a + 1):
        total ^= binom_parity(z, t)
    return total


def string_sum_parity_by_prefix(z: int, j: int, k: int, l: int, a: int) -> int:  # noqa: E741
    return prefix_sum_parity(z, j + k + l + a + 1) ^ prefix_sum_parity(z, j + l + a)


def condition_star(alpha: int, delta: int, j: int, k: int, l: int) -> bool:  # noqa: E741
    return string_sum_parity(alpha + delta, j, k, l, 1) == string_sum_parity(alpha, j, k, l, 1)


def condition_star_closed_form(alpha: int, delta: int, j: int, k: int, l: int) -> bool:  # noqa: E741
    """Condition (*) via ``C(Z-1, j+k+l) + C(Z-1, j+l-1)`` for ``Z = M`` and ``Z = alpha``.

    Kept as published so sweeps can count where it departs from
    :func:`condition_star`.
    """
    m = alpha + delta
    lhs = binom_parity(m - 1, j + k + l) ^ binom_parity(m - 1, j + l - 1)
    rhs = binom_parity(alpha - 1, j + k + l) ^ binom_parity(alpha - 1, j + l - 1)
    return lhs == rhs


def condition_double_star(alpha: int, delta: int, j: int, k: int, l: int, q: int) -> bool:  # noqa: E741
    """For every shift ``a`` in ``2..q``: the M- and alpha-string sums at shift ``a``
    differ in parity iff ``sum_{p=1}^{a-1} C(delta, p) * alpha-sum(a - p)`` is odd."""
    m = alpha + delta
    alpha_sums = {a: string_sum_parity(alpha, j, k, l, a) for a in range(1, q + 1)}
    for a in range(2, q + 1):
        differ = string_sum_parity(m, j, k, l, a) != alpha_sums[a]
        weighted = 0
        for p in range(1, a):
            weighted ^= binom_parity(delta, p) & alpha_sums[a - p]
        if differ != bool(weighted):
            return False
    return True


def restated_conditions_ii(alpha: int, delta: int, j: int, k: int, l: int, q: int) -> bool:  # noqa: E741
    return (
        restated_conditions_i(alpha + delta, j, k, l)
        and condition_star(alpha, delta, j, k, l)
        and condition_double_star(alpha, delta, j, k, l, q)
    )


# ---------------------------------------------------------------------------
# enumerators


class _Row:
    """Parity row of M with run queries that treat positions past M+1 as even."""

    def __init__(self, m: int) -> None:
        self.m = m
        self.odd = odd_positions(m).positions  # S[1..] stored 0-based
        self.count = len(self.odd)

    def S(self, i: int) -> int:
        return self.odd[i - 1]

    def has(self, i: int) -> bool:
        return 1 <= i <= self.count

    def gap(self, i: int) -> int | None:
        if not (self.has(i) and self.has(i + 1)):
            return None
        return self.S(i + 1) - self.S(i) - 1

    def index_of(self, pos: int) -> int | None:
        if parity_at(self.m, pos) != 1:
            return None
        # binary search over sorted positions
        lo, hi = 0, self.count
        while lo < hi:
            mid = (lo + hi) // 2
            if self.odd[mid] < pos:
                lo = mid + 1
            else:
                hi = mid
        return lo + 1

    def at(self, pos: int) -> int:
        return parity_at(self.m, pos)

    def run(self, pos: int, parity: int) -> float:
        """Consecutive entries of ``parity`` from ``pos``.

        Zeros continue forever past the row end, so an even run reaching
        position M+2 is unbounded (``inf``).
        """
        count = 0
        while pos <= self.m + 1 and self.at(pos) == parity:
            count += 1
            pos += 1
        if parity == 0 and pos > self.m + 1:
            return math.inf
        return count


def _l_values(upper: float, lmax: int) -> range:
    return range(1, int(min(upper, lmax)) + 1)


def _emit(
    out: list[CandidateSolution],
    bounds: Bounds,
    k: int,
    ls: Iterator[int] | range,
    subcase: str,
    **choices: int,
) -> None:
    if not 1 <= k <= bounds.kmax:
        return
    frozen = tuple(sorted(choices.items()))
    for l in ls:  # noqa: E741
        if 1 <= l <= bounds.lmax:
            out.append(CandidateSolution(k, l, subcase, frozen))


def _finish(out: list[CandidateSolution]) -> list[CandidateSolution]:
    return sorted(set(out), key=CandidateSolution.sort_key)


def _block_l_upper(row: _Row, after: int, parity: int, start_a: int, start_b: int) -> float | None:
    """Shared l-rule: if the entry at ``after`` breaks ``parity`` take l = 1 (returns None);
    otherwise l <= 1 + min of the two ``parity`` runs."""
    if row.at(after) != parity:
        return None
    return 1 + min(row.run(start_a, parity), row.run(start_b, parity))


def enumerate_case_i(m: int, j: int, bounds: Bounds) -> list[CandidateSolution]:
    """Candidates for ``C(M, j)`` odd."""
    if binom_parity(m, j) != 1:
        raise PreconditionError(f"C({m},{j}) is even; case I needs it odd")
    row = _Row(m)
    i = row.index_of(j + 1)
    assert i is not None
    out: list[CandidateSolution] = []
    gap_i = row.gap(i)
    if gap_i is None:
        return out

    def block_choices() -> Iterator[tuple[int, int, int]]:
        # even s >= 2 with a positive gap after i+s; L in 1..gap(i+s)
        s = 2
        while row.gap(i + s) is not None:
            g = row.gap(i + s)
            if g > 0:
                for big_l in range(1, g + 1):
                    yield s, big_l, row.S(i + s) + big_l - row.S(i) - 1
            s += 2

    if gap_i == 0:
        for s, big_l, k in block_choices():
            end = row.S(i + s) + big_l
            upper = _block_l_upper(row, end + 1, 1, 1 + row.S(i), 1 + end)
            _emit(out, bounds, k, range(1, 2) if upper is None else _l_values(upper, bounds.lmax), "I.a", i=i, s=s, L=big_l)
        return _finish(out)

    for k in range(1, gap_i):
        upper = row.S(i + 1) - row.S(i) - (k + 1)
        _emit(out, bounds, k, _l_values(upper, bounds.lmax), "I.b.either", i=i)
    for s, big_l, k in block_choices():
        end = row.S(i + s) + big_l
        upper = _block_l_upper(row, end + 1, 0, 1 + row.S(i), 1 + end)
        _emit(out, bounds, k, range(1, 2) if upper is None else _l_values(upper, bounds.lmax), "I.b.or", i=i, s=s, L=big_l)
    return _finish(out)


def enumerate_case_ii(m: int, j: int, bounds: Bounds) -> list[CandidateSolution]:
    """Candidates for ``C(M, j)`` even."""
    if binom_parity(m, j) != 0:
        raise PreconditionError(f"C({m},{j}) is odd; case II needs it even")
    row = _Row(m)
    out: list[CandidateSolution] = []
    start = j + 2
    i = row.index_of(start) if start <= m + 1 else None

    if i is not None:
        odd_run = row.run(row.S(i), 1)
        u = odd_run - 1
        if u % 2 == 1:
            # II.a
            for k in range(1, u + 1, 2):
                _emit(out, bounds, k, _l_values(u + 1 - k, bounds.lmax), "II.a.either", i=i, u=u)
            for s in range(1, row.count - i + 1, 2):
                end = row.S(i + s)
                upper = _block_l_upper(row, end + 1, 1, row.S(i), 1 + end)
                ls = range(1, 2) if upper is None else _l_values(upper, bounds.lmax)
                _emit(out, bounds, end - row.S(i), ls, "II.a.or", i=i, u=u, s=s)
        gap_i = row.gap(i)
        if gap_i is not None and gap_i > 0:
            for s in range(1, row.count - i + 1, 2):
                _emit(out, bounds, row.S(i + s) - row.S(i), range(1, 2), "II.b", i=i, s=s)
        return _finish(out)

    # II.c
    later = [idx for idx in range(1, row.count + 1) if row.S(idx) > start]
    if later:
        i0 = later[0]
        for s in range(1, row.count - i0 + 1, 2):
            end = row.S(i0 + s)
            upper = _block_l_upper(row, end + 1, 0, start, 1 + end)
            ls = range(1, 2) if upper is None else _l_values(upper, bounds.lmax)
            _emit(out, bounds, end - start, ls, "II.c.main", i_0=i0, s=s)
    _nontrivial(row, j, bounds, out)
    return _finish(out)


def _subset_sums(powers: list[int]) -> list[int]:
    sums = [0]
    for p in powers:
        sums += [v + p for v in sums]
    return sorted(set(sums))


def _nontrivial(row: _Row, j: int, bounds: Bounds, out: list[CandidateSolution]) -> None:
    """Extra II.c families indexed by bit gaps in the binary expansion of M.

    With ``M = 2**N_r + ... + 2**N_1`` (``N_r > ... > N_1``), the marked exponents are
    ``N_b`` (``b < r``) with ``N_{b+1} - N_b > 1``, indexed ``d = 1..t`` from the
    smallest. For family ``d`` and a subset sum ``x`` of the powers above the marked
    exponent (excluding the full sum; 0 included), the entry ``C(M, j)`` must sit at
    position ``1 + x + 2**(1 + N_{s_d})`` counted from the right.
    """
    m = row.m
    n_asc = list(BinaryExpansion.of(m).ascending)  # N_1 < ... < N_r
    r = len(n_asc)
    above_two = [e for e in n_asc if e >= 2]
    n_s0 = above_two[0] if above_two else None
    marked = [b for b in range(1, r) if n_asc[b] - n_asc[b - 1] > 1]  # 1-based b
    for d, b in enumerate(marked, start=1):
        n_sd = n_asc[b - 1]
        higher = [1 << e for e in n_asc[b:]]
        full = sum(higher)
        for x in _subset_sums(higher):
            if x >= full:
                continue
            shift = 1 << (1 + n_sd)
            if j != m - x - shift:
                continue
            base = min(row.run(j + 2, 0), row.run(j + shift + 2, 0))
            _emit(out, bounds, (1 << n_sd) - 1, _l_values(1 + (1 << n_sd) + base, bounds.lmax),
                  "II.c.nontrivial.i", d=d, x=x)
            if d > 1:
                n_prev = n_asc[marked[d - 2] - 1]
                zs = [z for z in n_asc if n_prev < z < n_sd]
                tag = "II.c.nontrivial.ii"
            elif n_s0 is not None and n_sd > n_s0:
                zs = [z for z in n_asc if n_s0 <= z < n_sd]
                tag = "II.c.nontrivial.iii"
            else:
                zs = []
                tag = ""
            for z in zs:
                upper = 1 + (1 << z) * ((1 << (n_sd - z + 1)) - 1) + base
                _emit(out, bounds, (1 << z) - 1, _l_values(upper, bounds.lmax), tag, d=d, x=x, z=z)


def enumerate_problem_i(m: int, j: int, bounds: Bounds) -> list[CandidateSolution]:
    if binom_parity(m, j):
        return enumerate_case_i(m, j, bounds)
    return enumerate_case_ii(m, j, bounds)


def enumerate_problem_ii(alpha: int, delta: int, j: int, bounds: Bounds) -> list[CandidateSolution]:
    """Problem I candidates for ``M = alpha + delta`` kept for each ``q <= qmax`` that
    also satisfies conditions (*) and (**)."""
    base = enumerate_problem_i(alpha + delta, j, bounds)
    out = []
    star: dict[tuple[int, int], bool] = {}
    for cand in base:
        key = (cand.k, cand.l)
        if key not in star:
            star[key] = condition_star(alpha, delta, j, cand.k, cand.l)
        if not star[key]:
            continue
        for q in range(1, bounds.qmax + 1):
            if condition_double_star(alpha, delta, j, cand.k, cand.l, q):
                out.append(CandidateSolution(cand.k, cand.l, cand.subcase, cand.choices, q))
    return sorted(out, key=CandidateSolution.sort_key)
