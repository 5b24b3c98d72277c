"""Dense linear algebra over GF(2) on int-packed rows.

Row ``r`` of a matrix is a Python int whose bit ``c`` holds entry ``(r, c)``.
Elimination works on copies; matrices and vectors are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

BRUTE_FORCE_MAX_COLS = 16


class DimensionError(ValueError):
    """Shapes of a matrix and vector do not fit together."""


class RefusalError(RuntimeError):
    """A request exceeds a configured safety bound."""


@dataclass(frozen=True)
class Gf2Vector:
    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise DimensionError("vector length must be >= 1")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("vector bits exceed declared length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> Gf2Vector:
        bits = 0
        for idx, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError(f"entry {v!r} is not a bit")
            bits |= v << idx
        return cls(len(values), bits)

    @classmethod
    def unit(cls, length: int, index: int) -> Gf2Vector:
        if not 0 <= index < length:
            raise IndexError(index)
        return cls(length, 1 << index)

    def __getitem__(self, idx: int) -> int:
        if not 0 <= idx < self.length:
            raise IndexError(idx)
        return (self.bits >> idx) & 1

    def __len__(self) -> int:
        return self.length

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def to_string(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class Gf2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 1 or self.ncols < 1:
            raise DimensionError("matrix needs at least one row and one column")
        if len(self.rows) != self.nrows:
            raise DimensionError("row count does not match stored rows")
        for row in self.rows:
            if row < 0 or row >> self.ncols:
                raise ValueError("row bits exceed column count")

    @classmethod
    def from_lists(cls, values: Sequence[Sequence[int]]) -> Gf2Matrix:
        if not values:
            raise DimensionError("empty matrix")
        ncols = len(values[0])
        rows = []
        for line in values:
            if len(line) != ncols:
                raise DimensionError("ragged rows")
            rows.append(Gf2Vector.from_list(line).bits)
        return cls(len(values), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Gf2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, pos: tuple[int, int]) -> int:
        r, c = pos
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(pos)
        return (self.rows[r] >> c) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.ncols)] for row in self.rows]

    def transpose(self) -> Gf2Matrix:
        cols = []
        for c in range(self.ncols):
            col = 0
            for r, row in enumerate(self.rows):
                col |= ((row >> c) & 1) << r
            cols.append(col)
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    def augment(self, b: Gf2Vector) -> Gf2Matrix:
        """Return ``[A | b]`` with ``b`` as the last column."""
        _check_rhs(self, b)
        shift = self.ncols
        rows = tuple(row | (((b.bits >> r) & 1) << shift) for r, row in enumerate(self.rows))
        return Gf2Matrix(self.nrows, self.ncols + 1, rows)

    def permute_rows(self, order: Iterable[int]) -> Gf2Matrix:
        order = list(order)
        if sorted(order) != list(range(self.nrows)):
            raise ValueError("not a permutation of row indices")
        return Gf2Matrix(self.nrows, self.ncols, tuple(self.rows[i] for i in order))

    def matvec(self, x: Gf2Vector) -> Gf2Vector:
        if x.length != self.ncols:
            raise DimensionError(f"vector of length {x.length} for {self.ncols} columns")
        bits = 0
        for r, row in enumerate(self.rows):
            bits |= ((row & x.bits).bit_count() & 1) << r
        return Gf2Vector(self.nrows, bits)

    def dump(self) -> str:
        """Text dump: header ``rows cols`` then one '0'/'1' line per row."""
        lines = [f"{self.nrows} {self.ncols}"]
        lines.extend("".join(str(v) for v in line) for line in self.to_lists())
        return "\n".join(lines) + "\n"


def _check_rhs(a: Gf2Matrix, b: Gf2Vector) -> None:
    if b.length != a.nrows:
        raise DimensionError(f"rhs of length {b.length} for {a.nrows} rows")


def _eliminate(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Pivots are the leftmost column first, taking the topmost nonzero row.
    Returns the pivot rows and their pivot columns, in column order.
    """
    pivot_cols: list[int] = []
    top = 0
    n = len(rows)
    for c in range(ncols):
        mask = 1 << c
        pivot = None
        for r in range(top, n):
            if rows[r] & mask:
                pivot = r
                break
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        prow = rows[top]
        for r in range(n):
            if r != top and rows[r] & mask:
                rows[r] ^= prow
        pivot_cols.append(c)
        top += 1
        if top == n:
            break
    return rows[:top], pivot_cols


def rank(a: Gf2Matrix) -> int:
    """Rank of ``a`` over GF(2)."""
    _, pivots = _eliminate(list(a.rows), a.ncols)
    return len(pivots)


def ranks(a: Gf2Matrix, b: Gf2Vector) -> tuple[int, int]:
    """Return ``(rank(A), rank([A|b]))`` from a single elimination."""
    aug = a.augment(b)
    _, pivots = _eliminate(list(aug.rows), aug.ncols)
    rank_aug = len(pivots)
    rank_a = rank_aug - (1 if pivots and pivots[-1] == a.ncols else 0)
    return rank_a, rank_aug


def is_consistent(a: Gf2Matrix, b: Gf2Vector) -> bool:
    rank_a, rank_aug = ranks(a, b)
    return rank_a == rank_aug


def solve(a: Gf2Matrix, b: Gf2Vector) -> Gf2Vector | None:
    """Solve ``A x = b``; ``None`` when the system is inconsistent.

    Free variables are set to 0, so the answer is deterministic.
    """
    aug = a.augment(b)
    reduced, pivots = _eliminate(list(aug.rows), aug.ncols)
    if pivots and pivots[-1] == a.ncols:
        return None
    rhs_bit = 1 << a.ncols
    x = 0
    for row, col in zip(reduced, pivots):
        if row & rhs_bit:
            x |= 1 << col
    return Gf2Vector(a.ncols, x)


def brute_force_solve(
    a: Gf2Matrix, b: Gf2Vector, max_cols: int = BRUTE_FORCE_MAX_COLS
) -> Gf2Vector | None:
    """Scan all ``2**cols`` candidates in lexicographic order (x_0 most significant).

    Returns the first ``x`` with ``A x = b``. Independent of elimination; used
    as an oracle for small systems only.
    """
    _check_rhs(a, b)
    n = a.ncols
    if n > max_cols:
        raise RefusalError(f"brute force over {n} columns exceeds limit {max_cols}")
    columns = a.transpose().rows
    # images[v] = A x where candidate x has x_c = bit (n-1-c) of v
    images = [0]
    for c in range(n - 1, -1, -1):
        col = columns[c]
        images += [v ^ col for v in images]
    try:
        v = images.index(b.bits)
    except ValueError:
        return None
    return Gf2Vector(n, sum(((v >> (n - 1 - c)) & 1) << c for c in range(n)))


def parse_dump(text: str) -> tuple[Gf2Matrix, Gf2Vector | None]:
    """Parse a matrix dump, optionally followed by a final right-hand-side line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dump")
    try:
        nrows, ncols = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad dump header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) not in (nrows, nrows + 1):
        raise ValueError(f"dump declares {nrows} rows but has {len(body)} lines")
    matrix_lines = body[:nrows]
    values = []
    for line in matrix_lines:
        if len(line) != ncols or set(line) - {"0", "1"}:
            raise ValueError(f"bad dump row {line!r}")
        values.append([int(ch) for ch in line])
    a = Gf2Matrix.from_lists(values)
    rhs = None
    if len(body) == nrows + 1:
        line = body[-1]
        if len(line) != nrows or set(line) - {"0", "1"}:
            raise ValueError(f"bad rhs line {line!r}")
        rhs = Gf2Vector.from_list([int(ch) for ch in line])
    return a, rhs
