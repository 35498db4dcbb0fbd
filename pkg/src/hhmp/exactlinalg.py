"""
Exact rational linear algebra and generic ranks of support patterns.

Entries are :class:`fractions.Fraction`.  A :class:`SupportPattern` stands
for a matrix whose supported entries are algebraically independent, so the
rank of any submatrix equals the size of a maximum matching between its rows
and columns inside the support (:func:`generic_rank`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "QMatrix", "SupportPattern", "GenericityError", "UnderdeterminedError",
    "rank", "generic_rank", "instantiate_generic", "solve", "determinant",
    "rref", "nullspace", "parse_rational", "format_rational",
]


class GenericityError(RuntimeError):
    """Could not find a random instance realising the generic ranks."""


class UnderdeterminedError(ValueError):
    """A linear system has more than one solution."""


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix over the rationals, stored row-major."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len({len(row) for row in rows}) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> QMatrix:
        """0-based row and column indices."""
        cols = list(cols)
        return QMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> QMatrix:
        return cls(tuple(tuple(parse_rational(str(x)) for x in row) for row in data))


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    top = 0
    for col in range(ncols):
        pivot = next((i for i in range(top, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        p = rows[top][col]
        rows[top] = [x / p for x in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    return _echelon([[Fraction(x) for x in r] for r in rows])


def _int_rank(rows: list[list[int]]) -> int:
    # fraction-free (Bareiss-style) elimination over the integers
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [p * a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _to_int_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(M: QMatrix | Sequence[Sequence]) -> int:
    rows = M.entries if isinstance(M, QMatrix) else M
    rows = list(rows)
    if not rows or not len(rows[0]):
        return 0
    return _int_rank(_to_int_rows(rows))


def determinant(M: QMatrix | Sequence[Sequence]) -> Fraction:
    rows = [[Fraction(x) for x in r] for r in (M.entries if isinstance(M, QMatrix) else M)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        for i in range(col + 1, n):
            f = rows[i][col] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return det


def solve(M: QMatrix | Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """
    Solve ``M x = b`` exactly.

    Returns ``None`` when the system is inconsistent and raises
    :class:`UnderdeterminedError` when the solution is not unique.
    """
    rows = list(M.entries if isinstance(M, QMatrix) else M)
    if len(rows) != len(b):
        raise ValueError(f"dimension mismatch: {len(rows)} rows vs {len(b)} right-hand sides")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise UnderdeterminedError(f"solution space has dimension {ncols - len(pivots)}")
    x = [Fraction(0)] * ncols
    for r, col in zip(red, pivots):
        x[col] = r[ncols]
    return tuple(x)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class SupportPattern:
    """Positions (0-based ``(row, col)``) allowed to be non-zero."""

    rows: int
    cols: int
    support: frozenset[tuple[int, int]]

    def __post_init__(self):
        support = frozenset((int(i), int(j)) for i, j in self.support)
        for i, j in support:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"support position {(i, j)} outside {self.rows}x{self.cols}")
        object.__setattr__(self, "support", support)

    @classmethod
    def full(cls, rows: int, cols: int | None = None) -> SupportPattern:
        cols = rows if cols is None else cols
        return cls(rows, cols, frozenset((i, j) for i in range(rows) for j in range(cols)))

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence]) -> SupportPattern:
        """Non-zero / truthy grid cells become support."""
        return cls(len(grid), len(grid[0]), frozenset(
            (i, j) for i, row in enumerate(grid) for j, x in enumerate(row) if x))

    def restrict_columns(self, cols: int) -> SupportPattern:
        return SupportPattern(self.rows, cols, frozenset((i, j) for i, j in self.support if j < cols))

    def to_grid(self) -> list[list[int]]:
        return [[int((i, j) in self.support) for j in range(self.cols)] for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(" ".join("*" if x else "0" for x in row) for row in self.to_grid())


def generic_rank(P: SupportPattern, S: Iterable[int] | None = None, j: int | None = None) -> int:
    """
    Rank of the generic matrix with support ``P`` restricted to rows ``S``
    (0-based; default all) and the first ``j`` columns (default all).

    Computed as a maximum bipartite matching (augmenting paths).
    """
    S = range(P.rows) if S is None else S
    j = P.cols if j is None else j
    adj = {}
    for i in S:
        cols = [c for c in range(j) if (i, c) in P.support]
        if cols:
            adj[i] = cols
    match_col: dict[int, int] = {}

    def augment(i, seen):
        for c in adj[i]:
            if c in seen:
                continue
            seen.add(c)
            if c not in match_col or augment(match_col[c], seen):
                match_col[c] = i
                return True
        return False

    return sum(1 for i in adj if augment(i, set()))


def instantiate_generic(P: SupportPattern, seed: int = 0, *, check_up_to: int = 8,
                        max_retries: int = 10) -> QMatrix:
    """
    Fill the support of ``P`` with distinct pseudo-random positive integers
    in ``[1, 2^20]`` and verify that every row-subset / column-prefix
    submatrix has the generic rank (when ``P.rows <= check_up_to``).
    """
    rng = random.Random(seed)
    positions = sorted(P.support)
    for _ in range(max_retries):
        values = rng.sample(range(1, 2 ** 20 + 1), len(positions))
        grid = [[Fraction(0)] * P.cols for _ in range(P.rows)]
        for (i, j), v in zip(positions, values):
            grid[i][j] = Fraction(v)
        M = QMatrix(tuple(map(tuple, grid)))
        if P.rows > check_up_to or _realises_generic_ranks(P, M):
            return M
    raise GenericityError(f"no generic instance found after {max_retries} draws")


def _realises_generic_ranks(P: SupportPattern, M: QMatrix) -> bool:
    for k in range(1, P.rows + 1):
        for S in combinations(range(P.rows), k):
            for j in range(1, P.cols + 1):
                if rank([M.entries[i][:j] for i in S]) != generic_rank(P, S, j):
                    return False
    return True
