"""
Flag matroids of (pattern) matrices and their weighted polytopes.

For an ``n x n`` matrix ``A`` write ``rk(A_{S,j})`` for the rank of rows
``S`` and the first ``j`` columns.  The weighted flag matroid polytope is

    sum(z) = sum(lambda),   z_S <= sum_j (rk(A_{S,j}) - rk(A_{S,j-1})) * lambda_j

for every non-empty proper subset ``S``.  Subsets are 1-based throughout this
module; patterns are stored 0-based.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .exactlinalg import QMatrix, SupportPattern, generic_rank, rank
from .polytope import HPolytope
from .weights import WeightVector

__all__ = [
    "rank_profile", "flag_rank", "fm_polytope", "permutohedron", "hypersimplex",
    "SingularPatternError", "rank_function", "subsets",
]


class SingularPatternError(ValueError):
    pass


def subsets(n: int, proper: bool = True) -> Iterable[tuple[int, ...]]:
    """Non-empty subsets of ``[1, n]`` ordered by size, proper by default."""
    top = n - 1 if proper else n
    for k in range(1, top + 1):
        yield from combinations(range(1, n + 1), k)


@lru_cache(maxsize=None)
def _pattern_profile(P: SupportPattern, S: tuple[int, ...]) -> tuple[int, ...]:
    rows = [i - 1 for i in S]
    return tuple(generic_rank(P, rows, j) for j in range(1, P.cols + 1))


def rank_profile(A: SupportPattern | QMatrix, S: Iterable[int]) -> tuple[int, ...]:
    """``(rk(A_{S,1}), ..., rk(A_{S,n}))`` for 1-based rows ``S``."""
    S = tuple(sorted(S))
    if isinstance(A, SupportPattern):
        return _pattern_profile(A, S)
    rows = [A.entries[i - 1] for i in S]
    return tuple(rank([r[:j] for r in rows]) if rows else 0 for j in range(1, A.cols + 1))


def flag_rank(A: SupportPattern | QMatrix, S: Iterable[int]) -> int:
    """``sum_{j=1}^{n-1} rk(A_{S,j})``."""
    return sum(rank_profile(A, S)[:-1])


def rank_function(A: SupportPattern | QMatrix) -> dict[int, int]:
    """Flag rank of every subset, keyed by bitmask (bit ``i-1`` for row ``i``)."""
    n = A.rows
    out = {0: 0}
    for S in subsets(n, proper=False):
        out[sum(1 << (i - 1) for i in S)] = flag_rank(A, S)
    return out


def _full_rank(A: SupportPattern | QMatrix) -> bool:
    if isinstance(A, SupportPattern):
        return generic_rank(A) == A.rows
    return rank(A) == A.rows


def fm_polytope(lam: WeightVector, A: SupportPattern | QMatrix) -> HPolytope:
    n = lam.n
    if A.rows != n or A.cols != n:
        raise ValueError(f"expected an {n}x{n} matrix")
    if not _full_rank(A):
        raise SingularPatternError("flag matroid polytope needs a non-singular matrix")
    ineqs = []
    for S in subsets(n):
        profile = (0,) + rank_profile(A, S)
        bound = sum(((profile[j] - profile[j - 1]) * lam[j] for j in range(1, n + 1)), Fraction(0))
        ineqs.append((tuple(int(i in S) for i in range(1, n + 1)), bound))
    return HPolytope(n, (((1,) * n, lam.total()),), tuple(ineqs))


def permutohedron(lam: WeightVector) -> HPolytope:
    """``z_S <= lambda_1 + ... + lambda_|S|`` on the slice ``sum(z) = sum(lambda)``."""
    n = lam.n
    ineqs = []
    for S in subsets(n):
        ineqs.append((tuple(int(i in S) for i in range(1, n + 1)), sum(lam.values[:len(S)], Fraction(0))))
    return HPolytope(n, (((1,) * n, lam.total()),), tuple(ineqs))


def hypersimplex(r: int, n: int) -> HPolytope:
    if not 1 <= r <= n - 1:
        raise ValueError(f"hypersimplex needs 1 <= r <= n - 1, got r={r}, n={n}")
    ineqs = []
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        ineqs.append((e, 1))
        ineqs.append((tuple(-x for x in e), 0))
    return HPolytope(n, (((1,) * n, r),), tuple(ineqs))
