"""
Gelfand-Zetlin patterns, the faces ``GZ(lambda, w)``, the map ``Phi`` to the
permutohedron, its recursive inverse and the resulting decomposition of
``Perm(lambda)`` into ``(n-1)!`` pieces.

A pattern is a triangular array ``x[k, l]`` (``1 <= k <= l <= n``) with
``x[i, i] = lambda_i`` and interlacing ``x[k, l] >= x[k, l+1] >= x[k+1, l+1]``.
Diagonal ``j`` is the set of entries ``x[i, i+j]``.

On the face indexed by ``w`` (r-vector ``r``), every entry of diagonal ``j``
copies its left neighbour above position ``r_j`` and its lower neighbour
below it, leaving a single free entry ``x[r_j, r_j + j]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlinalg import QMatrix, solve
from .flagmatroid import permutohedron
from .permcore import Permutation, all_perms, perm_from_r_vector, r_vector
from .polytope import HPolytope, Subdivision
from .weights import WeightVector

__all__ = [
    "GZPattern", "GZFaceImage", "InterlacingError", "NotInPermutohedronError",
    "gz_face", "phi", "phi_inverse", "hhmp_decomposition", "in_permutohedron",
    "face_diagram", "face_phi_terms", "random_point",
]


class InterlacingError(ValueError):
    pass


class NotInPermutohedronError(ValueError):
    pass


@dataclass(frozen=True)
class GZPattern:
    """``rows[k-1][l-k] = x[k, l]``; so ``rows[k-1][0]`` is the diagonal entry ``lambda_k``."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        n = len(rows)
        if [len(r) for r in rows] != list(range(n, 0, -1)):
            raise ValueError("pattern rows must have lengths n, n-1, ..., 1")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, kl: tuple[int, int]) -> Fraction:
        k, l = kl
        return self.rows[k - 1][l - k]

    @classmethod
    def from_entries(cls, n: int, entries: dict[tuple[int, int], Fraction]) -> GZPattern:
        return cls(tuple(tuple(entries[k, l] for l in range(k, n + 1)) for k in range(1, n + 1)))

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(row[0] for row in self.rows)

    def interlacing_violations(self) -> list[tuple[int, int]]:
        bad = []
        n = self.n
        for k in range(1, n):
            for l in range(k, n):
                if not self[k, l] >= self[k, l + 1] >= self[k + 1, l + 1]:
                    bad.append((k, l))
        return bad


def phi(lam: WeightVector, x: GZPattern) -> tuple[Fraction, ...]:
    """``(y_0 - y_1, ..., y_{n-2} - y_{n-1}, y_{n-1})`` with ``y_j`` the sum of diagonal ``j``."""
    n = lam.n
    if x.n != n or x.weights() != lam.values:
        raise ValueError("pattern diagonal does not match the weights")
    bad = x.interlacing_violations()
    if bad:
        raise InterlacingError(f"interlacing fails at local configurations {bad}")
    y = [sum((x[i, i + j] for i in range(1, n - j + 1)), Fraction(0)) for j in range(n)]
    return tuple(y[j] - y[j + 1] for j in range(n - 1)) + (y[n - 1],)


def in_permutohedron(lam: WeightVector, z: Sequence) -> bool:
    """Majorisation test: partial sums of sorted ``z`` never exceed those of ``lambda``."""
    z = sorted((Fraction(v) for v in z), reverse=True)
    if len(z) != lam.n or sum(z) != lam.total():
        return False
    acc_z = acc_l = Fraction(0)
    for zi, li in zip(z, lam.values):
        acc_z += zi
        acc_l += li
        if acc_z > acc_l:
            return False
    return True


def phi_inverse(lam: WeightVector, z: Sequence) -> tuple[Permutation, GZPattern]:
    """
    Recursive inverse of ``Phi``: peel off ``z_1`` by choosing the smallest
    ``r_1`` with ``lambda_{r_1+1} <= z_1 <= lambda_{r_1}``, replace the pair
    ``lambda_{r_1}, lambda_{r_1+1}`` by ``lambda_{r_1} + lambda_{r_1+1} - z_1``
    and recurse on ``(z_2, ..., z_n)``.
    """
    z = tuple(Fraction(v) for v in z)
    if not in_permutohedron(lam, z):
        raise NotInPermutohedronError(f"{[str(v) for v in z]} is not in Perm({lam})")
    n = lam.n
    entries = {(i, i): lam[i] for i in range(1, n + 1)}
    r = []
    current = list(lam.values)
    for j in range(1, n):
        m = len(current)
        zj = z[j - 1]
        rj = next(k for k in range(1, m) if current[k] <= zj <= current[k - 1])
        nxt = current[:rj - 1] + [current[rj - 1] + current[rj] - zj] + current[rj + 1:]
        for i in range(1, m):
            entries[i, i + j] = nxt[i - 1]
        r.append(rj)
        current = nxt
    return perm_from_r_vector(r), GZPattern.from_entries(n, entries)


def _entry_expressions(n: int, r: Sequence[int]) -> dict[tuple[int, int], tuple[Fraction | None, int | None]]:
    """Each entry as ``(lambda index, None)`` or ``(None, free variable index)``; both 1-based."""
    expr: dict[tuple[int, int], tuple] = {(i, i): (i, None) for i in range(1, n + 1)}
    for j in range(1, n):
        rj = r[j - 1]
        for i in range(1, n - j + 1):
            if i < rj:
                expr[i, i + j] = expr[i, i + j - 1]
            elif i > rj:
                expr[i, i + j] = expr[i + 1, i + j]
            else:
                expr[i, i + j] = (None, j)
    return expr


def face_diagram(w: Permutation) -> dict:
    """Glued entries of the face as an adjacency list, plus the free entries."""
    n = w.n + 1
    r = r_vector(w)
    edges, free = [], []
    for j in range(1, n):
        rj = r[j - 1]
        for i in range(1, n - j + 1):
            if i < rj:
                edges.append([[i, i + j - 1], [i, i + j]])
            elif i > rj:
                edges.append([[i + 1, i + j], [i, i + j]])
            else:
                free.append([i, i + j])
    return {"n": n, "w": list(w.images), "r": list(r), "edges": edges, "free": free}


def face_phi_terms(w: Permutation) -> list[tuple[tuple[int, int], tuple[int, int], tuple[int, int]]]:
    """For ``j = 1..n-1``: coordinate ``j`` of ``Phi`` on the face is ``x[a] + x[b] - x[c]``."""
    r = r_vector(w)
    return [((rj, rj + j - 1), (rj + 1, rj + j), (rj, rj + j)) for j, rj in enumerate(r, start=1)]


@dataclass(frozen=True, eq=False)
class GZFaceImage:
    """
    The face ``GZ(lambda, w)`` parametrised by its ``n - 1`` free entries
    ``f_j = x[r_j, r_j + j]``, and its image under ``Phi`` in z-space.
    """

    w: Permutation
    lam: WeightVector
    free_entries: tuple[tuple[int, int], ...]
    free_hrep: HPolytope          # the face in f-coordinates
    affine_map: tuple[QMatrix, tuple[Fraction, ...]]   # z = M f + c
    hrep: HPolytope               # the image in z-space

    @cached_property
    def vertices(self):
        return self.hrep.vertices

    def pattern_at(self, f: Sequence) -> GZPattern:
        n = self.lam.n
        expr = _entry_expressions(n, r_vector(self.w))
        entries = {kl: (self.lam[li] if li is not None else Fraction(f[v - 1])) for kl, (li, v) in expr.items()}
        return GZPattern.from_entries(n, entries)


def gz_face(lam: WeightVector, w: Permutation) -> GZFaceImage:
    n = lam.n
    if w.n != n - 1:
        raise ValueError(f"face of GZ({lam}) needs w in S_{n - 1}, got S_{w.n}")
    r = r_vector(w)
    d = n - 1
    expr = _entry_expressions(n, r)

    def affine(kl):
        li, v = expr[kl]
        coeffs = [Fraction(0)] * d
        if li is not None:
            return coeffs, lam[li]
        coeffs[v - 1] = Fraction(1)
        return coeffs, Fraction(0)

    # interlacing a >= b >= c as rows "lhs.f <= rhs"
    rows = set()
    for k in range(1, n):
        for l in range(k, n):
            for big, small in (((k, l), (k, l + 1)), ((k, l + 1), (k + 1, l + 1))):
                (cb, kb), (cs, ks) = affine(big), affine(small)
                coeffs = tuple(s - b for s, b in zip(cs, cb))
                rhs = kb - ks
                if any(coeffs):
                    rows.add((coeffs, rhs))
                elif rhs < 0:
                    raise ValueError(f"weights {lam} are not weakly decreasing")
    rows = tuple(sorted(rows))
    free_hrep = HPolytope(d, (), rows)

    # Phi restricted to the face, z = M f + c
    diag_sums = []
    for j in range(n):
        coeffs, const = [Fraction(0)] * d, Fraction(0)
        for i in range(1, n - j + 1):
            cj, kj = affine((i, i + j))
            coeffs = [a + b for a, b in zip(coeffs, cj)]
            const += kj
        diag_sums.append((coeffs, const))
    M, c = [], []
    for j in range(n - 1):
        (a0, k0), (a1, k1) = diag_sums[j], diag_sums[j + 1]
        M.append([x - y for x, y in zip(a0, a1)])
        c.append(k0 - k1)
    M.append(diag_sums[n - 1][0])
    c.append(diag_sums[n - 1][1])

    # transport the face inequalities through the invertible map f -> (z_1..z_{n-1})
    head = M[:d]
    inv_cols = [solve(head, [Fraction(int(i == k)) for i in range(d)]) for k in range(d)]
    inv = [[inv_cols[k][i] for k in range(d)] for i in range(d)]  # f = inv (z' - c')
    z_rows = []
    for coeffs, rhs in rows:
        a = [sum((coeffs[i] * inv[i][k] for i in range(d)), Fraction(0)) for k in range(d)]
        b = rhs + sum((a[k] * c[k] for k in range(d)), Fraction(0))
        z_rows.append((tuple(a) + (Fraction(0),), b))
    hrep = HPolytope(n, (((1,) * n, lam.total()),), tuple(z_rows))
    free_entries = tuple((rj, rj + j) for j, rj in enumerate(r, start=1))
    return GZFaceImage(w, lam, free_entries, free_hrep,
                       (QMatrix(tuple(map(tuple, M))), tuple(c)), hrep)


def hhmp_decomposition(lam: WeightVector) -> Subdivision:
    if not lam.strict:
        raise ValueError(f"the decomposition needs strictly decreasing weights, got {lam}")
    n = lam.n
    pieces = [(str(w), gz_face(lam, w).hrep) for w in all_perms(n - 1)]
    return Subdivision(permutohedron(lam), pieces)


def random_point(lam: WeightVector, rng: random.Random, terms: int = 4) -> tuple[Fraction, ...]:
    """A rational convex combination of a few random rearrangements of ``lambda``."""
    weights = [Fraction(rng.randint(1, 20)) for _ in range(terms)]
    total = sum(weights)
    point = [Fraction(0)] * lam.n
    for wt in weights:
        perm = list(lam.values)
        rng.shuffle(perm)
        for i, v in enumerate(perm):
            point[i] += wt / total * v
    return tuple(point)
