"""
Exact rational polytopes living in an affine slice of ``R^n``.

An :class:`HPolytope` is ``{z : E z = e, A z <= b}``.  Vertices are found by
the double description method run on integer-scaled homogenised constraints;
:func:`vertices_by_tight_subsets` is the slow brute-force alternative kept as
an independent check.

Normalised volume is ``d!`` times the Euclidean volume measured in the lattice
``Z^n`` intersected with the slice.  For the slices ``sum(z) = c`` that occur
here, dropping the last coordinate identifies that lattice with ``Z^{n-1}``,
so a simplex contributes ``|det(v_1 - v_0, ..., v_d - v_0)|`` of the
projected vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .exactlinalg import UnderdeterminedError, determinant, format_rational, nullspace, rank, rref, solve

__all__ = [
    "HPolytope", "VPolytope", "Subdivision", "SubdivisionReport", "UnboundedError",
    "EmptyPolytopeError", "vertices", "vertices_by_tight_subsets", "dimension",
    "normalized_volume", "equals", "contains", "verify_subdivision", "affine_rank",
]

Point = tuple[Fraction, ...]
Row = tuple[tuple[Fraction, ...], Fraction]


class UnboundedError(ValueError):
    pass


class EmptyPolytopeError(ValueError):
    pass


def _row(coeffs: Iterable, rhs) -> Row:
    return tuple(Fraction(c) for c in coeffs), Fraction(rhs)


@dataclass(frozen=True, eq=False)
class HPolytope:
    """``equalities`` rows mean ``a.z == b``; ``inequalities`` rows mean ``a.z <= b``."""

    n: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "equalities", tuple(_row(a, b) for a, b in self.equalities))
        object.__setattr__(self, "inequalities", tuple(_row(a, b) for a, b in self.inequalities))
        for a, _ in self.equalities + self.inequalities:
            if len(a) != self.n:
                raise ValueError(f"constraint of length {len(a)} in ambient dimension {self.n}")

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted(_double_description(self)))

    def contains(self, z: Sequence) -> bool:
        z = [Fraction(x) for x in z]
        return (all(_dot(a, z) == b for a, b in self.equalities)
                and all(_dot(a, z) <= b for a, b in self.inequalities))

    def intersect(self, other: HPolytope) -> HPolytope:
        return HPolytope(self.n, self.equalities + other.equalities,
                         self.inequalities + other.inequalities)

    def with_inequalities(self, rows: Iterable[Row]) -> HPolytope:
        return HPolytope(self.n, self.equalities, self.inequalities + tuple(rows))

    def to_json(self, with_vertices: bool = True) -> dict:
        data = {
            "n": self.n,
            "eq": [[format_rational(c) for c in a] + [format_rational(b)] for a, b in self.equalities],
            "ineq": [[format_rational(c) for c in a] + [format_rational(b)] for a, b in self.inequalities],
        }
        if with_vertices:
            data["vertices"] = [[format_rational(c) for c in v] for v in self.vertices]
        return data

    @classmethod
    def from_json(cls, data: dict) -> HPolytope:
        def rows(key):
            return tuple((tuple(Fraction(c) for c in r[:-1]), Fraction(r[-1])) for r in data.get(key, []))
        return cls(int(data["n"]), rows("eq"), rows("ineq"))


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[Point, ...]


@dataclass
class Subdivision:
    parent: HPolytope
    pieces: list[tuple[str, HPolytope]] = field(default_factory=list)


@dataclass
class SubdivisionReport:
    passed: bool
    parent_volume: Fraction
    piece_volumes: list[Fraction]
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "parent_volume": format_rational(self.parent_volume),
            "piece_volumes": [format_rational(v) for v in self.piece_volumes],
            "violations": self.violations,
        }


def _dot(a, z) -> Fraction:
    return sum((x * y for x, y in zip(a, z)), Fraction(0))


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _integer_row(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _primitive([int(c * den) for c in coeffs])


def _parametrize(P: HPolytope) -> tuple[Point, list[Point]] | None:
    """``z = z0 + B u`` spanning the affine hull of the equalities, or None if inconsistent."""
    n = P.n
    if not P.equalities:
        return (Fraction(0),) * n, nullspace([], n)
    aug = [list(a) + [b] for a, b in P.equalities]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    z0 = [Fraction(0)] * n
    for r, p in zip(red, pivots):
        z0[p] = r[n]
    return tuple(z0), nullspace([a for a, _ in P.equalities], n)


def _double_description(P: HPolytope) -> list[Point]:
    param = _parametrize(P)
    if param is None:
        return []
    z0, basis = param
    d = len(basis)
    # homogenised constraints g.(u, t) <= 0 with t >= 0
    rows = []
    for a, b in P.inequalities:
        coeffs = [_dot(a, v) for v in basis]
        slack = b - _dot(a, z0)
        if not any(coeffs):
            if slack < 0:
                return []
            continue
        rows.append(_integer_row(coeffs + [-slack]))
    rows.append(tuple([0] * d + [-1]))
    rows = list(dict.fromkeys(rows))

    def lift(u_t: Sequence[int]) -> Point:
        t = u_t[d]
        return tuple(z0[k] + sum((Fraction(u_t[i], t) * basis[i][k] for i in range(d)), Fraction(0))
                     for k in range(P.n))

    if d == 0:
        return [z0]

    # initial simplicial cone from d+1 independent rows
    chosen: list[int] = []
    for idx in range(len(rows) - 1, -1, -1):
        if rank([rows[i] for i in chosen + [idx]]) == len(chosen) + 1:
            chosen.append(idx)
            if len(chosen) == d + 1:
                break
    if len(chosen) < d + 1:
        raise UnboundedError("constraint system has a lineality space")
    R0 = [[Fraction(x) for x in rows[i]] for i in chosen]
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []
    full_mask = sum(1 << i for i in chosen)
    for k in range(d + 1):
        rhs = [Fraction(-int(i == k)) for i in range(d + 1)]
        r = solve(R0, rhs)
        rays.append(_integer_row(list(r)))
        tight.append(full_mask & ~(1 << chosen[k]))

    chosen_set = set(chosen)
    for m, g in enumerate(rows):
        if m in chosen_set:
            continue
        values = [sum(x * y for x, y in zip(g, r)) for r in rays]
        plus = [i for i, s in enumerate(values) if s > 0]
        if not plus:
            tight = [t | (1 << m) if values[i] == 0 else t for i, t in enumerate(tight)]
            continue
        minus = [i for i, s in enumerate(values) if s < 0]
        new_rays, new_tight = [], []
        for p in plus:
            for q in minus:
                common = tight[p] & tight[q]
                if bin(common).count("1") < d - 1:
                    continue
                if any(k != p and k != q and (tight[k] & common) == common for k in range(len(rays))):
                    continue
                sp, sq = values[p], values[q]
                ray = _primitive([sp * y - sq * x for x, y in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_tight.append(common | (1 << m))
        keep = [i for i, s in enumerate(values) if s <= 0]
        rays = [rays[i] for i in keep] + new_rays
        tight = [tight[i] | (1 << m) if values[i] == 0 else tight[i] for i in keep] + new_tight

    if any(r[d] == 0 for r in rays):
        raise UnboundedError("polytope is unbounded")
    return list(dict.fromkeys(lift(r) for r in rays))


def vertices_by_tight_subsets(P: HPolytope) -> list[Point]:
    """Exhaustive search over subsets of inequalities made tight; exponential, for checking."""
    eqs = [list(a) for a, _ in P.equalities]
    eq_rhs = [b for _, b in P.equalities]
    r_eq = rank(eqs) if eqs else 0
    d = P.n - r_eq
    found = set()
    ineqs = P.inequalities
    for subset in combinations(range(len(ineqs)), d):
        A = eqs + [list(ineqs[i][0]) for i in subset]
        b = eq_rhs + [ineqs[i][1] for i in subset]
        if rank(A) < P.n:
            continue
        # keep a square, independent subsystem
        chosen, rhs = [], []
        for row, bi in zip(A, b):
            if rank(chosen + [row]) > len(chosen):
                chosen.append(row)
                rhs.append(bi)
        try:
            z = solve(chosen, rhs)
        except UnderdeterminedError:
            continue
        if z is not None and P.contains(z):
            found.add(z)
    return sorted(found)


def vertices(P: HPolytope) -> VPolytope:
    return VPolytope(P.vertices)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def dimension(P: HPolytope) -> int:
    verts = P.vertices
    if not verts:
        raise EmptyPolytopeError("dimension of an empty polytope")
    return affine_rank(verts)


def contains(P: HPolytope, Q: HPolytope) -> bool:
    """Whether ``Q`` is a subset of ``P``."""
    return all(P.contains(v) for v in Q.vertices)


def equals(P: HPolytope, Q: HPolytope) -> bool:
    if P.n != Q.n:
        raise ValueError("polytopes in different ambient dimensions")
    return set(P.vertices) == set(Q.vertices)


def _slice_is_standard(P: HPolytope) -> bool:
    """Lattice-volume convention applies when the only equality is sum(z) = c."""
    if rank([a for a, _ in P.equalities]) != 1:
        return False
    return all(len(set(a)) == 1 and a[0] != 0 for a, _ in P.equalities)


def normalized_volume(P: HPolytope) -> Fraction:
    """``d!`` times the lattice volume in the slice ``sum(z) = c``; 0 if not full-dimensional there."""
    if not _slice_is_standard(P):
        raise ValueError("normalized volume is defined for polytopes in a slice sum(z) = c")
    verts = P.vertices
    d = P.n - 1
    if not verts or affine_rank(verts) < d:
        return Fraction(0)
    projected = [v[:d] for v in verts]
    total = Fraction(0)
    for simplex in _triangulate(P, verts):
        base = projected[simplex[0]]
        total += abs(determinant([[x - y for x, y in zip(projected[i], base)] for i in simplex[1:]]))
    return total


def _triangulate(P: HPolytope, verts: Sequence[Point]) -> list[tuple[int, ...]]:
    """Pulling triangulation from the lowest-index vertex, recursing through facets."""
    d = affine_rank(verts)
    facet_sets = set()
    for a, b in P.inequalities:
        face = frozenset(i for i, v in enumerate(verts) if _dot(a, v) == b)
        if len(face) >= d and affine_rank([verts[i] for i in face]) == d - 1:
            facet_sets.add(face)
    facets = list(facet_sets)
    memo: dict[frozenset, list[tuple[int, ...]]] = {}

    def face_dim(face):
        return affine_rank([verts[i] for i in face])

    def subfacets(face, k):
        out = set()
        for F in facets:
            sub = face & F
            if sub != face and len(sub) >= k and face_dim(sub) == k - 1:
                out.add(sub)
        return out

    def tri(face, k):
        if face in memo:
            return memo[face]
        if k == 0:
            result = [(min(face),)]
        else:
            apex = min(face)
            result = []
            for sub in subfacets(face, k):
                if apex in sub:
                    continue
                result.extend((apex,) + s for s in tri(sub, k - 1))
        memo[face] = result
        return result

    return tri(frozenset(range(len(verts))), d)


def _separated(P: HPolytope, Q: HPolytope) -> bool:
    """Some facet-defining inequality of one polytope weakly separates the other."""
    for X, Y in ((P, Q), (Q, P)):
        for a, b in X.inequalities:
            if all(_dot(a, v) >= b for v in Y.vertices):
                return True
    return False


def verify_subdivision(parent: HPolytope, pieces: Sequence[HPolytope]) -> SubdivisionReport:
    """
    Check that ``pieces`` subdivide ``parent``: containment, full dimension,
    pairwise interior-disjointness and additivity of normalised volume.
    """
    violations = []
    d = parent.n - 1
    parent_volume = normalized_volume(parent)
    volumes = []
    for k, piece in enumerate(pieces):
        if not piece.vertices:
            violations.append(f"piece {k} is empty")
            volumes.append(Fraction(0))
            continue
        if not contains(parent, piece):
            violations.append(f"piece {k} is not contained in the parent")
        dim = dimension(piece)
        if dim != d:
            violations.append(f"piece {k} has dimension {dim}, expected {d}")
        volumes.append(normalized_volume(piece))
    for i, j in combinations(range(len(pieces)), 2):
        P, Q = pieces[i], pieces[j]
        if not P.vertices or not Q.vertices or _separated(P, Q):
            continue
        meet = P.intersect(Q).vertices
        if affine_rank(list(meet)) >= d:
            witness = [format_rational(x) for x in
                       (sum(meet[k][c] for k in range(len(meet))) / len(meet) for c in range(parent.n))]
            violations.append(f"pieces {i} and {j} overlap in a full-dimensional region around {witness}")
    if sum(volumes) != parent_volume:
        violations.append(f"piece volumes sum to {format_rational(sum(volumes))}, "
                          f"parent volume is {format_rational(parent_volume)}")
    return SubdivisionReport(not violations, parent_volume, volumes, violations)
