"""
The star-pattern matrices ``A_w``, the row-by-row degeneration tree that
produces them, and the checks tying ``A_w`` to the GZ faces and to Richardson
varieties.

Rows and columns are 1-based in every public function of this module.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .exactlinalg import SupportPattern, generic_rank, instantiate_generic, rank
from .flagmatroid import fm_polytope
from .gzface import gz_face
from .permcore import Permutation, all_perms, embed, inverse, perm_from_r_vector, r_vector, w0_of, compose
from .polytope import dimension, equals, normalized_volume
from .weights import WeightVector, default_weights

__all__ = [
    "StarPattern", "DegenNode", "DegenTree", "build_star_pattern", "reduce_pattern",
    "check_rank_lemmas", "degeneration_tree", "check_degeneration_tree", "schubert_condition_dim", "fm_eq_gz", "richardson_check",
    "Check", "CheckReport",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarPattern:
    """``star1`` and ``star2`` hold 1-based ``(row, col)`` positions."""

    n: int
    star1: frozenset[tuple[int, int]]
    star2: frozenset[tuple[int, int]]

    @property
    def support(self) -> SupportPattern:
        return SupportPattern(self.n, self.n, frozenset((i - 1, j - 1) for i, j in self.star1 | self.star2))

    def grid(self) -> list[list[int]]:
        """0 for zero, 1 for a star-1 entry, 2 for a star-2 entry."""
        g = [[0] * self.n for _ in range(self.n)]
        for i, j in self.star1:
            g[i - 1][j - 1] = 1
        for i, j in self.star2:
            g[i - 1][j - 1] = 2
        return g

    def delete(self, row: int, col: int) -> StarPattern:
        """Drop a row and a column, renumbering the rest from 1."""
        def shift(cells):
            return frozenset((i - (i > row), j - (j > col)) for i, j in cells if i != row and j != col)
        return StarPattern(self.n - 1, shift(self.star1), shift(self.star2))

    def __str__(self) -> str:
        sym = {0: "0 ", 1: "*1", 2: "*2"}
        return "\n".join(" ".join(sym[x] for x in row) for row in self.grid())


def build_star_pattern(w: Permutation) -> StarPattern:
    """
    ``A_w`` for ``w`` in ``S_{n-1}``: row ``i < n`` gets a star-2 in column
    ``w^{-1}(i) + 1`` and a star-1 in the right-most column to its left that
    has no star-2 in an earlier row; row ``n`` has a single star-2 in column 1.
    """
    n = w.n + 1
    winv = inverse(w)
    star1, star2 = set(), set()
    used = set()
    for i in range(1, n):
        c2 = winv(i) + 1
        c1 = max(c for c in range(1, c2) if c not in used)
        star2.add((i, c2))
        star1.add((i, c1))
        used.add(c2)
    star2.add((n, 1))
    return StarPattern(n, frozenset(star1), frozenset(star2))


def reduce_pattern(w: Permutation) -> tuple[Permutation, tuple[int, int]]:
    """``w'`` with r-vector ``(r_2, ..., r_{n-1})`` and the deleted (row, column) of ``A_w``."""
    if w.n < 2:
        raise ValueError("reduction needs w in S_{n-1} with n >= 3")
    r = r_vector(w)
    return perm_from_r_vector(r[1:]), (1, r[0] + 1)


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **({"detail": self.detail} if self.detail else {})}


@dataclass
class CheckReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def extend(self, other: CheckReport) -> None:
        self.checks.extend(other.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _rk(P: SupportPattern, S: Iterable[int], j: int) -> int:
    return generic_rank(P, [i - 1 for i in S], j) if j > 0 else 0


def check_rank_lemmas(w: Permutation, S: Iterable[int]) -> CheckReport:
    """
    For ``S`` inside ``{2..n}`` verify how adding row 1 changes
    ``rk((A_w)_{S,j})`` and how the ranks of ``A_{w'}`` relate to those of
    ``A_w`` (rows of ``A_{w'}`` keep their labels, columns are renumbered).
    """
    n = w.n + 1
    S = tuple(sorted(S))
    if any(not 2 <= i <= n for i in S):
        raise ValueError("S must lie in {2, ..., n}")
    report = CheckReport()
    A = build_star_pattern(w).support
    r1 = r_vector(w)[0]
    Splus = (1,) + S
    for j in range(1, n + 1):
        lhs = _rk(A, Splus, j)
        if j <= r1 - 1:
            rhs = _rk(A, S, j)
        elif j == r1:
            rhs = _rk(A, S, r1 - 1) + 1
        else:
            rhs = _rk(A, S, j) + 1
        report.add(f"add-row-1 j={j}", lhs == rhs, S=list(S), lhs=lhs, rhs=rhs)
    if n >= 3:
        wp, _ = reduce_pattern(w)
        Ap = build_star_pattern(wp).support
        Sp = [i - 1 for i in S]   # A_{w'} row labelled i sits at position i - 1
        for j in range(1, n):
            lhs = _rk(Ap, Sp, j)
            expected = []
            if j <= r1:
                expected.append(_rk(A, S, j))
            if j >= r1:
                expected.append(_rk(A, S, j + 1))
            report.add(f"reduce j={j}", all(lhs == e for e in expected), S=list(S), lhs=lhs, rhs=expected)
    return report


@dataclass(frozen=True)
class DegenNode:
    """
    A pattern met during the degeneration.  ``fixed`` rows already carry their
    two stars; rows ``stage..n`` are generic on the ``active`` columns except
    that the first active row is zero on its first ``step`` active columns.
    """

    n: int
    stage: int
    step: int
    active: tuple[int, ...]
    fixed: tuple[tuple[int, int, int], ...]   # (row, star-1 col, star-2 col)
    r_prefix: tuple[int, ...]

    @property
    def pattern(self) -> SupportPattern:
        cells = set()
        for row, c1, c2 in self.fixed:
            cells.update({(row - 1, c1 - 1), (row - 1, c2 - 1)})
        for row in range(self.stage, self.n + 1):
            for k, col in enumerate(self.active):
                if row == self.stage and k < self.step:
                    continue
                cells.add((row - 1, col - 1))
        return SupportPattern(self.n, self.n, frozenset(cells))

    @property
    def is_leaf(self) -> bool:
        return self.stage == self.n

    def label(self) -> str:
        return f"stage{self.stage}/step{self.step}/r{''.join(map(str, self.r_prefix))}"


@dataclass
class DegenTree:
    n: int
    nodes: list[DegenNode] = field(default_factory=list)
    edges: list[tuple[int, int, dict]] = field(default_factory=list)
    pruned: list[tuple[int, DegenNode, str]] = field(default_factory=list)

    def leaves(self) -> list[tuple[Permutation, DegenNode]]:
        return [(perm_from_r_vector(node.r_prefix), node) for node in self.nodes if node.is_leaf]

    def children(self, idx: int) -> list[tuple[int, dict]]:
        return [(b, lab) for a, b, lab in self.edges if a == idx]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": [{"id": k, "label": node.label(), "pattern": node.pattern.to_grid(),
                       **({"w": list(perm_from_r_vector(node.r_prefix).images)} if node.is_leaf else {})}
                      for k, node in enumerate(self.nodes)],
            "edges": [{"from": a, "to": b, **lab} for a, b, lab in self.edges],
            "pruned": [{"from": a, "pattern": node.pattern.to_grid(), "reason": why}
                       for a, node, why in self.pruned],
        }


def _plus(node: DegenNode, j: int) -> DegenNode:
    """Row ``stage`` keeps active columns ``j`` and ``j+1``; column ``j+1`` leaves the active set."""
    c1, c2 = node.active[j - 1], node.active[j]
    active = tuple(c for c in node.active if c != c2)
    fixed = node.fixed + ((node.stage, c1, c2),)
    stage = node.stage + 1
    if stage == node.n:
        # last row: its only active column carries the final star-2
        (last,) = active
        fixed = fixed + ((node.n, last, last),)
        return DegenNode(node.n, node.n, 0, (), fixed, node.r_prefix + (j,))
    return DegenNode(node.n, stage, 0, active, fixed, node.r_prefix + (j,))


def degeneration_tree(n: int) -> DegenTree:
    """
    Starting from the generic ``n x n`` pattern, each stage walks along the
    first active row: step ``j`` either zeroes its ``j``-th active entry
    (continue) or splits off the pattern where that row keeps only active
    columns ``j, j+1`` and column ``j+1`` is cleared below (plus).  The final
    step of a stage keeps only the plus branch.
    """
    if n < 2:
        raise ValueError("degeneration tree needs n >= 2")
    tree = DegenTree(n)
    root = DegenNode(n, 1, 0, tuple(range(1, n + 1)), (), ())
    tree.nodes.append(root)
    stack = [0]
    while stack:
        idx = stack.pop()
        node = tree.nodes[idx]
        if node.is_leaf:
            continue
        m = len(node.active)
        j = node.step + 1
        plus = _plus(node, j)
        tree.nodes.append(plus)
        tree.edges.append((idx, len(tree.nodes) - 1, {"stage": node.stage, "j": j, "branch": "plus"}))
        stack.append(len(tree.nodes) - 1)
        cont = DegenNode(n, node.stage, j, node.active, node.fixed, node.r_prefix)
        if j < m - 1:
            tree.nodes.append(cont)
            tree.edges.append((idx, len(tree.nodes) - 1, {"stage": node.stage, "j": j, "branch": "zero-continue"}))
            stack.append(len(tree.nodes) - 1)
        else:
            reason = "first active row reduced to one entry; two torus factors act trivially, dimension drops"
            tree.pruned.append((idx, cont, reason))
            log.debug("pruned %s: %s", cont.label(), reason)
    return tree


def _leaf_star_pattern(node: DegenNode) -> StarPattern:
    star1 = frozenset((row, c1) for row, c1, c2 in node.fixed if row < node.n)
    star2 = frozenset((row, c2) for row, c1, c2 in node.fixed)
    return StarPattern(node.n, star1, star2)


def check_degeneration_tree(n: int, lam: WeightVector | None = None, volumes: bool = True) -> CheckReport:
    """Leaves against ``build_star_pattern`` and, optionally, volume additivity at every branching."""
    report = CheckReport()
    tree = degeneration_tree(n)
    leaves = tree.leaves()
    ws = [w for w, _ in leaves]
    report.add("leaves biject with S_{n-1}", sorted(ws) == sorted(all_perms(n - 1)),
               leaves=len(ws), distinct=len(set(ws)))
    for w, node in leaves:
        report.add(f"leaf {w} equals A_w", _leaf_star_pattern(node) == build_star_pattern(w))
    if volumes:
        lam = lam or default_weights(n)
        vol = {}

        def volume_of(node):
            key = node.pattern
            if key not in vol:
                vol[key] = normalized_volume(fm_polytope(lam, key))
            return vol[key]

        for idx, node in enumerate(tree.nodes):
            kids = tree.children(idx)
            if not kids:
                continue
            parent_v = volume_of(node)
            child_v = [volume_of(tree.nodes[b]) for b, _ in kids]
            pruned = [p for a, p, _ in tree.pruned if a == idx]
            pruned_dims = [dimension(fm_polytope(lam, p.pattern)) for p in pruned]
            report.add(f"volume additivity at {node.label()}", parent_v == sum(child_v),
                       parent=str(parent_v), children=[str(v) for v in child_v])
            for p, d in zip(pruned, pruned_dims):
                report.add(f"pruned child of {node.label()} is lower-dimensional", d < n - 1, dimension=d)
    return report


def fm_eq_gz(lam: WeightVector, w: Permutation) -> bool:
    return equals(fm_polytope(lam, build_star_pattern(w).support), gz_face(lam, w).hrep)


def _schubert_count(perm: Permutation, i: int, j: int) -> int:
    """``#({perm(1..i)} & {j+1..n})``."""
    return sum(1 for k in range(1, i + 1) if perm(k) > j)


def richardson_check(w: Permutation, lam: WeightVector | None = None, seed: int = 0,
                     instantiate: bool = True) -> CheckReport:
    """
    Containment of the orbit closure of ``A_w`` in both Schubert varieties,
    checked on ``A_w`` itself with ``L_i`` the span of its first ``i`` columns:

    * ``dim(L_i & H_[1,j]) >= #({w(1..i)} & {j+1..n-1})``
    * ``dim(L_i & H_[n+1-j,n]) >= #({w(1..i-1)} & {1..n-j})``

    where ``dim(L_i & H_S) = i - rk(rows S, first i columns)``.  The right-hand
    sides are also compared with the defining counts of ``iota(w)`` and
    ``iota_bar(w0 w)``.
    """
    n = w.n + 1
    report = CheckReport()
    star = build_star_pattern(w)
    P = star.support
    M = instantiate_generic(P, seed) if instantiate else None
    iw = embed(w, "iota")
    ibw = embed(compose(w0_of(n - 1), w), "iota_bar")

    def dim_meet(i, rows):
        g = i - _rk(P, rows, i)
        if M is not None:
            m = i - (rank([M.entries[r - 1][:i] for r in rows]) if rows else 0)
            if m != g:
                report.add("instantiated rank agrees with generic rank", False, i=i, rows=list(rows))
        return g

    worst_F = worst_Fp = None
    okF = okFp = True
    for i in range(1, n):
        for j in range(1, n):
            need_F = sum(1 for k in range(1, i + 1) if j + 1 <= w(k) <= n - 1)
            if need_F != _schubert_count(iw, i, j):
                report.add("F-count matches iota(w) definition", False, i=i, j=j)
            have = dim_meet(i, tuple(range(1, j + 1)))
            if have < need_F:
                okF = False
                worst_F = {"i": i, "j": j, "dim": have, "needed": need_F}
            need_Fp = sum(1 for k in range(1, i) if w(k) <= n - j)
            if need_Fp != _schubert_count(ibw, i, j):
                report.add("F'-count matches iota_bar(w0 w) definition", False, i=i, j=j)
            have = dim_meet(i, tuple(range(n + 1 - j, n + 1)))
            if have < need_Fp:
                okFp = False
                worst_Fp = {"i": i, "j": j, "dim": have, "needed": need_Fp}
    report.add(f"A_{w} lies in Schubert variety of iota(w) for F", okF, **({"witness": worst_F} if worst_F else {}))
    report.add(f"A_{w} lies in Schubert variety of iota_bar(w0 w) for F'", okFp,
               **({"witness": worst_Fp} if worst_Fp else {}))
    lam = lam or default_weights(n)
    d = dimension(fm_polytope(lam, P))
    report.add(f"dim FM(lambda, {w}) = n - 1", d == n - 1, dimension=d)
    codim = iw.length() + ibw.length()
    report.add("Richardson codimension leaves dimension n - 1",
               n * (n - 1) // 2 - codim == n - 1, codimension=codim)
    return report


def schubert_condition_dim(w: Permutation, i: int, rows: Iterable[int]) -> int:
    """``dim(L_i & H_rows)`` for the generic ``A_w``."""
    return i - _rk(build_star_pattern(w).support, tuple(rows), i)
