"""
Pushing the decomposition forward to ``Gr(r, n)``.

Only the pieces indexed by "chain" permutations survive,
``w(1) > ... > w(r) = 1 < w(r+1) < ... < w(n-1)``.  Each such ``w`` gives a
partition ``lambda`` inside the ``(r-1) x (n-r-1)`` rectangle, a summand
``sigma_lambda * sigma_lambda_bar`` of the Grassmannian class and a piece of
the hypersimplex ``Delta(r, n)``.

Grassmannian classes are handled directly on partitions with Pieri's rule for
``sigma_1``; this is independent of the flag-variety engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .degen import Check, CheckReport, build_star_pattern
from .exactlinalg import SupportPattern, generic_rank
from .flagmatroid import hypersimplex, subsets
from .permcore import Permutation, all_perms
from .polytope import HPolytope, Subdivision, affine_rank, dimension, normalized_volume, verify_subdivision
from .schubert import SchubertClass, multiply, product_in_basis, simple_reflection

__all__ = [
    "Partition", "GrassClass", "admissible_perms", "is_admissible", "partition_of",
    "complement", "berget_fink_terms", "grassmann_degree", "pieri_box",
    "hypersimplex_piece", "hypersimplex_decomposition", "matroid_polytope",
    "matroid_basis_vectors", "pushforward_dim_check", "grassmannian_permutation",
    "eulerian", "flag_engine_degree", "check_grassmann", "N_MINUS_I", "R_MINUS_I",
]

Partition = tuple[int, ...]

N_MINUS_I = "n-i"
R_MINUS_I = "r-i"


def _strip(p) -> Partition:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass
class GrassClass:
    r: int
    n: int
    terms: dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {_strip(p): c for p, c in self.terms.items() if c}
        for p in self.terms:
            if len(p) > self.r or any(x > self.n - self.r for x in p):
                raise ValueError(f"{p} does not fit in the {self.r}x{self.n - self.r} box")


def is_admissible(w: Permutation, r: int) -> bool:
    x = w.images
    m = len(x)
    if not 1 <= r <= m:
        return False
    return (x[r - 1] == 1 and all(x[i] > x[i + 1] for i in range(r - 1))
            and all(x[i] < x[i + 1] for i in range(r - 1, m - 1)))


def admissible_perms(n: int, r: int) -> list[Permutation]:
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n - 1, got r={r}, n={n}")
    out = []
    for head in combinations(range(2, n), r - 1):
        tail = sorted(set(range(2, n)) - set(head))
        out.append(Permutation(tuple(sorted(head, reverse=True)) + (1,) + tuple(tail)))
    return sorted(out)


def complement(lam: Partition, rows: int, cols: int) -> Partition:
    lam = tuple(lam) + (0,) * (rows - len(lam))
    if len(lam) > rows or any(p > cols for p in lam):
        raise ValueError(f"{lam} does not fit in a {rows}x{cols} rectangle")
    return _strip(cols - lam[rows - 1 - i] for i in range(rows))


def partition_of(w: Permutation, r: int, n: int) -> tuple[Partition, Partition]:
    """``lambda = (w(1) - r, w(2) - (r-1), ..., w(r-1) - 2)`` and its complement in ``(n-r-1)^(r-1)``."""
    if w.n != n - 1 or not is_admissible(w, r):
        raise ValueError(f"{w} does not satisfy the chain condition for r={r}")
    lam = _strip(w(i) - (r + 1 - i) for i in range(1, r))
    return lam, complement(lam, r - 1, n - r - 1)


def _partitions_in_box(rows: int, cols: int):
    def rec(k, cap):
        if k == rows:
            yield ()
            return
        for p in range(cap, -1, -1):
            for rest in rec(k + 1, p):
                yield (p,) + rest
    for p in rec(0, cols):
        yield _strip(p)


def berget_fink_terms(n: int, r: int) -> list[tuple[Partition, Partition]]:
    """One ``(lambda, lambda_bar)`` per partition inside ``(n-r-1)^(r-1)``."""
    return [(lam, complement(lam, r - 1, n - r - 1)) for lam in _partitions_in_box(r - 1, n - r - 1)]


def pieri_box(lam: Partition, r: int, n: int) -> list[Partition]:
    """Partitions in the ``r x (n-r)`` box obtained by adding one box (``sigma_1`` times ``sigma_lam``)."""
    p = list(lam) + [0] * (r - len(lam))
    out = []
    for i in range(r):
        if p[i] < n - r and (i == 0 or p[i - 1] > p[i]):
            q = p[:]
            q[i] += 1
            out.append(_strip(q))
    return out


def grassmann_degree(lam: Partition, lam_bar: Partition, r: int, n: int) -> int:
    """
    ``integral over Gr(r, n)`` of ``sigma_lam * sigma_lam_bar * sigma_1^k`` with
    ``k = r(n-r) - |lam| - |lam_bar|``: apply Pieri ``k`` times and read off the
    coefficient of the Poincare dual of ``lam_bar``.
    """
    k = r * (n - r) - sum(lam) - sum(lam_bar)
    if k < 0:
        return 0
    dual = complement(lam_bar, r, n - r)
    current = {_strip(lam): 1}
    for _ in range(k):
        nxt: dict[Partition, int] = {}
        for p, c in current.items():
            for q in pieri_box(p, r, n):
                nxt[q] = nxt.get(q, 0) + c
        current = nxt
    return current.get(dual, 0)


def grassmannian_permutation(lam: Partition, r: int, n: int) -> Permutation:
    """The permutation of ``S_n`` with a single descent at ``r`` whose class pulls back ``sigma_lam``."""
    p = tuple(lam) + (0,) * (r - len(lam))
    head = [i + 1 + p[r - 1 - i] for i in range(r)]
    tail = sorted(set(range(1, n + 1)) - set(head))
    return Permutation(tuple(head + tail))


def flag_engine_degree(lam: Partition, lam_bar: Partition, r: int, n: int) -> int:
    """
    The same integral computed in ``H*(Fl(n))``: pull both classes back along
    their Grassmannian permutations, multiply by ``sigma_{s_r}^k`` and read off
    the pullback of the point class of ``Gr(r, n)``.  Every surviving term
    must itself be Grassmannian, otherwise the two calculi disagree.
    """
    k = r * (n - r) - sum(lam) - sum(lam_bar)
    if k < 0:
        return 0
    c = product_in_basis(grassmannian_permutation(lam, r, n), grassmannian_permutation(lam_bar, r, n))
    divisor = SchubertClass.basis(simple_reflection(r, n))
    for _ in range(k):
        c = multiply(c, divisor)
    for w in c.terms:
        if any(w(i) > w(i + 1) for i in range(1, n) if i != r):
            raise ArithmeticError(f"non-Grassmannian term {w} in a pulled-back class")
    return c.terms.get(grassmannian_permutation((n - r,) * r, r, n), 0)


def eulerian(m: int, k: int) -> int:
    """Number of permutations of ``[m]`` with exactly ``k`` descents, by counting."""
    return sum(1 for w in all_perms(m)
               if sum(1 for i in range(m - 1) if w.images[i] > w.images[i + 1]) == k)


def hypersimplex_piece(w: Permutation, r: int, n: int, variant: str = R_MINUS_I) -> HPolytope:
    """
    The piece of ``Delta(r, n)`` for an admissible ``w``:
    ``z_[1, w(i)-1] <= b_i <= z_[1, w(i)]``.  The default variant uses
    ``b_i = r - i`` for ``i = 1..r-1``, which is what the column matroid of
    the first ``r`` columns of ``A_w`` cuts out.  ``N_MINUS_I`` uses
    ``b_i = n - i`` for ``i = 1..n-1`` and leaves most pieces empty; it is
    kept so reports can show that.
    """
    if variant == N_MINUS_I:
        indices, bound = range(1, n), (lambda i: n - i)
    elif variant == R_MINUS_I:
        indices, bound = range(1, r), (lambda i: r - i)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rows = []
    for i in indices:
        wi, b = w(i), bound(i)
        rows.append((tuple(int(k < wi) for k in range(1, n + 1)), b))
        rows.append((tuple(-int(k <= wi) for k in range(1, n + 1)), -b))
    return hypersimplex(r, n).with_inequalities(rows)


def hypersimplex_decomposition(n: int, r: int, variant: str = R_MINUS_I) -> Subdivision:
    pieces = [(str(w), hypersimplex_piece(w, r, n, variant)) for w in admissible_perms(n, r)]
    return Subdivision(hypersimplex(r, n), pieces)


def _first_columns(w: Permutation, r: int) -> SupportPattern:
    return build_star_pattern(w).support.restrict_columns(r)


def matroid_polytope(P: SupportPattern) -> HPolytope:
    """``sum(z) = rank``, ``z_S <= rk(S)`` for the column-span matroid on the rows of ``P``."""
    n = P.rows
    total = generic_rank(P)
    ineqs = []
    for S in subsets(n):
        ineqs.append((tuple(int(i in S) for i in range(1, n + 1)), generic_rank(P, [i - 1 for i in S])))
    return HPolytope(n, (((1,) * n, total),), tuple(ineqs))


def matroid_basis_vectors(P: SupportPattern) -> list[tuple[int, ...]]:
    """Indicator vectors of row sets forming a basis; these are the matroid polytope's vertices."""
    n, total = P.rows, generic_rank(P)
    return [tuple(int(i in B) for i in range(n))
            for B in combinations(range(n), total) if generic_rank(P, B) == total]


def pushforward_dim_check(n: int, r: int, w: Permutation, use_hrep: bool = False) -> bool:
    """Whether the matroid polytope of the first ``r`` columns of ``A_w`` has dimension ``n - 1``."""
    P = _first_columns(w, r)
    if use_hrep:
        return dimension(matroid_polytope(P)) == n - 1
    return affine_rank(matroid_basis_vectors(P)) == n - 1


def check_grassmann(n: int, r: int) -> CheckReport:
    """Term count, degrees against hypersimplex volume, piece subdivision and piece volumes."""
    report = CheckReport()
    adm = admissible_perms(n, r)
    terms = berget_fink_terms(n, r)
    report.add("term count is C(n-2, r-1)", len(terms) == len(adm) == comb(n - 2, r - 1),
               terms=len(terms), admissible=len(adm))
    images = {partition_of(w, r, n) for w in adm}
    report.add("admissible perms biject with partitions", images == set(terms))
    degrees = {t: grassmann_degree(*t, r, n) for t in terms}
    vol = normalized_volume(hypersimplex(r, n))
    total = sum(degrees.values())
    report.add("sum of degrees = vol(Delta(r,n)) = Eulerian number",
               total == vol == eulerian(n - 1, r - 1), degrees=total, volume=str(vol))
    wide = hypersimplex_decomposition(n, r, N_MINUS_I)
    wide_rep = verify_subdivision(wide.parent, [p for _, p in wide.pieces])
    report.checks.append(_info("piece inequalities with bounds n - i subdivide Delta(r,n)",
                               wide_rep.passed, wide_rep.violations[:3]))
    sd = hypersimplex_decomposition(n, r, R_MINUS_I)
    rep = verify_subdivision(sd.parent, [p for _, p in sd.pieces])
    report.add("pieces with bounds r - i subdivide Delta(r,n)", rep.passed, violations=rep.violations)
    for w, (_, piece) in zip(adm, sd.pieces):
        lam, lam_bar = partition_of(w, r, n)
        v = normalized_volume(piece)
        report.add(f"vol(piece {w}) = degree of sigma_{lam} sigma_{lam_bar}",
                   v == degrees[lam, lam_bar], volume=str(v), degree=degrees[lam, lam_bar])
        M = matroid_polytope(_first_columns(w, r))
        report.add(f"piece {w} is the matroid polytope of the first r columns of A_w",
                   set(M.vertices) == set(piece.vertices))
    return report


def _info(name, passed, violations):
    # informational: recorded but never fails the report
    return Check(name + " [informational]", True, {"holds": passed, "violations": violations})
