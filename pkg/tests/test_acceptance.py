"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import random
import time
from itertools import combinations
from math import comb

import pytest

from hhmp.degen import (build_star_pattern, check_degeneration_tree, check_rank_lemmas, degeneration_tree,
                        fm_eq_gz, reduce_pattern, richardson_check)
from hhmp.exactlinalg import SupportPattern
from hhmp.flagmatroid import flag_rank, hypersimplex, permutohedron
from hhmp.grassmann import (admissible_perms, berget_fink_terms, eulerian, grassmann_degree,
                            hypersimplex_decomposition, is_admissible, pushforward_dim_check, N_MINUS_I)
from hhmp.gzface import gz_face, hhmp_decomposition, phi, phi_inverse, random_point
from hhmp.permcore import all_perms, compose, embed, inverse, length, r_vector, w0_of
from hhmp.polytope import normalized_volume, verify_subdivision
from hhmp.schubert import at_class_sum, at_term, degree_wrt, product_in_basis
from hhmp.weights import WeightVector, default_weights

from conftest import RUNNING, RUNNING_STAR_GRID, SCHUBERT_EXAMPLE_GRID

REDUCED_STAR_GRID = [
    [0, 0, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
]

# one non-standard strict integral weight vector per n
OTHER_WEIGHTS = {3: (4, 2, 1), 4: (5, 3, 1, 0), 5: (6, 4, 3, 1, 0)}


@pytest.fixture
def verdict(capsys):
    def emit(number, title, failures, elapsed):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} ({elapsed:.1f}s)"
                  + (f" -- {failures[:3]}" if failures else ""))
        assert not failures, failures
    return emit


def test_criterion_1_worked_examples(verdict):
    start = time.perf_counter()
    bad = []
    w = RUNNING
    if r_vector(w) != (3, 3, 1, 3, 2, 2, 1):
        bad.append("r-vector")
    if length(w) != 8:
        bad.append("length")
    if inverse(w).images != (3, 4, 1, 6, 5, 7, 2):
        bad.append("inverse")
    if embed(w, "iota").images != (3, 7, 1, 2, 5, 4, 6, 8):
        bad.append("iota")
    if embed(w, "iota_bar").images != (1, 4, 8, 2, 3, 6, 5, 7):
        bad.append("iota_bar")
    if embed(compose(w0_of(7), w), "iota_bar").images != (1, 6, 2, 8, 7, 4, 5, 3):
        bad.append("iota_bar(w0 w)")
    P = SupportPattern.from_grid(SCHUBERT_EXAMPLE_GRID)
    if flag_rank(P, {1, 2, 3, 4}) != 18 or flag_rank(SupportPattern.full(8), {1, 2, 3, 4}) != 22:
        bad.append("flag ranks 18 / 22")
    A = build_star_pattern(w)
    if A.grid() != RUNNING_STAR_GRID:
        bad.append("A_w")
    wp, cell = reduce_pattern(w)
    if wp.images != (2, 6, 1, 4, 3, 5) or cell != (1, 4):
        bad.append("w'")
    if build_star_pattern(wp).support.to_grid() != REDUCED_STAR_GRID or A.delete(*cell) != build_star_pattern(wp):
        bad.append("A_w'")
    elapsed = time.perf_counter() - start
    if elapsed >= 1:
        bad.append(f"runtime {elapsed:.2f}s >= 1s")
    verdict(1, "worked examples reproduced exactly", bad, elapsed)


def test_criterion_2_hhmp_subdivision(verdict):
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 5):
        t0 = time.perf_counter()
        lam = default_weights(n)
        sub = hhmp_decomposition(lam)
        if len(sub.pieces) != len(list(all_perms(n - 1))):
            bad.append(f"n={n}: piece count")
        report = verify_subdivision(sub.parent, [p for _, p in sub.pieces])
        if not report.passed:
            bad.append(f"n={n}: {report.violations[:2]}")
        rng = random.Random(1000 + n)
        for _ in range(1000):
            z = random_point(lam, rng)
            _, x = phi_inverse(lam, z)
            if phi(lam, x) != z:
                bad.append(f"n={n}: round trip fails at {z}")
                break
        limit = 300 if n == 5 else 60
        if time.perf_counter() - t0 > limit:
            bad.append(f"n={n}: runtime over {limit}s")
    verdict(2, "HHMP pieces subdivide Perm(lambda), n=3,4,5; 1000-point round trips",
            bad, time.perf_counter() - start)


def test_criterion_3_fm_equals_gz(verdict):
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 5, 6):
        lam = default_weights(n)
        bad += [f"n={n}: {w}" for w in all_perms(n - 1) if not fm_eq_gz(lam, w)]
    verdict(3, "FM(lambda,w) = GZ(lambda,w) for every w, n=3,4,5,6", bad, time.perf_counter() - start)


def test_criterion_4_rank_lemmas(verdict):
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 5):
        for w in all_perms(n - 1):
            for k in range(n):
                for S in combinations(range(2, n + 1), k):
                    if not check_rank_lemmas(w, S).passed:
                        bad.append((str(w), S))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        bad.append(f"runtime {elapsed:.1f}s >= 60s")
    verdict(4, "rank lemmas for every w, S, j, n <= 5", bad, elapsed)


def test_criterion_5_richardson(verdict):
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 5, 6):
        for w in all_perms(n - 1):
            report = richardson_check(w)
            bad += [f"{w}: {c.name}" for c in report.failures()]
    verdict(5, "Schubert rank inequalities for both flags and dim FM = n-1, n <= 6",
            bad, time.perf_counter() - start)


def test_criterion_6_degree_equals_volume(verdict):
    start = time.perf_counter()
    bad = []
    for n in (3, 4, 5):
        for lam in (default_weights(n), WeightVector(OTHER_WEIGHTS[n])):
            total_pieces = 0
            for w in all_perms(n - 1):
                deg = degree_wrt(product_in_basis(*at_term(w)), lam)
                vol = normalized_volume(gz_face(lam, w).hrep)
                total_pieces += vol
                if deg != vol:
                    bad.append(f"lambda={lam} w={w}: degree {deg} vs volume {vol}")
            total = degree_wrt(at_class_sum(n), lam)
            perm_vol = normalized_volume(permutohedron(lam))
            if not total == perm_vol == total_pieces:
                bad.append(f"lambda={lam}: total degree {total} vs volume {perm_vol}")
    lam = WeightVector((2, 1, 0))
    if [degree_wrt(product_in_basis(*at_term(w)), lam) for w in all_perms(2)] != [3, 3]:
        bad.append("n=3 anchor 3 + 3 = 6")
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        bad.append(f"runtime {elapsed:.1f}s >= 300s")
    verdict(6, "degree of each class term = volume of its piece; totals match, n=3,4,5", bad, elapsed)


def test_criterion_7_degeneration_tree(verdict):
    start = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5, 6):
        tree = degeneration_tree(n)
        ws = [w for w, _ in tree.leaves()]
        if sorted(ws) != sorted(all_perms(n - 1)):
            bad.append(f"n={n}: leaves are not S_{n - 1} with multiplicity one")
        report = check_degeneration_tree(n, volumes=n <= 4)
        bad += [f"n={n}: {c.name}" for c in report.failures()]
    verdict(7, "tree leaves = A_w once each (n <= 6); branch volume additivity (n <= 4)",
            bad, time.perf_counter() - start)


def test_criterion_8_grassmannian(verdict):
    start = time.perf_counter()
    bad = []
    for n in range(3, 7):
        for r in range(1, n):
            terms = berget_fink_terms(n, r)
            if not len(terms) == len(admissible_perms(n, r)) == comb(n - 2, r - 1):
                bad.append(f"({n},{r}): term count")
            total = sum(grassmann_degree(a, b, r, n) for a, b in terms)
            if not total == normalized_volume(hypersimplex(r, n)) == eulerian(n - 1, r - 1):
                bad.append(f"({n},{r}): total degree {total}")
            sub = hypersimplex_decomposition(n, r)
            report = verify_subdivision(sub.parent, [p for _, p in sub.pieces])
            if not report.passed:
                bad.append(f"({n},{r}): {report.violations[:2]}")
            for w in all_perms(n - 1):
                if pushforward_dim_check(n, r, w) != is_admissible(w, r):
                    bad.append(f"({n},{r}): pushforward dimension at {w}")
    for (n, r), expected in (((4, 2), 4), ((5, 2), 11)):
        if sum(grassmann_degree(a, b, r, n) for a, b in berget_fink_terms(n, r)) != expected:
            bad.append(f"anchor ({n},{r}) -> {expected}")
    # the inequality system with bounds n - i is reported, not used
    wide = hypersimplex_decomposition(4, 2, N_MINUS_I)
    wide_ok = verify_subdivision(wide.parent, [p for _, p in wide.pieces]).passed
    title = ("C(n-2,r-1) terms, degrees sum to vol Delta(r,n) = Eulerian, pieces subdivide, "
             f"pushforward dim iff chain, n <= 6 [bounds n-i subdivide: {wide_ok}; bounds r-i used]")
    verdict(8, title, bad, time.perf_counter() - start)
