from itertools import combinations, permutations

import pytest

from hhmp.degen import build_star_pattern
from hhmp.exactlinalg import SupportPattern, generic_rank, instantiate_generic
from hhmp.flagmatroid import (SingularPatternError, flag_rank, fm_polytope, hypersimplex, permutohedron,
                              rank_function, rank_profile)
from hhmp.permcore import Permutation, all_perms
from hhmp.polytope import contains, equals
from hhmp.weights import WeightVector, default_weights

from conftest import SCHUBERT_EXAMPLE_GRID


def test_schubert_example_flag_rank():
    P = SupportPattern.from_grid(SCHUBERT_EXAMPLE_GRID)
    assert rank_profile(P, {1, 2, 3, 4}) == (1, 1, 2, 3, 3, 4, 4, 4)
    assert flag_rank(P, {1, 2, 3, 4}) == 18
    assert flag_rank(instantiate_generic(P), {1, 2, 3, 4}) == 18


def test_generic_flag_rank():
    assert flag_rank(SupportPattern.full(8), {1, 2, 3, 4}) == 22


def test_empty_set_rank():
    assert flag_rank(SupportPattern.full(4), ()) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rank_function_endpoints(n):
    rk = rank_function(build_star_pattern(Permutation(tuple(range(1, n)))).support)
    assert rk[0] == 0
    assert rk[(1 << n) - 1] == n * (n - 1) // 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_uniform_pattern_gives_permutohedron(n):
    lam = default_weights(n)
    assert equals(fm_polytope(lam, SupportPattern.full(n)), permutohedron(lam))


def test_a_id_binding_constraint():
    lam = WeightVector((2, 1, 0))
    P = fm_polytope(lam, build_star_pattern(Permutation((1, 2))).support)
    rows = dict(P.inequalities)
    assert rows[(0, 1, 1)] == 2
    assert P.contains((1, 1, 1)) and not P.contains((0, 1, 2))
    assert all(v[0] >= 1 for v in P.vertices)


def test_constant_weights_point():
    lam = WeightVector((3, 3, 3, 3))
    P = fm_polytope(lam, build_star_pattern(Permutation((2, 1, 3))).support)
    assert P.vertices == ((3, 3, 3, 3),)


def test_hexagon_and_octahedron():
    assert len(permutohedron(WeightVector((2, 1, 0))).vertices) == 6
    D = hypersimplex(2, 4)
    assert set(D.vertices) == {v for v in permutations((1, 1, 0, 0))}


def test_singular_pattern_rejected():
    P = SupportPattern(3, 3, frozenset({(0, 0), (1, 0), (2, 0)}))
    with pytest.raises(SingularPatternError):
        fm_polytope(default_weights(3), P)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fm_inside_perm_with_permutation_vertices(n):
    for lam in (default_weights(n), WeightVector(tuple(range(2 * n, 0, -2))), WeightVector((2,) * (n - 1) + (0,))):
        perm = permutohedron(lam)
        allowed = set(permutations(lam.values))
        for w in all_perms(n - 1):
            P = fm_polytope(lam, build_star_pattern(w).support)
            assert contains(perm, P)
            assert set(P.vertices) <= allowed


@pytest.mark.parametrize("n", [3, 4, 5])
def test_column_prefix_submodularity(n):
    for w in all_perms(n - 1):
        P = build_star_pattern(w).support
        subsets = [frozenset(S) for k in range(n + 1) for S in combinations(range(n), k)]
        for j in range(1, n + 1):
            rk = {S: generic_rank(P, S, j) for S in subsets}
            for S in subsets:
                for T in subsets:
                    assert rk[S | T] + rk[S & T] <= rk[S] + rk[T]


def test_rank_profile_steps():
    P = build_star_pattern(Permutation((3, 7, 1, 2, 5, 4, 6))).support
    for k in range(1, 9):
        for S in combinations(range(1, 9), k):
            prof = (0,) + rank_profile(P, S)
            assert all(prof[j] - prof[j - 1] in (0, 1) for j in range(1, 9))
            assert all(prof[j] <= min(k, j) for j in range(9))
