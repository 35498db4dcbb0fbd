from math import comb

import pytest
from hypothesis import given, strategies as st

from hhmp.permcore import (InvalidCodeError, Permutation, all_perms, compose, embed, identity, inverse,
                           lehmer_code, length, parse_perm, perm_from_code, perm_from_r_vector, r_vector, w0_of)

from conftest import RUNNING


def perms(max_n=7):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(
        lambda p: Permutation(tuple(p)))


def test_running_r_vector():
    assert r_vector(RUNNING) == (3, 3, 1, 3, 2, 2, 1)


def test_running_r_vector_inverts():
    assert perm_from_r_vector((3, 3, 1, 3, 2, 2, 1)) == RUNNING


@pytest.mark.parametrize("n", range(1, 8))
def test_identity_and_longest_r_vectors(n):
    assert r_vector(identity(n)) == (1,) * n
    assert r_vector(w0_of(n)) == tuple(range(n, 0, -1))
    assert perm_from_r_vector((1,) * n) == identity(n)


def test_running_length():
    assert length(RUNNING) == 8


@pytest.mark.parametrize("n", range(1, 8))
def test_length_extremes(n):
    assert length(identity(n)) == 0
    assert length(w0_of(n)) == comb(n, 2)


def test_running_embeddings():
    assert embed(RUNNING, "iota").images == (3, 7, 1, 2, 5, 4, 6, 8)
    assert embed(RUNNING, "iota_bar").images == (1, 4, 8, 2, 3, 6, 5, 7)
    assert embed(compose(w0_of(7), RUNNING), "iota_bar").images == (1, 6, 2, 8, 7, 4, 5, 3)


def test_running_inverse():
    assert inverse(RUNNING).images == (3, 4, 1, 6, 5, 7, 2)
    assert compose(RUNNING, inverse(RUNNING)) == identity(7)
    assert w0_of(8).images == (8, 7, 6, 5, 4, 3, 2, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_r_vector_round_trip_exhaustive(n):
    seen = set()
    for w in all_perms(n):
        r = r_vector(w)
        assert all(1 <= rj <= n + 1 - j for j, rj in enumerate(r, start=1))
        assert perm_from_r_vector(r) == w
        seen.add(r)
    assert len(seen) == len(list(all_perms(n)))


def test_r_vector_round_trip_s4():
    for w in all_perms(4):
        assert perm_from_r_vector(r_vector(w)) == w


@given(perms())
def test_r_vector_is_inverse_lehmer_code_plus_one(w):
    winv = inverse(w)
    n = w.n
    brute = tuple(1 + sum(1 for k in range(j + 1, n + 1) if winv(k) < winv(j)) for j in range(1, n + 1))
    assert r_vector(w) == brute
    assert r_vector(w) == tuple(c + 1 for c in lehmer_code(winv))


@given(perms())
def test_length_invariants(w):
    n = w.n
    inversions = sum(1 for i in range(1, n + 1) for j in range(i + 1, n + 1) if w(i) > w(j))
    assert length(w) == inversions
    assert length(inverse(w)) == length(w)
    assert length(compose(w0_of(n), w)) == comb(n, 2) - length(w)
    assert length(embed(w, "iota")) == length(w)
    assert length(embed(w, "iota_bar")) == length(w)


@given(perms())
def test_inverse_involution_and_code_round_trip(w):
    assert inverse(inverse(w)) == w
    assert perm_from_code(lehmer_code(w)) == w


def test_out_of_bounds_r_vector():
    with pytest.raises(InvalidCodeError):
        perm_from_r_vector((1, 3, 1))
    with pytest.raises(InvalidCodeError):
        perm_from_r_vector((0, 1))


def test_invalid_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        parse_perm("1,3")


def test_parse_and_format():
    assert parse_perm("3,7,1,2,5,4,6") == RUNNING
    assert str(RUNNING) == "[3,7,1,2,5,4,6]"
