from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hhmp.flagmatroid import permutohedron
from hhmp.gzface import gz_face
from hhmp.permcore import Permutation, all_perms, compose, identity, length, w0_of
from hhmp.polytope import normalized_volume
from hhmp.schubert import (SchubertClass, at_class_sum, at_term, degree_wrt, divided_difference, integral,
                           monk, multiply, product_by_transition, product_in_basis, schubert_polynomial,
                           simple_reflection)
from hhmp.weights import WeightVector

s1, s2 = simple_reflection(1, 3), simple_reflection(2, 3)


def test_schubert_polynomials():
    assert schubert_polynomial(identity(4)) == {(0, 0, 0, 0): 1}
    assert schubert_polynomial(Permutation((2, 1))) == {(1, 0): 1}
    assert schubert_polynomial(w0_of(4)) == {(3, 2, 1, 0): 1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_schubert_polynomial_recursion(n):
    for w in all_perms(n):
        f = schubert_polynomial(w)
        assert all(c > 0 for c in f.values())
        assert all(sum(a) == length(w) for a in f)
        for i in range(1, n):
            ws = compose(w, simple_reflection(i, n))
            if length(ws) < length(w):
                assert divided_difference(f, i) == schubert_polynomial(ws)


def test_s1_squared():
    # Monk's rule by hand: sigma_{s1} * sigma_{s1} = sigma_{w t_13} with w = s1
    expected = SchubertClass.basis(Permutation((3, 1, 2)))
    assert product_in_basis(s1, s1) == expected
    assert product_by_transition(s1, s1) == expected
    assert monk(1, s1) == expected


def test_unit_and_overflow():
    for u in all_perms(4):
        assert product_in_basis(u, identity(4)) == SchubertClass.basis(u)
    assert product_in_basis(w0_of(3), s1) == SchubertClass(3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_duality(n):
    top = n * (n - 1) // 2
    for u in all_perms(n):
        for v in all_perms(n):
            if length(u) + length(v) == top:
                expected = 1 if v == compose(w0_of(n), u) else 0
                assert integral(product_in_basis(u, v)) == expected


def test_integrals():
    assert integral(SchubertClass.basis(w0_of(4))) == 1
    assert integral(SchubertClass.basis(identity(3))) == 0
    c = multiply(multiply(SchubertClass.basis(s1), SchubertClass.basis(s2)), SchubertClass.basis(s1))
    assert integral(c) == 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_engines_agree_exhaustively(n):
    perms = list(all_perms(n))
    for u, v in product(perms, perms):
        assert product_in_basis(u, v) == product_by_transition(u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n - 1), max_size=6))))
def test_simple_reflection_chains_against_monk(data):
    n, chain = data
    via_monk = SchubertClass.basis(identity(n))
    via_basis = SchubertClass.basis(identity(n))
    for k in chain:
        nxt = SchubertClass(n)
        for w, c in via_monk.terms.items():
            nxt = nxt + monk(k, w).scale(c)
        via_monk = nxt
        via_basis = multiply(via_basis, SchubertClass.basis(simple_reflection(k, n)))
    assert via_monk == via_basis


def test_at_class_small():
    assert at_class_sum(2) == SchubertClass.basis(identity(2))
    assert at_class_sum(3) == SchubertClass.basis(s1) + SchubertClass.basis(s2)
    assert at_term(identity(2)) == (identity(3), s2)
    assert at_term(Permutation((2, 1))) == (s1, identity(3))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_at_class_non_negative_homogeneous(n):
    c = at_class_sum(n)
    assert all(v > 0 for v in c.terms.values())
    assert c.degrees() == {(n - 1) * (n - 2) // 2}
    assert c == at_class_sum(n, engine=product_by_transition)


def test_degree_examples():
    lam = WeightVector((2, 1, 0))
    assert degree_wrt(SchubertClass.basis(s1) + SchubertClass.basis(s2), lam) == 6
    assert degree_wrt(SchubertClass.basis(s1), lam) == 3
    assert degree_wrt(SchubertClass.basis(s2), lam) == 3
    assert degree_wrt(SchubertClass(3), lam) == 0


def test_degree_requires_integral_weights():
    with pytest.raises(ValueError):
        degree_wrt(SchubertClass.basis(s1), WeightVector((2, "1/2", 0)))


@pytest.mark.parametrize("lam", [(2, 1, 0), (4, 2, 1), (3, 2, 1, 0), (5, 3, 1, 0), (4, 3, 2, 1, 0), (6, 4, 3, 1, 0)])
def test_per_piece_degree_equals_volume(lam):
    lam = WeightVector(lam)
    n = lam.n
    for w in all_perms(n - 1):
        assert degree_wrt(product_in_basis(*at_term(w)), lam) == normalized_volume(gz_face(lam, w).hrep)
    assert degree_wrt(at_class_sum(n), lam) == normalized_volume(permutohedron(lam))


def test_class_json():
    c = SchubertClass.basis(s1) + SchubertClass.basis(s2).scale(2)
    assert c.to_json() == {"1,3,2": 2, "2,1,3": 1}
