from fractions import Fraction

import pytest

from hhmp.weights import WeightVector, default_weights, parse_weights


def test_default_weights():
    assert default_weights(4).values == (3, 2, 1, 0)
    assert default_weights(4).strict and default_weights(4).integral


def test_parse_rationals():
    lam = parse_weights("5/2,1,0")
    assert lam.values == (Fraction(5, 2), 1, 0)
    assert not lam.integral
    assert lam[4] == 0 and lam[1] == Fraction(5, 2)
    assert lam.differences() == (Fraction(3, 2), 1, 0)


@pytest.mark.parametrize("bad", ["1,2", "1,-1", ""])
def test_rejects_bad_weights(bad):
    with pytest.raises(ValueError):
        parse_weights(bad)


def test_non_strict():
    assert not WeightVector((2, 2, 0)).strict
