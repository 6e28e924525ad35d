from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from beckdiff.errors import InputError, NotInvertible, NotPrime, ZeroDenominator
from beckdiff.exactnum import GF, QQ, ZZ, Scalar, fp_inv, is_prime, kind_from_json, rat_normalize


@pytest.mark.parametrize("num, den, expected", [(2, 4, "1/2"), (3, -6, "-1/2"), (0, 7, "0")])
def test_rat_normalize(num, den, expected):
    r = rat_normalize(num, den)
    assert str(r) == expected
    assert r.denominator > 0


def test_zero_over_seven_is_zero_over_one():
    r = rat_normalize(0, 7)
    assert (r.numerator, r.denominator) == (0, 1)


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rat_normalize(1, 0)


@pytest.mark.parametrize("p, a, expected", [(5, 2, 3), (7, 1, 1), (7, 4, 2)])
def test_fp_inv(p, a, expected):
    F = GF(p)
    assert str(fp_inv(Scalar(F, a))) == str(expected)


def test_fp_inv_brute_force():
    # every nonzero residue has exactly one inverse
    for p in (2, 3, 5, 7, 11, 13):
        F = GF(p)
        for a in range(1, p):
            inv = [b for b in range(1, p) if (a * b) % p == 1]
            assert inv == [F.inv(a)]


def test_zero_not_invertible():
    with pytest.raises(NotInvertible):
        GF(5).inv(0)
    with pytest.raises(NotInvertible):
        QQ.inv(Fraction(0))
    with pytest.raises(NotInvertible):
        ZZ.inv(2)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15, -3])
def test_not_prime(p):
    with pytest.raises(NotPrime):
        GF(p)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_mixed_kinds_rejected():
    with pytest.raises(InputError):
        Scalar(GF(3), 1) + Scalar(GF(5), 1)


def test_kind_from_json():
    assert kind_from_json({"kind": "Q"}) == QQ
    assert kind_from_json({"kind": "Fp", "p": 3}) == GF(3)
    with pytest.raises(InputError):
        kind_from_json({"kind": "R"})
    with pytest.raises(InputError):
        kind_from_json({"kind": "Fp"})


@given(st.integers(-1000, 1000), st.integers(-1000, 1000).filter(bool))
def test_rationals_reduced(a, b):
    r = rat_normalize(a, b)
    assert r.denominator > 0
    assert Fraction(r.numerator, r.denominator) == Fraction(a, b)
    from math import gcd

    assert gcd(r.numerator, r.denominator) == 1


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(), st.integers(), st.integers())
def test_prime_field_ring_laws(p, a, b, c):
    F = GF(p)
    a, b, c = F.from_int(a), F.from_int(b), F.from_int(c)
    assert 0 <= a < p
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
