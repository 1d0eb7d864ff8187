from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ckhopf.scalar import ModeError, Scalar, format_rational, parse_rational

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
laurent = st.dictionaries(st.integers(-3, 3), rationals, max_size=4)


def test_parse_and_format():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-1") == -1
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(2) == "2/1"
    with pytest.raises(ValueError):
        parse_rational("")


def test_laurent_addition_matches_rational_oracle():
    s = Scalar({1: 1}) + Scalar({-1: 1})
    assert s.coeffs == {1: Fraction(1), -1: Fraction(1)}
    assert (Scalar({2: Fraction(1, 3)}) + Scalar({2: Fraction(-1, 3)})).is_zero()


def test_truncated_mode_drops_high_powers_and_rejects_negative():
    a = Scalar({0: 1, 1: 1}, order=1)
    assert (a * a).coeffs == {0: 1, 1: 2}
    with pytest.raises(ModeError):
        Scalar({-1: 1}, order=2)
    with pytest.raises(ModeError):
        Scalar(1, order=2) + Scalar(1)


def test_serialize_round_trip():
    s = Scalar({-1: Fraction(1, 2), 2: Fraction(-7, 3)})
    assert Scalar.deserialize(s.serialize()) == s
    assert s.serialize() == [[-1, "1/2"], [2, "-7/3"]]


@given(laurent, laurent, laurent)
def test_multiplication_associative(p, q, r):
    P, Q, R = Scalar(p), Scalar(q), Scalar(r)
    assert (P * Q) * R == P * (Q * R)


@given(laurent, laurent)
def test_exponent_bookkeeping(p, q):
    prod = Scalar(p) * Scalar(q)
    expect = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            expect[e1 + e2] = expect.get(e1 + e2, 0) + c1 * c2
    assert prod.coeffs == {e: c for e, c in expect.items() if c}


@given(laurent, st.integers(0, 4))
def test_truncate_is_a_ring_map(p, K):
    P = Scalar(p)
    pos = Scalar({e: c for e, c in p.items() if e >= 0})
    assert (pos * pos).truncate(K) == pos.truncate(K) * pos.truncate(K)
