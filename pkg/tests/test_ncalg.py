import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ckhopf import Presentation, truncate
from ckhopf.hopf import coproduct
from ckhopf.ncalg import Element, ModeError, TensorElement
from ckhopf.scalar import Scalar

from oracles import one_minus_z2_over_2lam, exp_minus


@pytest.fixture(scope="module")
def p3():
    return Presentation(3, (1, 1))


def series_element(t, coeffs):
    T = t.exp_rank
    return Element(t, {((T,) * n, e): c for (e, n), c in coeffs.items()})


def test_additive_identity_and_inverse(p3):
    j = p3.gen(0, 1)
    assert j + p3.zero == j
    assert (j + (-1) * j).is_zero()


def test_laurent_coefficients(p3):
    j = p3.gen(0, 2)
    s = j * p3.lam(1) + j * p3.lam(-1)
    assert s.coefficient(j.by_word().popitem()[0]) == Scalar({1: 1, -1: 1})


def test_mul_examples(p3):
    a, b = p3.gen(0, 1), p3.gen(1, 2)
    assert list((a * b).terms) == [((p3._r((0, 1)), p3._r((1, 2))), 0)]
    # [J12, J01] = J02
    assert b * a == a * b + p3.gen(0, 2)
    z, zi = p3.letter("Z"), p3.letter("Z^-1")
    assert zi * z == p3.one
    assert z * zi == p3.one


def test_mode_mismatch(p3):
    q = Presentation(3, (1, 0))
    with pytest.raises(ModeError):
        p3.gen(0, 1) + q.gen(0, 1)
    with pytest.raises(ModeError):
        p3.gen(0, 1) * p3.truncated(2).gen(0, 1)


def test_tensor_mul_examples(p3):
    one = p3.one
    j12, j01, z = p3.gen(1, 2), p3.gen(0, 1), p3.letter("Z")
    assert TensorElement.of(one, j12) * TensorElement.of(j12, one) == TensorElement.of(j12, j12)
    assert TensorElement.of(z, j01) * TensorElement.of(j01, one) == TensorElement.of(z * j01, j01)
    assert z * j01 == j01 * z
    d1, d2 = coproduct(p3.gen(0, 1)), coproduct(p3.gen(0, 2))
    assert (d1 * d2 - d2 * d1).is_zero()


def test_truncate_exponential(p3):
    t = p3.truncated(2)
    T = t.letter(("g", 0, 3))
    expect = t.one - T * t.lam(1) + T * T * t.lam(2, Fraction(1, 2))
    assert truncate(p3.letter("Z"), 2) == expect
    assert truncate(p3.letter("Z"), 2) == series_element(t, exp_minus(2))


def test_truncate_laurent_quotient(p3):
    z = p3.letter("Z")
    e = (p3.one - z * z) * p3.lam(-1, Fraction(1, 2))
    t = p3.truncated(2)
    got = truncate(e, 2)
    assert got == series_element(t, one_minus_z2_over_2lam(2))
    T = t.letter(("g", 0, 3))
    assert got == T - T * T * t.lam(1) + T * T * T * t.lam(2, Fraction(2, 3))


def test_truncate_unit_and_rejects_truncated(p3):
    z, zi = p3.letter("Z"), p3.letter("Z^-1")
    assert truncate(z * zi, 4) == p3.truncated(4).one
    with pytest.raises(ModeError):
        truncate(truncate(z, 2), 2)


def test_serialization_round_trip(p3):
    e = p3.gen(1, 3) * p3.gen(0, 1) + p3.letter("Z^-1") * p3.lam(-1)
    data = e.serialize()
    assert Element.deserialize(p3, data) == e
    assert data == sorted(data, key=lambda d: [p3.alphabet.lookup(n) for n in d["word"]])
    d = coproduct(p3.gen(1, 3))
    assert TensorElement.deserialize(p3, d.serialize()) == d


letters8 = st.lists(st.integers(0, 7), min_size=0, max_size=4)


def _word(p, w):
    return Element.word(p, tuple(w))


@given(letters8, letters8, letters8)
def test_associativity(a, b, c):
    p = Presentation(3, (1, 1), certify=False)
    A, B, C = _word(p, a), _word(p, b), _word(p, c)
    assert (A * B) * C == A * (B * C)


@given(letters8, letters8, letters8)
def test_distributivity(a, b, c):
    p = Presentation(3, (1, -1), certify=False)
    A, B, C = _word(p, a), _word(p, b), _word(p, c)
    assert A * (B + C) == A * B + A * C
    assert (B + C) * A == B * A + C * A


@given(st.lists(st.integers(0, 7), max_size=3), st.lists(st.integers(0, 7), max_size=3))
def test_truncate_is_algebra_map(a, b):
    p = _P3
    A, B = _word(p, a), _word(p, b)
    assert truncate(A * B, 3) == truncate(A, 3) * truncate(B, 3)


_P3 = Presentation(3, (0, 1), "new", 2)
