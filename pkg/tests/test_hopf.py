import random
from fractions import Fraction

from hypothesis import given, strategies as st

from ckhopf import Presentation
from ckhopf.hopf import antipode, coproduct, counit
from ckhopf.ncalg import Element, TensorElement
from ckhopf.scalar import Scalar

P = Presentation(3, (1, 1))
Q = Presentation(4, (0, 1, -1), "new", 2)


def test_coproduct_examples():
    p = P
    z, one = p.letter("Z"), p.one
    for i in (1, 2):
        j = p.gen(0, i)
        assert coproduct(j) == TensorElement.of(z, j) + TensorElement.of(j, one)
    assert coproduct(one) == TensorElement.of(one, one)
    a, b = p.gen(0, 1), p.gen(0, 2)
    four = (TensorElement.of(z * z, a * b) + TensorElement.of(z * b, a)
            + TensorElement.of(a * z, b) + TensorElement.of(a * b, one))
    assert coproduct(a * b) == four
    assert len(coproduct(a * b).terms) == 4


def test_counit_examples():
    p = P
    for i in (1, 2):
        assert counit(p.gen(i, 3)).is_zero()
    assert counit(p.one) == Scalar(1)
    z = p.letter("Z")
    assert counit(z * z * p.gen(0, 1)).is_zero()
    assert counit(z * z) == Scalar(1)


def test_antipode_examples():
    p = P
    zi = p.letter("Z^-1")
    for i in (1, 2):
        assert antipode(p.gen(0, i)) == -(zi * p.gen(0, i))
    assert antipode(p.one) == p.one
    a, b = p.gen(0, 1), p.gen(0, 2)
    assert antipode(a * b) == zi * b * zi * a
    assert antipode(a * b) == zi * zi * a * b


def test_group_like_powers():
    p = P
    z, zi = p.letter("Z"), p.letter("Z^-1")
    for n in range(-2, 3):
        g = z ** n if n >= 0 else zi ** (-n)
        assert coproduct(g) == TensorElement.of(g, g)


words = st.lists(st.integers(0, 11), max_size=3)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@given(words, words, coeffs, st.integers(-1, 2))
def test_linearity(a, b, c, e):
    A, B = Element.word(Q, tuple(a)), Element.word(Q, tuple(b))
    s = Scalar({e: c})
    assert coproduct(A * s + B) == coproduct(A) * s + coproduct(B)
    assert counit(A * s + B) == counit(A) * s + counit(B)
    assert antipode(A * s + B) == antipode(A) * s + antipode(B)


@given(words, words)
def test_multiplicativity(a, b):
    A, B = Element.word(Q, tuple(a)), Element.word(Q, tuple(b))
    assert coproduct(A * B) == coproduct(A) * coproduct(B)
    assert counit(A * B) == counit(A) * counit(B)
    assert antipode(A * B) == antipode(B) * antipode(A)
