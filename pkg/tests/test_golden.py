"""The printed N=3 tables, old basis, for every omega in {-1,0,1}^2."""
import itertools
from fractions import Fraction

import pytest

from ckhopf import Presentation, check_confluence, coproduct
from ckhopf.ncalg import TensorElement

OMEGAS = list(itertools.product((-1, 0, 1), repeat=2))


def printed_brackets(p, w2, w3, typo=False):
    J = p.gen
    z = p.letter("Z")
    lam = p.lam(1)
    half_lam = p.lam(1, Fraction(1, 2))
    d = (p.one - z * z) * p.lam(-1, Fraction(1, 2))
    q = J(0, 1) * J(0, 1) * w2 - J(0, 2) * J(0, 2)
    out = {
        ((1, 2), (1, 3)): J(2, 3) * w2,
        ((1, 3), (2, 3)): J(1, 2) * w3,
        ((1, 2), (2, 3)): -J(1, 3),
        ((1, 2), (0, 3)): p.zero,
        ((1, 2), (0, 1)): J(0, 2),
        ((1, 2), (0, 2)): -J(0, 1) * w2,
        ((1, 3), (0, 3)): -J(0, 1) * (w2 * w3),
        # printed with w2; the table only closes with w3
        ((2, 3), (0, 3)): -J(0, 2) * (w2 if typo else w3),
        ((1, 3), (0, 1)): d + q * half_lam * w3,
        ((2, 3), (0, 2)): d - q * half_lam * w3,
        ((1, 3), (0, 2)): J(0, 1) * J(0, 2) * lam * (w2 * w3),
        ((2, 3), (0, 1)): J(0, 1) * J(0, 2) * lam * w3,
    }
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                out[((0, i), (0, j))] = p.zero
    return out


def printed_coproducts(p, w2, w3):
    J = p.gen
    z, one = p.letter("Z"), p.one
    T = TensorElement.of
    lam = p.lam(1, w3)
    return {
        (0, 1): T(z, J(0, 1)) + T(J(0, 1), one),
        (0, 2): T(z, J(0, 2)) + T(J(0, 2), one),
        (0, 3): T(one, J(0, 3)) + T(J(0, 3), one),
        (1, 2): T(one, J(1, 2)) + T(J(1, 2), one),
        (1, 3): T(z, J(1, 3)) + T(J(1, 3), one) - T(J(0, 2), J(1, 2)) * lam,
        (2, 3): T(z, J(2, 3)) + T(J(2, 3), one) + T(J(0, 1), J(1, 2)) * lam,
    }


@pytest.mark.parametrize("w2,w3", OMEGAS)
def test_printed_brackets(w2, w3):
    p = Presentation(3, (w2, w3))
    for (g, h), want in printed_brackets(p, w2, w3).items():
        assert p.gen(*g).commutator(p.gen(*h)) == want, (g, h)


@pytest.mark.parametrize("w2,w3", OMEGAS)
def test_printed_coproducts(w2, w3):
    p = Presentation(3, (w2, w3))
    for g, want in printed_coproducts(p, w2, w3).items():
        assert coproduct(p.gen(*g)) == want, g


@pytest.mark.parametrize("w2,w3", [om for om in OMEGAS if om[0] not in (0, om[1])])
def test_printed_typo_breaks_confluence(w2, w3):
    p = Presentation(3, (w2, w3))
    g, h = p._r((2, 3)), p._r((0, 3))
    typo = printed_brackets(p, w2, w3, typo=True)[((2, 3), (0, 3))]
    q = p.mutated(comm={(g, h): typo.terms})
    assert not check_confluence(q).ok


def test_boxed_terms_vanish_when_w3_is_zero():
    p = Presentation(3, (1, 0))
    assert p.gen(2, 3).commutator(p.gen(0, 1)).is_zero()
    assert coproduct(p.gen(2, 3)) == TensorElement.of(p.letter("Z"), p.gen(2, 3)) + \
        TensorElement.of(p.gen(2, 3), p.one)


@pytest.mark.parametrize("w3", [-1, 1])
def test_printed_typo_at_w2_zero_is_consistent_but_not_ck(w3):
    # with w2 = 0 the misprint is a self-consistent table, so only the
    # general rule [J_ik, J_jk] = w_jk J_ij tells the readings apart
    from ckhopf.bicross import check_hopf_axioms
    from ckhopf.presentation import undeformed_bracket

    p = Presentation(3, (0, w3))
    g, h = p._r((2, 3)), p._r((0, 3))
    typo = printed_brackets(p, 0, w3, typo=True)[((2, 3), (0, 3))]
    q = p.mutated(comm={(g, h): typo.terms})
    assert check_confluence(q).ok and check_hopf_axioms(q).ok
    rule = sum((p.gen(b, c) * k for (b, c), k in undeformed_bracket((2, 3), (0, 3), p.w)), p.zero)
    assert rule == p.gen(2, 3).commutator(p.gen(0, 3)) != typo
