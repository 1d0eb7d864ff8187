import itertools
from fractions import Fraction

import pytest

from ckhopf import Presentation, PresentationError, build_presentation, change_basis, hat_j, omega_prod, sector_of, truncate
from ckhopf.hopf import coproduct
from ckhopf.ncalg import Element, TensorElement
from ckhopf.presentation import (
    EXPONENTIAL,
    J_LEFT,
    J_RIGHT,
    X_SECTOR,
    undeformed_bracket,
    verify_change_basis,
)
from ckhopf.scalar import Scalar

OMEGAS = [(N, om) for N in (2, 3, 4) for om in itertools.product((-1, 0, 1), repeat=N - 1)]


def test_omega_prod():
    assert omega_prod(Presentation(3, (1, -1)), 1, 3) == Scalar(-1)
    assert omega_prod(Presentation(4, (0, 1, 1), "new", 2), 2, 4) == Scalar(1)
    for b in (1, 2, 3):
        assert omega_prod(Presentation(3, (1, 1)), 0, b).is_zero()
    with pytest.raises(IndexError):
        omega_prod(Presentation(3, (1, 1)), 2, 1)


def test_sector_of():
    p = Presentation(3, (0, 1), "new", 2)
    xs = {k for k in [(0, 2), (0, 3), (1, 2), (1, 3)]}
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        s = sector_of(p, ("g", i, j))
        assert (s == X_SECTOR) == ((i, j) in xs)
    assert sector_of(p, ("g", 0, 1)) == J_LEFT
    assert sector_of(p, ("g", 2, 3)) == J_RIGHT
    assert sector_of(p, ("Z",)) == EXPONENTIAL
    q = Presentation(3, (1, 1))
    for j in (1, 2, 3):
        assert sector_of(q, ("g", 0, j), 1) == X_SECTOR
    for (i, j) in [(1, 2), (1, 3), (2, 3)]:
        assert sector_of(q, ("g", i, j), 1) == J_RIGHT
    for a in range(1, 5):
        assert sector_of(q, ("g", a - 1, a), a) == X_SECTOR


def test_validation_errors():
    with pytest.raises(PresentationError):
        Presentation(1, ())
    with pytest.raises(PresentationError):
        Presentation(3, (1, 1), "old", 2)
    with pytest.raises(PresentationError):
        Presentation(3, (0, 1), "new")
    with pytest.raises(PresentationError):
        Presentation(3, (0,))


def _el(p, rows):
    """rows: list of (coeff, lam exponent, [letter names])."""
    out = p.zero
    for c, e, names in rows:
        out = out + p.word(*names, coeff=c, exp=e)
    return out


@pytest.mark.parametrize("w2,w3", [(1, 1), (1, -1), (0, 1), (-1, 0)])
def test_n3_old_deformed_entries(w2, w3):
    p = Presentation(3, (w2, w3))
    J = lambda i, j: f"X({i},{j})" if i == 0 else f"J({i},{j})"
    D = [(Fraction(1, 2), -1, []), (Fraction(-1, 2), -1, ["Z", "Z"])]
    lhs = p.gen(1, 3).commutator(p.gen(0, 1))
    rhs = _el(p, D + [(Fraction(w2 * w3, 2), 1, [J(0, 1), J(0, 1)]), (Fraction(-w3, 2), 1, [J(0, 2), J(0, 2)])])
    assert lhs == rhs
    assert p.gen(2, 3).commutator(p.gen(0, 1)) == _el(p, [(w3, 1, [J(0, 1), J(0, 2)])])
    for i in (1, 2):
        for j in (1, 2, 3):
            assert p.gen(0, i).commutator(p.gen(0, j)).is_zero()


def test_derived_z_rule_matches_series():
    for N, om in [(3, (1, 1)), (3, (-1, 1)), (4, (1, 0, -1))]:
        p = Presentation(N, om)
        z = p.letter("Z")
        for i in range(1, N):
            got = p.gen(i, N).commutator(z)
            want = p.gen(0, i) * z * (p.lam() * p.w(i, N))
            assert got == want
            assert truncate(p.gen(i, N) * z, 4) == truncate(p.gen(i, N), 4) * truncate(z, 4)
        assert p.certify_z_rules().ok


@pytest.mark.parametrize("N,om", OMEGAS)
def test_table_invariants(N, om):
    p = Presentation(N, om)
    n = len(p.alphabet)
    W = p.alphabet.weights
    for (g, h), terms in p.comm.items():
        back = p.comm.get((h, g), {})
        assert {k: -v for k, v in terms.items()} == back
        for (w, e) in terms:
            assert sum(W[r] for r in w) < W[g] + W[h]
    for r in range(n):
        assert (r, r) not in p.comm
    # every right side only uses declared letters
    assert all(0 <= r < n for terms in p.comm.values() for (w, _) in terms for r in w)


@pytest.mark.parametrize("N,om", OMEGAS)
def test_letter_order(N, om):
    p = Presentation(N, om)
    sec = [l.sector for l in p.alphabet.letters]
    nx = sec.count(X_SECTOR)
    assert sec[:nx] == [X_SECTOR] * nx
    assert [l.name for l in p.alphabet.letters[nx:nx + 2]] == ["Z", "Z^-1"]
    keys = [l.key for l in p.alphabet.letters]
    assert keys[:nx] == sorted(keys[:nx])
    assert keys[nx + 2:] == sorted(keys[nx + 2:])


def test_classical_limit_table():
    for N, om in OMEGAS:
        t = Presentation(N, om).truncated(0)
        for (g, h), terms in t.comm.items():
            kg, kh = t.alphabet[g].key, t.alphabet[h].key
            expect = {}
            for (b, c), k in undeformed_bracket(kg[1:], kh[1:], t.exact_source.w):
                expect[((t.alphabet.rank(("g", b, c)),), 0)] = Fraction(k)
            assert terms == expect


def test_hat_j_examples():
    p = Presentation(3, (0, 1), "old", 2)
    expect = p.gen(0, 1) * p.gen(1, 2) * p.lam()
    assert hat_j(p, 2) == expect
    q = Presentation(4, (0, 0, 0), "old", 4)
    with pytest.raises(IndexError):
        hat_j(q, 4)
    r = Presentation(4, (1, 1, 0), "old", 4)
    assert all(hat_j(r, i).is_zero() for i in range(4, 4))
    s = Presentation(3, (1, 1), "old", 1)
    assert all(hat_j(s, i).is_zero() for i in (1, 2))
    u = Presentation(4, (0, 1, 0), "old", 2)
    assert hat_j(u, 2).is_zero() and hat_j(u, 3).is_zero()


@pytest.mark.parametrize("w3", [1, -1])
def test_change_basis_n3(w3):
    old = Presentation(3, (0, w3), "old", 2)
    new = change_basis(old)
    assert new.change_report.ok
    assert new.gen(2, 3).commutator(new.gen(0, 1)).is_zero()
    z = new.letter("Z")
    expect = (TensorElement.of(z, new.gen(2, 3)) + TensorElement.of(new.gen(2, 3), new.one)
              - TensorElement.of(new.gen(1, 2) * z, new.gen(0, 1)) * (new.lam() * w3))
    assert coproduct(new.gen(2, 3)) == expect


def test_change_basis_trivial_at_split_n():
    old = Presentation(4, (1, -1, 0), "old", 4)
    new = change_basis(old)
    assert new.comm == old.comm
    assert new.delta == old.delta and new.gamma == old.gamma


def test_new_basis_table_matches_substitution_everywhere():
    for N, om in OMEGAS:
        for a in range(2, N + 1):
            if om[a - 2] == 0:
                rep = verify_change_basis(Presentation(N, om, "old", a))
                assert rep.ok, rep.summary()


def test_printed_entry_without_lambda_term_is_inconsistent():
    # the new-basis line [J_jN, X_ij] = X_iN printed without its lambda term
    p = Presentation(4, (0, 1, 1), "new", 2)
    g, h = p._r((2, 4)), p._r((1, 2))
    bad = p.mutated(comm={(g, h): {((p._r((1, 4)),), 0): Fraction(1)}})
    rep = verify_change_basis(Presentation(4, (0, 1, 1), "old", 2), bad)
    assert not rep.ok


def test_build_presentation_modes():
    p = build_presentation(3, (1, 1), "old", None, "trunc", 3)
    assert p.order == 3 and not p.alphabet.has(("Z",))
    with pytest.raises(PresentationError):
        build_presentation(3, (1, 1), mode="fuzzy")
