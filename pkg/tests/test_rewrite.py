import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ckhopf import Presentation, check_confluence, normal_form
from ckhopf.ncalg import Element
from ckhopf.rewrite import active_kernel, kernel, measure, rule_violations, trace_normal_form


def test_normal_form_examples():
    p = Presentation(3, (1, 1))
    j01, j12, j13 = p.gen(0, 1), p.gen(1, 2), p.gen(1, 3)
    raw = {((p._r((1, 2)), p._r((0, 1))), 0): Fraction(1)}
    assert normal_form(raw, p) == j01 * j12 + p.gen(0, 2)
    sorted_word = {((p._r((0, 1)), p._r((1, 2))), 0): Fraction(1)}
    assert normal_form(sorted_word, p).terms == sorted_word
    nf = normal_form({((p._r((1, 3)), p._r((0, 1))), 0): Fraction(1)}, p)
    assert nf == j01 * j13 + j13.commutator(j01)


@given(st.lists(st.integers(0, 7), max_size=5))
def test_idempotent(w):
    p = _P
    e = Element.word(p, tuple(w))
    assert normal_form(e) == e
    assert Element(p, e.terms) == e


_P = Presentation(3, (1, -1))


def test_confluence_examples():
    assert check_confluence(Presentation(3, (1, 1))).ok
    assert check_confluence(Presentation(4, (0, 1, 1), "new", 2)).ok
    p = Presentation(3, (1, 1))
    g, h = p._r((1, 2)), p._r((0, 1))
    bad = p.mutated(comm={(g, h): {k: -v for k, v in p.comm[(g, h)].items()}})
    rep = check_confluence(bad)
    fails = rep.failures()
    assert fails and fails[0].counterexample["diff"]
    assert "->" in fails[0].note


@pytest.mark.parametrize("N,om", [(N, om) for N in (2, 3, 4) for om in itertools.product((-1, 0, 1), repeat=N - 1)])
def test_measure_decreases_on_every_rule(N, om):
    p = Presentation(N, om)
    assert rule_violations(p) == []
    t = p.truncated(4)
    assert rule_violations(t) == []


def test_measure_decreases_per_step():
    p = Presentation(4, (0, 1, -1), "new", 2)
    rng = random.Random(7)
    n = len(p.alphabet)
    for _ in range(30):
        w = tuple(rng.randrange(n) for _ in range(4))
        for word, lhs, results in trace_normal_form(p, w):
            m0 = measure(p, word)
            for v in results:
                assert measure(p, v) < m0


def test_association_order_independent():
    p = Presentation(4, (1, 0, 1), "new", 3)
    rng = random.Random(3)
    n = len(p.alphabet)
    for _ in range(40):
        a, b, c = (Element.word(p, tuple(rng.randrange(n) for _ in range(rng.randint(0, 2)))) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_cross_mode_confluence():
    for N, om in [(2, (1,)), (3, (1, -1)), (3, (0, 1)), (4, (1, 0, -1))]:
        p = Presentation(N, om)
        assert check_confluence(p).ok == check_confluence(p.truncated(4)).ok == True


def test_cache_does_not_change_results():
    p = Presentation(3, (1, 1))
    e = p.gen(2, 3) * p.gen(1, 3) * p.gen(0, 1)
    fresh = Presentation(3, (1, 1))
    fresh.rewriter.cache.clear()
    assert fresh.gen(2, 3) * fresh.gen(1, 3) * fresh.gen(0, 1) == Element(fresh, {k: v for k, v in e.terms.items()}, normalize=False)


def test_kernels_agree():
    pytest.importorskip("ckhopf._kernel")
    for name in ("python", "c"):
        assert kernel(name).__module__.startswith("ckhopf._kernel")
    outs = []
    for name in ("python", "c"):
        p = Presentation(4, (0, 1, 1), "new", 2).use_kernel(name)
        outs.append(check_confluence(p).to_json())
    assert outs[0] == outs[1]
    assert active_kernel() in ("c", "python")


def test_pure_python_env_switch(monkeypatch):
    monkeypatch.setenv("CKHOPF_PURE_PYTHON", "1")
    assert active_kernel() == "python"
    assert check_confluence(Presentation(3, (0, 1), "new", 2)).ok
