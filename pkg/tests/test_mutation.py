import pytest

from ckhopf import Presentation
from ckhopf.mutation import MUTATIONS, apply_mutation, run_mutation


def test_twenty_distinct_mutations():
    assert len(MUTATIONS) == 20
    assert len({m[0] for m in MUTATIONS}) == 20


@pytest.mark.parametrize("m", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutation_is_caught(m):
    rep = run_mutation(m)
    assert not rep.ok
    bad = rep.failures()[0]
    assert bad.counterexample is None or bad.counterexample.get("diff")


@pytest.mark.parametrize("m", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutation_changes_one_entry(m):
    p = Presentation(3, (1, 1))
    q = apply_mutation(p, m)
    tables = ("comm", "delta", "gamma")
    changed = [(t, k) for t in tables for k in getattr(p, t) if getattr(q, t).get(k) != getattr(p, t)[k]]
    changed += [(t, k) for t in tables for k in getattr(q, t) if k not in getattr(p, t)]
    keys = {k for _, k in changed}
    # a commutator edit touches [g,h] and its antisymmetric partner
    assert 1 <= len(keys) <= 2
