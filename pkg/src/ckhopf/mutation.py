"""Scripted single-entry mutations of the N=3 tables (negative-control harness)."""
from __future__ import annotations

from fractions import Fraction

from .bicross import check_hopf_axioms
from .presentation import Presentation, Z_KEY, ZINV_KEY, gen_key
from .report import Report
from .rewrite import check_confluence

__all__ = ["MUTATIONS", "apply_mutation", "run_mutation", "run_all"]


def _neg(terms):
    return {k: -v for k, v in terms.items()}


def _scale_exp(exp, factor):
    """Scale only the terms carrying lambda^exp."""
    def f(terms):
        return {k: (v * factor if k[1] == exp else v) for k, v in terms.items()}
    return f


def _scale_word(word_len, factor, exp=None):
    def f(terms):
        return {k: (v * factor if len(k[0]) == word_len and (exp is None or k[1] == exp) else v)
                for k, v in terms.items()}
    return f


# (id, table, keys, transform)
#   table "comm": keys = (g, h) generator pairs or Z; transform on the [g,h] entry
#   table "delta"/"gamma": keys = letter
MUTATIONS = [
    ("m01", "comm", ((1, 2), (0, 1)), _neg),
    ("m02", "comm", ((1, 3), (0, 1)), _neg),
    ("m03", "comm", ((2, 3), (0, 1)), _scale_exp(1, 2)),
    ("m04", "comm", ((1, 3), (0, 3)), _neg),
    ("m05", "comm", ((2, 3), (0, 3)), _neg),
    ("m06", "comm", ((1, 2), (1, 3)), _neg),
    ("m07", "comm", ((1, 2), (2, 3)), _neg),
    ("m08", "comm", ((1, 3), (2, 3)), _neg),
    ("m09", "comm", ((1, 2), (0, 2)), _neg),
    ("m10", "comm", ((1, 3), (0, 2)), _neg),
    ("m11", "comm", ((2, 3), (0, 2)), _neg),
    ("m12", "comm", ((2, 3), (0, 2)), _scale_exp(-1, -1)),
    ("m13", "comm", ((1, 3), "Z"), _neg),
    ("m14", "gamma", (0, 1), lambda t, p: {((p._r((0, 1)),), 0): Fraction(-1)}),
    ("m15", "delta", (2, 3), _scale_exp(1, -1)),
    ("m16", "delta", (1, 3), _scale_exp(1, -1)),
    ("m17", "delta", (0, 1), lambda t, p: p._tensor([(1, 0, [], [(0, 1)]), (1, 0, [(0, 1)], [])])),
    ("m18", "gamma", (1, 3), _scale_exp(1, -1)),
    ("m19", "comm", ((1, 3), (0, 1)), _scale_word(2, 2, exp=1)),
    ("m20", "delta", "Z", _neg),
]


def apply_mutation(p, mutation):
    mid, table, keys, fn = mutation
    call = (lambda t: fn(t, p)) if fn.__code__.co_argcount == 2 else fn
    if table == "comm":
        g, h = (p._r(k) for k in keys)
        before = p.comm.get((g, h), {})
        after = call(before)
        if after == before:
            raise ValueError(f"mutation {mid} leaves the table unchanged")
        return p.mutated(comm={(g, h): after})
    r = p._r(keys)
    before = getattr(p, table)[r]
    after = call(before)
    if after == before:
        raise ValueError(f"mutation {mid} leaves the table unchanged")
    return p.mutated(**{table: {r: after}})


def run_mutation(mutation, N=3, omega=(1, 1)) -> Report:
    p = Presentation(N, omega)
    q = apply_mutation(p, mutation)
    rep = check_confluence(q)
    rep.extend(check_hopf_axioms(q))
    rep.presentation = dict(rep.presentation, mutation=mutation[0])
    return rep


def run_all(N=3, omega=(1, 1)):
    return {m[0]: run_mutation(m, N, omega) for m in MUTATIONS}
