"""PBW normal form by two-letter rewriting, and the diamond-lemma check.

Every rule has a two-letter left side ``g h``.  For ``g > h`` in letter order
the rule is ``g h -> h g + [g, h]``; the unit rules are ``Z Z^-1 -> 1`` and
``Z^-1 Z -> 1``.  Termination is certified by the measure
``(total weight, inversion count, word)`` which every rule strictly lowers.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .ncalg import Element, add_into
from .report import CheckResult, Report, compare

from . import _kernel_py

try:  # compiled kernel is optional
    from . import _kernel as _kernel_c
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None

__all__ = [
    "RewriteRule",
    "kernel",
    "active_kernel",
    "normal_form",
    "check_confluence",
    "measure",
    "rule_violations",
    "trace_normal_form",
]


def kernel(name=None):
    """Rewriter class: ``"c"``, ``"python"`` or ``None`` for the default."""
    if name is None:
        if os.environ.get("CKHOPF_PURE_PYTHON") or _kernel_c is None:
            return _kernel_py.Rewriter
        return _kernel_c.Rewriter
    if name == "python":
        return _kernel_py.Rewriter
    if name == "c":
        if _kernel_c is None:
            raise ImportError("compiled kernel ckhopf._kernel is not built")
        return _kernel_c.Rewriter
    raise ValueError(f"unknown kernel {name!r}")


def active_kernel():
    return "python" if kernel() is _kernel_py.Rewriter else "c"


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: tuple  # ((word, exp, coeff), ...)

    def as_terms(self):
        out = {}
        for w, e, c in self.rhs:
            add_into(out, (w, e), c)
        return out


def build_rules(alg):
    """Rules from the commutator table plus the Z unit rules."""
    n = len(alg.alphabet)
    rules = {}
    for a in range(n):
        for b in range(a):
            key = (a, b)
            if alg.z_rank is not None and key == (alg.zinv_rank, alg.z_rank):
                continue
            rhs = [((b, a), 0, 1)]
            for (w, e), c in sorted(alg.comm.get(key, {}).items()):
                rhs.append((w, e, c))
            rules[key] = tuple(rhs)
    if alg.z_rank is not None:
        z, zi = alg.z_rank, alg.zinv_rank
        rules[(z, zi)] = (((), 0, 1),)
        rules[(zi, z)] = (((), 0, 1),)
    return rules


def normal_form(e, p=None):
    """Normal form of an element (or raw term dict) over presentation ``p``."""
    if isinstance(e, Element):
        return Element(e.alg, e.terms)
    return Element(p, e)


def measure(alg, word):
    w = alg.alphabet.weights
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return (sum(w[r] for r in word), inv, word)


def rule_violations(alg):
    """Rules whose right side does not sit strictly below the left side.

    EXACT mode uses the plain measure.  In TRUNCATED(K) mode a right-side term
    may carry a positive lambda power instead (lambda degree is bounded by K,
    so the lexicographic measure ``(K - exp, weight, inversions)`` decreases).
    """
    bad = []
    for lhs, rhs in alg.rules.items():
        m0 = measure(alg, lhs)
        for w, e, c in rhs:
            if measure(alg, w) < m0:
                continue
            if alg.order is not None and e > 0:
                continue
            bad.append((lhs, w, e))
    return bad


def trace_normal_form(alg, word):
    """Uncached leftmost rewriting; yields ``(word, rule_lhs, rhs_words)``."""
    todo = {(tuple(word), 0): 1}
    rules = alg.rules
    K = alg.order
    while todo:
        (w, e), c = todo.popitem()
        for i in range(len(w) - 1):
            rhs = rules.get((w[i], w[i + 1]))
            if rhs is not None:
                break
        else:
            continue
        new = [w[:i] + v + w[i + 2:] for v, _, _ in rhs]
        yield w, (w[i], w[i + 1]), new
        for (v, e2, c2), nw in zip(rhs, new):
            if K is not None and e + e2 > K:
                continue
            add_into(todo, (nw, e + e2), c * c2)


def _critical_triples(alg):
    rules = alg.rules
    n = len(alg.alphabet)
    for a in range(n):
        for b in range(n):
            if (a, b) not in rules:
                continue
            for c in range(n):
                if (b, c) in rules:
                    yield a, b, c


def check_confluence(p, stop_after=None) -> Report:
    """Resolve every overlap ``a b c`` of two rules both ways."""
    rules = p.rules
    checks = []
    nf = p.nf_terms
    for a, b, c in _critical_triples(p):
        left = {}
        for w, e, k in rules[(a, b)]:
            add_into(left, (w + (c,), e), k)
        right = {}
        for w, e, k in rules[(b, c)]:
            add_into(right, ((a,) + w, e), k)
        lhs = Element(p, nf(left), normalize=False)
        rhs = Element(p, nf(right), normalize=False)
        cid = f"confluence[{p.alphabet.word_str((a, b, c))}]"
        res = compare(cid, lhs, rhs)
        if res.status == "FAIL":
            res.note = (
                f"({p.alphabet.word_str((a, b))})*{p.alphabet[c].name} -> "
                f"{Element(p, left, normalize=False)!r}; "
                f"{p.alphabet[a].name}*({p.alphabet.word_str((b, c))}) -> "
                f"{Element(p, right, normalize=False)!r}"
            )
        checks.append(res)
        if stop_after is not None and res.status == "FAIL":
            stop_after -= 1
            if stop_after <= 0:
                break
    return Report(p.describe(), checks)
