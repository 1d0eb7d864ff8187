"""Coproduct, counit and antipode extended from letters to elements.

Generator data lives on the algebra (``alg.delta``, ``alg.eps``,
``alg.gamma``, keyed by letter rank).  Extensions are memoized per word in
``alg.caches``: Delta and eps multiplicatively, gamma anti-multiplicatively.
"""
from __future__ import annotations

from fractions import Fraction

from .ncalg import Element, TensorElement, add_into
from .scalar import Scalar

__all__ = [
    "coproduct",
    "counit",
    "antipode",
    "coproduct_terms",
    "counit_coeffs",
    "antipode_terms",
    "map_slot",
    "multiply",
    "delta_slot",
    "eps_slot",
    "gamma_slot",
]


def _cache(alg, name):
    return alg.caches.setdefault(name, {})


def coproduct_terms(alg, word):
    cache = _cache(alg, "delta")
    hit = cache.get(word)
    if hit is not None:
        return hit
    if not word:
        out = {(((), ()), 0): Fraction(1)}
    elif len(word) == 1:
        out = alg.delta[word[0]]
    else:
        out = alg.mul_tensor_terms(coproduct_terms(alg, word[:-1]), alg.delta[word[-1]])
    cache[word] = out
    return out


def counit_coeffs(alg, word):
    """eps(word) as ``{exp: coeff}``."""
    cache = _cache(alg, "eps")
    hit = cache.get(word)
    if hit is not None:
        return hit
    out = Scalar(1, alg.order)
    for r in word:
        out = out * Scalar(alg.eps[r].coeffs, alg.order)
        if out.is_zero():
            break
    cache[word] = out.coeffs
    return out.coeffs


def antipode_terms(alg, word):
    cache = _cache(alg, "gamma")
    hit = cache.get(word)
    if hit is not None:
        return hit
    if not word:
        out = {((), 0): Fraction(1)}
    elif len(word) == 1:
        out = alg.gamma[word[0]]
    else:
        # gamma(w a) = gamma(a) gamma(w)
        out = alg.mul_terms(alg.gamma[word[-1]], antipode_terms(alg, word[:-1]))
    cache[word] = out
    return out


def _scale_into(acc, terms, e, c, K, tensor=False):
    for (w, e2), c2 in terms.items():
        e3 = e + e2
        if K is not None and e3 > K:
            continue
        add_into(acc, (w, e3), c * c2)


def coproduct(e: Element) -> TensorElement:
    alg = e.alg
    acc = {}
    for (w, x), c in e.terms.items():
        _scale_into(acc, coproduct_terms(alg, w), x, c, alg.order)
    return TensorElement(alg, acc, 2, normalize=False)


def counit(e: Element) -> Scalar:
    alg = e.alg
    acc = {}
    for (w, x), c in e.terms.items():
        for x2, c2 in counit_coeffs(alg, w).items():
            add_into(acc, x + x2, c * c2)
    return Scalar(acc, alg.order)


def antipode(e: Element) -> Element:
    alg = e.alg
    acc = {}
    for (w, x), c in e.terms.items():
        _scale_into(acc, antipode_terms(alg, w), x, c, alg.order)
    return Element(alg, acc, normalize=False)


# -- slot maps on tensors ---------------------------------------------------


def delta_slot(alg, word):
    return coproduct_terms(alg, word), 2


def eps_slot(alg, word):
    return {((), e): c for e, c in counit_coeffs(alg, word).items()}, 0


def gamma_slot(alg, word):
    return {((w,), e): c for (w, e), c in antipode_terms(alg, word).items()}, 1


def map_slot(t: TensorElement, slot: int, fn) -> TensorElement:
    """Apply a linear map to one tensor slot.

    ``fn(alg, word)`` returns ``(terms, m)`` where terms are keyed by
    ``(tuple of m words, exp)``; the result has arity ``arity - 1 + m``.
    """
    alg = t.alg
    K = alg.order
    acc = {}
    m = None
    for (ws, e), c in t.terms.items():
        img, m = fn(alg, ws[slot])
        pre, post = ws[:slot], ws[slot + 1:]
        for (us, e2), c2 in img.items():
            e3 = e + e2
            if K is not None and e3 > K:
                continue
            add_into(acc, (pre + tuple(us) + post, e3), c * c2)
    if m is None:
        _, m = fn(alg, ())
    return TensorElement(alg, acc, t.arity - 1 + m, normalize=False)


def multiply(t: TensorElement) -> Element:
    """m: A (x) A (x) ... -> A."""
    alg = t.alg
    acc = {}
    for (ws, e), c in t.terms.items():
        w = tuple(r for word in ws for r in word)
        acc[(w, e)] = acc.get((w, e), 0) + c
    return Element(alg, {k: v for k, v in acc.items() if v})


def as_element(t: TensorElement) -> Element:
    """Identify a 0- or 1-fold tensor with an element."""
    if t.arity == 1:
        return Element(t.alg, {(ws[0], e): c for (ws, e), c in t.terms.items()}, normalize=False)
    if t.arity == 0:
        return Element(t.alg, {((), e): c for (_, e), c in t.terms.items()}, normalize=False)
    raise ValueError("tensor has arity > 1")
