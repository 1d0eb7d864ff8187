"""Noncommutative polynomials and tensors over an ordered alphabet.

Elements are stored flat: a dict ``(word, lambda_exponent) -> Fraction`` where
``word`` is a tuple of letter ranks.  Tensors use ``(words, exponent)`` keys,
``words`` being one word per tensor slot.  Every public value is kept in
normal form by the owning algebra (see :mod:`ckhopf.rewrite`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational

from .scalar import ModeError, Scalar, format_rational, parse_rational

__all__ = [
    "Letter",
    "Alphabet",
    "Element",
    "TensorElement",
    "ModeError",
    "truncate",
    "add_into",
]


@dataclass(frozen=True)
class Letter:
    key: tuple
    name: str
    sector: str
    weight: int

    def __repr__(self):
        return self.name


class Alphabet:
    """Letters in their total order; a letter is addressed by its rank."""

    def __init__(self, letters, aliases=None):
        self.letters = tuple(letters)
        self._by_key = {l.key: i for i, l in enumerate(self.letters)}
        self._by_name = {l.name: i for i, l in enumerate(self.letters)}
        for name, key in (aliases or {}).items():
            if key in self._by_key:
                self._by_name.setdefault(name, self._by_key[key])
        self.weights = tuple(l.weight for l in self.letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, rank):
        return self.letters[rank]

    def rank(self, key):
        return self._by_key[key]

    def has(self, key):
        return key in self._by_key

    def lookup(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown letter {name!r}") from None

    def names(self, word):
        return [self.letters[r].name for r in word]

    def weight(self, word):
        w = self.weights
        return sum(w[r] for r in word)

    def word_str(self, word):
        if not word:
            return "1"
        return "*".join(self.names(word))


def add_into(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _scalar_items(s, order):
    """(exponent, coeff) pairs for an int/Fraction/Scalar multiplier."""
    if isinstance(s, Scalar):
        if s.order != order:
            raise ModeError("scalar mode mismatch")
        return list(s.coeffs.items())
    if isinstance(s, (int, Rational)):
        return [(0, Fraction(s))] if s else []
    raise TypeError(f"cannot scale by {type(s).__name__}")


def _coeff_repr(exp, c):
    c = Fraction(c)
    if exp == 0:
        return str(c)
    lam = "lam" if exp == 1 else f"lam^{exp}"
    if c == 1:
        return lam
    if c == -1:
        return "-" + lam
    return f"{c}*{lam}"


class _Terms:
    __slots__ = ("alg", "terms")

    def _check(self, other):
        if not isinstance(other, type(self)):
            raise ModeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.alg is not self.alg:
            raise ModeError("operands belong to different presentations or modes")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Rational)) and other == 0:
            return not self.terms
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, sign):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_into(out, k, sign * c)
        return out

    def _scaled(self, s):
        items = _scalar_items(s, self.alg.order)
        K = self.alg.order
        out = {}
        for (w, e), c in self.terms.items():
            for e2, c2 in items:
                e3 = e + e2
                if K is not None and e3 > K:
                    continue
                add_into(out, (w, e3), c * c2)
        return out

    def lambda_degrees(self):
        return {e for (_, e) in self.terms}


class Element(_Terms):
    """Noncommutative polynomial with Laurent-in-lambda rational coefficients."""

    def __init__(self, alg, terms=None, normalize=True):
        self.alg = alg
        terms = terms or {}
        self.terms = alg.nf_terms(terms) if normalize else dict(terms)

    @classmethod
    def word(cls, alg, word, coeff=1, exp=0):
        return cls(alg, {(tuple(word), exp): Fraction(coeff)} if coeff else {})

    def __add__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            other = self.alg.one * other
        return Element(self.alg, self._combine(other, 1), normalize=False)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            other = self.alg.one * other
        return Element(self.alg, self._combine(other, -1), normalize=False)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()}, normalize=False)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.alg, self.alg.mul_terms(self.terms, other.terms), normalize=False)
        if isinstance(other, (int, Rational, Scalar)):
            return Element(self.alg, self._scaled(other), normalize=False)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            return Element(self.alg, self._scaled(other), normalize=False)
        return NotImplemented

    def __pow__(self, n):
        out = self.alg.one
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    def letters(self):
        return {r for (w, _) in self.terms for r in w}

    def by_word(self):
        grouped = {}
        for (w, e), c in self.terms.items():
            grouped.setdefault(w, {})[e] = c
        return grouped

    def coefficient(self, word) -> Scalar:
        return Scalar(self.by_word().get(tuple(word), {}), self.alg.order)

    def serialize(self):
        A = self.alg.alphabet
        return [
            {"coeff": [[e, format_rational(c)] for e, c in sorted(cs.items())], "word": A.names(w)}
            for w, cs in sorted(self.by_word().items())
        ]

    @classmethod
    def deserialize(cls, alg, data):
        terms = {}
        for item in data:
            w = tuple(alg.alphabet.lookup(n) for n in item["word"])
            for e, c in item["coeff"]:
                add_into(terms, (w, int(e)), parse_rational(c))
        return cls(alg, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        A = self.alg.alphabet
        parts = []
        for w, cs in sorted(self.by_word().items()):
            coeff = " + ".join(_coeff_repr(e, c) for e, c in sorted(cs.items()))
            if len(cs) > 1:
                coeff = f"({coeff})"
            parts.append(coeff if not w else f"{coeff}*{A.word_str(w)}" if coeff != "1" else A.word_str(w))
        return " + ".join(parts)


class TensorElement(_Terms):
    """Element of the n-fold tensor power; products act slotwise."""

    __slots__ = ("arity",)

    def __init__(self, alg, terms=None, arity=2, normalize=True):
        self.alg = alg
        self.arity = arity
        terms = terms or {}
        self.terms = alg.nf_tensor_terms(terms) if normalize else dict(terms)

    @classmethod
    def of(cls, *elements):
        """Tensor product of plain elements, ``a (x) b (x) ...``."""
        alg = elements[0].alg
        out = {((), 0): Fraction(1)}
        K = alg.order
        for el in elements:
            if el.alg is not alg:
                raise ModeError("tensor factors from different presentations")
            nxt = {}
            for (ws, e1), c1 in out.items():
                for (w, e2), c2 in el.terms.items():
                    e = e1 + e2
                    if K is not None and e > K:
                        continue
                    add_into(nxt, (ws + (w,), e), c1 * c2)
            out = nxt
        return cls(alg, out, arity=len(elements), normalize=False)

    def _check(self, other):
        super()._check(other)
        if other.arity != self.arity:
            raise ModeError("tensor arity mismatch")

    def __add__(self, other):
        return TensorElement(self.alg, self._combine(other, 1), self.arity, normalize=False)

    def __sub__(self, other):
        return TensorElement(self.alg, self._combine(other, -1), self.arity, normalize=False)

    def __neg__(self):
        return TensorElement(self.alg, {k: -c for k, c in self.terms.items()}, self.arity, normalize=False)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return TensorElement(self.alg, self.alg.mul_tensor_terms(self.terms, other.terms), self.arity, normalize=False)
        if isinstance(other, (int, Rational, Scalar)):
            return TensorElement(self.alg, self._scaled(other), self.arity, normalize=False)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, Scalar)):
            return TensorElement(self.alg, self._scaled(other), self.arity, normalize=False)
        return NotImplemented

    def commutator(self, other):
        return self * other - other * self

    def slot_letters(self, slot):
        return {r for (ws, _) in self.terms for r in ws[slot]}

    def by_words(self):
        grouped = {}
        for (ws, e), c in self.terms.items():
            grouped.setdefault(ws, {})[e] = c
        return grouped

    def serialize(self):
        A = self.alg.alphabet
        return [
            {"coeff": [[e, format_rational(c)] for e, c in sorted(cs.items())], "words": [A.names(w) for w in ws]}
            for ws, cs in sorted(self.by_words().items())
        ]

    @classmethod
    def deserialize(cls, alg, data, arity=2):
        terms = {}
        for item in data:
            ws = tuple(tuple(alg.alphabet.lookup(n) for n in w) for w in item["words"])
            arity = len(ws)
            for e, c in item["coeff"]:
                add_into(terms, (ws, int(e)), parse_rational(c))
        return cls(alg, terms, arity=arity)

    def __repr__(self):
        if not self.terms:
            return "0"
        A = self.alg.alphabet
        parts = []
        for ws, cs in sorted(self.by_words().items()):
            coeff = " + ".join(_coeff_repr(e, c) for e, c in sorted(cs.items()))
            if len(cs) > 1:
                coeff = f"({coeff})"
            body = " (x) ".join(A.word_str(w) for w in ws)
            parts.append(body if coeff == "1" else f"{coeff}*[{body}]")
        return " + ".join(parts)


# -- truncation ---------------------------------------------------------------


def exp_series(alg_t, sign, K):
    """Terms of exp(sign * lambda * T) to order K in a truncated algebra."""
    t = alg_t.exp_rank
    return {((t,) * n, n): Fraction(sign**n, factorial(n)) for n in range(K + 1)}


def _word_image(alg_t, word, cache):
    """Normal-formed image of an exact word in the truncated algebra alg_t."""
    hit = cache.get(word)
    if hit is not None:
        return hit
    src = alg_t.exact_source
    z, zi = src.z_rank, src.zinv_rank
    K = alg_t.order
    out = {((), 0): Fraction(1)}
    for r in word:
        if r == z:
            img = exp_series(alg_t, -1, K)
        elif r == zi:
            img = exp_series(alg_t, 1, K)
        else:
            img = {((alg_t.alphabet.rank(src.alphabet[r].key),), 0): Fraction(1)}
        out = alg_t.mul_terms(out, img)
    cache[word] = out
    return out


def _truncation_target(alg, terms_exps, K):
    if alg.order is not None:
        raise ModeError("element is already in TRUNCATED mode")
    low = min([0] + list(terms_exps))
    return alg.truncated(K - low)


def truncate(x, K: int):
    """Map an EXACT element or tensor to TRUNCATED(K): Z -> exp(-lam T)."""
    alg = x.alg
    work = _truncation_target(alg, (e for (_, e) in x.terms), K)
    final = alg.truncated(K)
    cache = work._image_cache
    if isinstance(x, TensorElement):
        acc = {}
        for (ws, e), c in x.terms.items():
            prod = {((), e): c}
            for w in ws:
                img = _word_image(work, w, cache)
                nxt = {}
                for (us, e1), c1 in prod.items():
                    for (u, e2), c2 in img.items():
                        add_into(nxt, (us + (u,), e1 + e2), c1 * c2)
                prod = nxt
            for k, c2 in prod.items():
                add_into(acc, k, c2)
        out = {}
        for (ws, e), c in acc.items():
            if e > K:
                continue
            if e < 0:
                raise ModeError("truncation leaves a negative lambda power")
            out[(ws, e)] = c
        return TensorElement(final, out, x.arity, normalize=False)
    acc = {}
    for (w, e), c in x.terms.items():
        for (u, e2), c2 in _word_image(work, w, cache).items():
            add_into(acc, (u, e + e2), c * c2)
    out = {}
    for (w, e), c in acc.items():
        if e > K:
            continue
        if e < 0:
            raise ModeError("truncation leaves a negative lambda power")
        out[(w, e)] = c
    return Element(final, out, normalize=False)

