"""Exact coefficients: Laurent polynomials in lambda over the rationals.

A scalar is stored as a mapping ``exponent -> Fraction``.  ``order=None`` is
EXACT mode (any integer exponent); an integer ``order=K`` is TRUNCATED(K)
mode, where only exponents ``0..K`` survive.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "parse_rational", "format_rational", "ModeError"]


class ModeError(ValueError):
    """Operands live in incompatible scalar modes or presentations."""


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    text = str(text).strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _clean(coeffs: dict, order) -> dict:
    out = {}
    for e, c in coeffs.items():
        if not c:
            continue
        if order is not None:
            if e > order:
                continue
            if e < 0:
                raise ModeError(f"negative lambda exponent {e} in TRUNCATED({order}) mode")
        out[e] = Fraction(c)
    return out


class Scalar:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs=None, order=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, (int, Rational)):
            coeffs = {0: coeffs}
        self.coeffs = _clean(dict(coeffs), order)
        self.order = order

    @classmethod
    def lam(cls, power=1, coeff=1, order=None):
        return cls({power: coeff}, order)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.order != self.order:
                raise ModeError("scalar mode mismatch")
            return other
        if isinstance(other, (int, Rational)):
            return Scalar(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Scalar(out, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        K = self.order
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if K is not None and e > K:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return Scalar(out, K)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = Scalar(other, self.order)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def truncate(self, K: int) -> "Scalar":
        if self.order is not None:
            raise ModeError("scalar is already truncated")
        return Scalar({e: c for e, c in self.coeffs.items() if e <= K}, K)

    def serialize(self):
        return [[e, format_rational(c)] for e, c in sorted(self.coeffs.items())]

    @classmethod
    def deserialize(cls, data, order=None):
        return cls({int(e): parse_rational(c) for e, c in data}, order)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*lam")
            else:
                parts.append(f"{c}*lam^{e}")
        return " + ".join(parts)
