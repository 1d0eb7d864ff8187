# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernel; same interface as ``_kernel_py.Rewriter``."""

IMPLEMENTATION = "c"


cdef inline void _acc(dict out, object key, object val):
    cdef object old = out.get(key)
    if old is not None:
        val = old + val
    if val:
        out[key] = val
    elif old is not None:
        del out[key]


cdef class Rewriter:
    cdef public list table
    cdef public object order
    cdef public dict cache
    cdef public long steps
    cdef bint bounded
    cdef long K

    def __init__(self, rules, nletters, order=None):
        table = [[None] * nletters for _ in range(nletters)]
        for (a, b), rhs in rules.items():
            table[a][b] = tuple((tuple(w), e, c) for (w, e, c) in rhs)
        self.table = table
        self.order = order
        self.bounded = order is not None
        self.K = order if order is not None else 0
        self.cache = {}
        self.steps = 0

    cpdef dict word(self, tuple w):
        cdef dict cache = self.cache
        cdef object hit = cache.get(w)
        if hit is not None:
            return <dict>hit
        cdef Py_ssize_t i, n = len(w)
        cdef object rhs = None
        cdef list table = self.table
        for i in range(n - 1):
            rhs = (<list>table[<Py_ssize_t>w[i]])[<Py_ssize_t>w[i + 1]]
            if rhs is not None:
                break
        cdef dict out
        if rhs is None:
            out = {(w, 0): 1}
            cache[w] = out
            return out
        self.steps += 1
        cdef tuple pre = w[:i]
        cdef tuple post = w[i + 2:]
        cdef long e, e3
        out = {}
        for v, e_, c in rhs:
            e = e_
            for key, c2 in self.word(pre + v + post).items():
                e3 = e + <long>key[1]
                if self.bounded and e3 > self.K:
                    continue
                _acc(out, (key[0], e3), c * c2)
        cache[w] = out
        return out

    def terms(self, dict terms):
        cdef dict out = {}
        cdef long e, e3
        for key, c in terms.items():
            if not c:
                continue
            e = key[1]
            for key2, c2 in self.word(key[0]).items():
                e3 = e + <long>key2[1]
                if self.bounded and e3 > self.K:
                    continue
                _acc(out, (key2[0], e3), c * c2)
        return out

    def mul(self, dict a, dict b):
        cdef dict out = {}
        cdef long e12, e
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                e12 = <long>k1[1] + <long>k2[1]
                if self.bounded and e12 > self.K:
                    continue
                c12 = c1 * c2
                for k3, c3 in self.word(k1[0] + k2[0]).items():
                    e = e12 + <long>k3[1]
                    if self.bounded and e > self.K:
                        continue
                    _acc(out, (k3[0], e), c12 * c3)
        return out

    cdef dict _expand_slots(self, tuple ws):
        cdef dict acc = {((), 0): 1}
        cdef dict nxt, nf
        cdef long e
        for w in ws:
            nf = self.word(w)
            nxt = {}
            for k1, c1 in acc.items():
                for k2, c2 in nf.items():
                    e = <long>k1[1] + <long>k2[1]
                    if self.bounded and e > self.K:
                        continue
                    _acc(nxt, (k1[0] + (k2[0],), e), c1 * c2)
            acc = nxt
        return acc

    def tensor_terms(self, dict terms):
        cdef dict out = {}
        cdef long e, e3
        for key, c in terms.items():
            if not c:
                continue
            e = key[1]
            for k2, c2 in self._expand_slots(key[0]).items():
                e3 = e + <long>k2[1]
                if self.bounded and e3 > self.K:
                    continue
                _acc(out, (k2[0], e3), c * c2)
        return out

    def tensor_mul(self, dict a, dict b):
        cdef dict out = {}
        cdef long e12, e
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                e12 = <long>k1[1] + <long>k2[1]
                if self.bounded and e12 > self.K:
                    continue
                c12 = c1 * c2
                cat = tuple([x + y for x, y in zip(k1[0], k2[0])])
                for k3, c3 in self._expand_slots(cat).items():
                    e = e12 + <long>k3[1]
                    if self.bounded and e > self.K:
                        continue
                    _acc(out, (k3[0], e), c12 * c3)
        return out
