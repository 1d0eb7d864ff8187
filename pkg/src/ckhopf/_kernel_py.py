"""Pure-Python rewriting kernel (fallback for the compiled ``_kernel``).

Rules are given as ``rules[(a, b)] = ((word, exp, coeff), ...)``: the two-letter
word ``a b`` rewrites to the weighted sum of the right-hand words.  The kernel
normal-forms words by leftmost rule application with a word cache.
"""

IMPLEMENTATION = "python"


class Rewriter:
    def __init__(self, rules, nletters, order=None):
        table = [[None] * nletters for _ in range(nletters)]
        for (a, b), rhs in rules.items():
            table[a][b] = tuple((tuple(w), e, c) for (w, e, c) in rhs)
        self.table = table
        self.order = order
        self.cache = {}
        self.steps = 0

    def word(self, w):
        """Normal form of a single word, as ``{(word, exp): coeff}``."""
        cache = self.cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        table = self.table
        rhs = None
        for i in range(len(w) - 1):
            rhs = table[w[i]][w[i + 1]]
            if rhs is not None:
                break
        if rhs is None:
            out = {(w, 0): 1}
            cache[w] = out
            return out
        self.steps += 1
        K = self.order
        pre = w[:i]
        post = w[i + 2:]
        out = {}
        for v, e, c in rhs:
            for (u, e2), c2 in self.word(pre + v + post).items():
                e3 = e + e2
                if K is not None and e3 > K:
                    continue
                key = (u, e3)
                val = out.get(key, 0) + c * c2
                if val:
                    out[key] = val
                else:
                    del out[key]
        cache[w] = out
        return out

    def terms(self, terms):
        K = self.order
        out = {}
        for (w, e), c in terms.items():
            if not c:
                continue
            for (u, e2), c2 in self.word(w).items():
                e3 = e + e2
                if K is not None and e3 > K:
                    continue
                key = (u, e3)
                val = out.get(key, 0) + c * c2
                if val:
                    out[key] = val
                else:
                    del out[key]
        return out

    def mul(self, a, b):
        K = self.order
        word = self.word
        out = {}
        for (w1, e1), c1 in a.items():
            for (w2, e2), c2 in b.items():
                e12 = e1 + e2
                if K is not None and e12 > K:
                    continue
                c12 = c1 * c2
                for (u, e3), c3 in word(w1 + w2).items():
                    e = e12 + e3
                    if K is not None and e > K:
                        continue
                    key = (u, e)
                    val = out.get(key, 0) + c12 * c3
                    if val:
                        out[key] = val
                    else:
                        del out[key]
        return out

    def _expand_slots(self, ws):
        """Product over slots of the slot normal forms of ``ws``."""
        acc = {((), 0): 1}
        K = self.order
        for w in ws:
            nf = self.word(w)
            nxt = {}
            for (us, e1), c1 in acc.items():
                for (u, e2), c2 in nf.items():
                    e = e1 + e2
                    if K is not None and e > K:
                        continue
                    key = (us + (u,), e)
                    val = nxt.get(key, 0) + c1 * c2
                    if val:
                        nxt[key] = val
                    else:
                        del nxt[key]
            acc = nxt
        return acc

    def tensor_terms(self, terms):
        K = self.order
        out = {}
        for (ws, e), c in terms.items():
            if not c:
                continue
            for (us, e2), c2 in self._expand_slots(ws).items():
                e3 = e + e2
                if K is not None and e3 > K:
                    continue
                key = (us, e3)
                val = out.get(key, 0) + c * c2
                if val:
                    out[key] = val
                else:
                    del out[key]
        return out

    def tensor_mul(self, a, b):
        K = self.order
        out = {}
        for (ws1, e1), c1 in a.items():
            for (ws2, e2), c2 in b.items():
                e12 = e1 + e2
                if K is not None and e12 > K:
                    continue
                c12 = c1 * c2
                cat = tuple(x + y for x, y in zip(ws1, ws2))
                for (us, e3), c3 in self._expand_slots(cat).items():
                    e = e12 + e3
                    if K is not None and e > K:
                        continue
                    key = (us, e)
                    val = out.get(key, 0) + c12 * c3
                    if val:
                        out[key] = val
                    else:
                        del out[key]
        return out
