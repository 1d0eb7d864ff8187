"""The split a = N: deformed Heisenberg-Weyl algebra and its dual.

``build_hw`` constructs U_lam(HW) directly from its own brackets and compares
it with the CK presentation at a = N under the renaming
J(0,i) -> X(i), X(i,N) -> Y(i), X(0,N) -> Xi.

The dual Fun_lam(HW) is commutative away from chi, so it is handled with sympy
polynomials: every tensor slot gets its own copy of the coordinates.
"""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .ncalg import Element, Letter, TensorElement, add_into
from .presentation import (
    EXPONENTIAL,
    J_LEFT,
    X_SECTOR,
    Z_KEY,
    ZINV_KEY,
    Algebra,
    Presentation,
    gen_key,
    parse_omega,
    undeformed_bracket,
)
from .report import Report, compare, verdict
from .rewrite import check_confluence
from .scalar import Scalar

__all__ = [
    "HwPresentation",
    "DualHwPresentation",
    "build_hw",
    "check_hw_matches_ck",
    "check_cocycle_reconstruction",
    "build_dual_hw",
    "check_dual_bialgebra",
    "check_cocoboundary",
    "renaming",
]

XI = ("Xi",)


def _x(i):
    return ("X", i)


def _y(i):
    return ("Y", i)


def _j(i, j):
    return ("J", i, j)


class HwPresentation(Algebra):
    """U_lam(HW) with n = N - 1 pairs (X_i, Y_i), central Xi and rotations J_ij.

    ``cocycle=False`` gives the undeformed algebra H (same brackets except
    [X_i, Y_j] = 0) with Xi adjoined as a central element.
    """

    exp_key = XI

    def __init__(self, N, omega=None, cocycle=True, certify=True):
        N = int(N)
        if N < 2:
            raise ValueError("N must be >= 2")
        if omega is None:
            omega = (1,) * (N - 2) + (0,)
        omega = parse_omega(omega)
        if len(omega) != N - 1 or omega[-1] != 0:
            raise ValueError("the Heisenberg-Weyl split needs N-1 entries with wN = 0")
        self.N = N
        self.n = N - 1
        self.omega = omega
        self.cocycle = cocycle
        n = self.n
        letters = [Letter(XI, "Xi", X_SECTOR, 1)]
        letters += [Letter(_y(i), f"Y({i})", X_SECTOR, 1) for i in range(1, n + 1)]
        letters += [Letter(Z_KEY, "Z", EXPONENTIAL, 1), Letter(ZINV_KEY, "Z^-1", EXPONENTIAL, 1)]
        letters += [Letter(_x(i), f"X({i})", J_LEFT, 3) for i in range(1, n + 1)]
        letters += [Letter(_j(i, j), f"J({i},{j})", J_LEFT, 3)
                    for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self._setup(letters, {"e^(-lam*Xi)": Z_KEY}, None)
        R = self.alphabet.rank
        rot = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

        def put(g, h, terms):
            if terms:
                self.comm[(R(g), R(h))] = terms
                self.comm[(R(h), R(g))] = {k: -v for k, v in terms.items()}

        for a_, g in enumerate(rot):
            for h in rot[a_ + 1:]:
                out = {}
                for (b, c), k in undeformed_bracket(g, h, self.w):
                    add_into(out, ((R(_j(b, c)),), 0), Fraction(k))
                put(_j(*g), _j(*h), out)
        for (i, j) in rot:
            for k in range(1, n + 1):
                # [J_ij, X_k] = d_ik X_j - d_jk w_ij X_i
                out = {}
                if k == i:
                    add_into(out, ((R(_x(j)),), 0), Fraction(1))
                if k == j:
                    add_into(out, ((R(_x(i)),), 0), -self.w(i, j))
                put(_j(i, j), _x(k), out)
                # [J_ij, Y_k] = d_ik w_ij Y_j - d_jk Y_i
                out = {}
                if k == i:
                    add_into(out, ((R(_y(j)),), 0), self.w(i, j))
                if k == j:
                    add_into(out, ((R(_y(i)),), 0), Fraction(-1))
                put(_j(i, j), _y(k), out)
        if cocycle:
            for i in range(1, n + 1):
                # [X_i, Y_i] = -(1 - Z^2)/(2 lam)
                z = R(Z_KEY)
                put(_x(i), _y(i), {((), -1): Fraction(-1, 2), ((z, z), -1): Fraction(1, 2)})
        self._derive_z_rules()
        self._compile()
        self._hopf()
        if certify and cocycle:
            bad = self.certify_z_rules().failures()
            if bad:
                raise ValueError(f"Z-rule certification failed: {bad[0].check_id}")

    def w(self, a, b):
        out = Fraction(1)
        for s in range(a + 1, b + 1):
            out *= 0 if s == 1 else self.omega[s - 2]
        return out

    def _hopf(self):
        R = self.alphabet.rank
        z, zi = R(Z_KEY), R(ZINV_KEY)
        one = Fraction(1)
        self.delta[z] = {(((z,), (z,)), 0): one}
        self.delta[zi] = {(((zi,), (zi,)), 0): one}
        self.eps[z] = self.eps[zi] = Scalar(1)
        self.gamma[z] = {((zi,), 0): one}
        self.gamma[zi] = {((z,), 0): one}
        n = self.n
        prim = [XI] + [_j(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        for key in prim:
            r = R(key)
            self.delta[r] = {(((), (r,)), 0): one, (((r,), ()), 0): one}
            self.eps[r] = Scalar(0)
            self.gamma[r] = {((r,), 0): -one}
        for i in range(1, n + 1):
            for key in (_x(i), _y(i)):
                r = R(key)
                self.delta[r] = self.nf_tensor_terms({(((z,), (r,)), 0): one, (((r,), ()), 0): one})
                self.eps[r] = Scalar(0)
                self.gamma[r] = self.nf_terms({((zi, r), 0): -one})

    def describe(self):
        return {"N": self.N, "omega": [str(w) for w in self.omega], "basis": "hw",
                "split": self.N, "mode": self.mode_name()}

    def gen(self, kind, *idx):
        key = {"X": _x, "Y": _y, "J": _j}[kind](*idx) if kind != "Xi" else XI
        return self.letter(key)


def renaming(N):
    """CK generator key -> HW key at the split a = N."""
    out = {gen_key(0, N): XI, Z_KEY: Z_KEY, ZINV_KEY: ZINV_KEY}
    for i in range(1, N):
        out[gen_key(0, i)] = _x(i)
        out[gen_key(i, N)] = _y(i)
        for j in range(i + 1, N):
            out[gen_key(i, j)] = _j(i, j)
    return out


def build_hw(N, omega=None) -> HwPresentation:
    """Build U_lam(HW) and certify it against the a = N CK presentation."""
    h = HwPresentation(N, omega)
    rep = check_hw_matches_ck(h)
    if not rep.ok:
        bad = ", ".join(c.check_id for c in rep.failures()[:5])
        raise ValueError(f"HW presentation disagrees with the CK table: {bad}")
    h.match_report = rep
    return h


def _transport(src, dst, terms, mapping, tensor=False):
    rk = {r: dst.alphabet.rank(mapping[src.alphabet[r].key]) for r in range(len(src.alphabet))}
    out = {}
    for (w, e), c in terms.items():
        if tensor:
            key = (tuple(tuple(rk[r] for r in v) for v in w), e)
        else:
            key = (tuple(rk[r] for r in w), e)
        add_into(out, key, c)
    return out


def check_hw_matches_ck(h) -> Report:
    N = h.N
    p = Presentation(N, h.omega, "new", N)
    mp = renaming(N)
    checks = []
    same_order = [mp[l.key] for l in p.alphabet.letters] == [l.key for l in h.alphabet.letters]
    checks.append(verdict("hw.letter_order", same_order))
    checks.append(verdict("hw.weights", p.alphabet.weights == h.alphabet.weights))
    n = len(p.alphabet)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            ha, hb = h.alphabet.rank(mp[p.alphabet[a].key]), h.alphabet.rank(mp[p.alphabet[b].key])
            got = Element(h, h.comm.get((ha, hb), {}), normalize=False)
            want = Element(h, _transport(p, h, p.comm.get((a, b), {}), mp))
            checks.append(compare(f"hw.comm[{h.alphabet[ha].name},{h.alphabet[hb].name}]", got, want))
    for a in range(n):
        ha = h.alphabet.rank(mp[p.alphabet[a].key])
        nm = h.alphabet[ha].name
        checks.append(compare(f"hw.coproduct[{nm}]", TensorElement(h, h.delta[ha], 2, normalize=False),
                              TensorElement(h, _transport(p, h, p.delta[a], mp, True), 2)))
        checks.append(compare(f"hw.counit[{nm}]", h.eps[ha], p.eps[a]))
        checks.append(compare(f"hw.antipode[{nm}]", Element(h, h.gamma[ha], normalize=False),
                              Element(h, _transport(p, h, p.gamma[a], mp))))
    return Report(h.describe(), checks)


def check_cocycle_reconstruction(h, probes=True) -> Report:
    """Rebuild U_lam(HW) from H, the trivial action, the coaction and xi."""
    from .hopf import coproduct

    H = HwPresentation(h.N, h.omega, cocycle=False)
    n = h.n
    checks = []
    z = h.letter(Z_KEY)
    xi = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            val = (h.one - z * z) * Scalar({-1: Fraction(-1, 4)}) if i == j else h.zero
            xi[(_x(i), _y(j))] = val
            xi[(_y(j), _x(i))] = -val
    # the reconstructed bracket of a pair is [g,h]_H + xi(g,h) - xi(h,g)
    keys = [l.key for l in h.alphabet.letters]
    recon = {}
    for g in keys:
        for k in keys:
            if g == k:
                continue
            base = Element(H, H.comm.get((H.alphabet.rank(g), H.alphabet.rank(k)), {}), normalize=False)
            lifted = Element(h, {(tuple(h.alphabet.rank(H.alphabet[r].key) for r in w), e): c
                                 for (w, e), c in base.terms.items()})
            cocyc = xi.get((g, k), h.zero) - xi.get((k, g), h.zero)
            recon[(g, k)] = lifted + cocyc
            got = h.comm_element(h.alphabet.rank(g), h.alphabet.rank(k))
            name = f"[{h.alphabet[h.alphabet.rank(g)].name},{h.alphabet[h.alphabet.rank(k)].name}]"
            checks.append(compare(f"cocycle.bracket{name}", recon[(g, k)], got))
    for i in range(1, n + 1):
        lhs = xi[(_x(i), _y(i))] * 2
        rhs = h.gen("X", i).commutator(h.gen("Y", i))
        checks.append(compare(f"cocycle.twice_xi[X({i}),Y({i})]", lhs, rhs))
    for g in keys:
        if g in (XI, Z_KEY, ZINV_KEY):
            continue
        nm = h.alphabet[h.alphabet.rank(g)].name
        checks.append(compare(f"cocycle.trivial_action[Xi,{nm}]", h.letter(XI).commutator(h.letter(g)), h.zero))
    # coaction: beta(J) = 1 (x) J, beta(X_i) = Z (x) X_i, beta(Y_i) = Z (x) Y_i
    for g in keys:
        if g in (XI, Z_KEY, ZINV_KEY):
            continue
        el = h.letter(g)
        nm = h.alphabet[h.alphabet.rank(g)].name
        left = h.one if g[0] == "J" else z
        b = TensorElement.of(left, el)
        checks.append(compare(f"cocycle.coaction[{nm}]", coproduct(el), TensorElement.of(el, h.one) + b))
    if probes:
        for i in range(1, n + 1):
            y = h.gen("Y", i)
            printed = TensorElement.of(y, h.one) + TensorElement.of(z, h.gen("X", i))
            c = compare(f"cocycle.printed_reading[Y({i})]", coproduct(y), printed, role="probe",
                        note="printed coaction of Y_i has X_i in the right slot")
            checks.append(c)
    rebuilt = h.mutated(comm={(h.alphabet.rank(g), h.alphabet.rank(k)): v.terms
                              for (g, k), v in recon.items()})
    conf = check_confluence(rebuilt)
    for c in conf.checks:
        c.check_id = "cocycle." + c.check_id
    checks.extend(conf.checks)
    return Report(h.describe(), checks)


# -- dual bialgebra ------------------------------------------------------------


class DualHwPresentation:
    """Fun_lam(HW): R, Rinv (n x n), x_i, y_i and chi with [chi, x] = -lam x.

    Tensors of arity k are sympy expressions in the slot copies 1..k of the
    coordinates.  Rinv is a separate symbol family; identities that need
    R Rinv = 1 are decided after substituting Rinv -> R^-1 in each slot.
    """

    def __init__(self, N, order=None):
        N = int(N)
        if N < 2:
            raise ValueError("N must be >= 2")
        self.N = N
        self.n = N - 1
        self.order = order
        self.lam = sp.Symbol("lam")
        self._syms = {}

    def describe(self):
        return {"N": self.N, "omega": [], "basis": "dual_hw", "split": self.N,
                "mode": "exact" if self.order is None else f"trunc({self.order})"}

    # coordinates
    def R(self, i, j, s=1):
        return self._sym(f"R{i}{j}_{s}")

    def Rinv(self, i, j, s=1):
        return self._sym(f"Ri{i}{j}_{s}")

    def x(self, i, s=1):
        return self._sym(f"x{i}_{s}")

    def y(self, i, s=1):
        return self._sym(f"y{i}_{s}")

    def chi(self, s=1):
        return self._sym(f"chi_{s}")

    def _sym(self, name):
        hit = self._syms.get(name)
        if hit is None:
            hit = self._syms[name] = sp.Symbol(name)
        return hit

    def rng(self):
        return range(1, self.n + 1)

    def generators(self):
        """(name, slot-1 symbol, kind, indices) for every generator."""
        out = []
        for i in self.rng():
            for j in self.rng():
                out.append((f"R({i},{j})", "R", (i, j)))
        for i in self.rng():
            for j in self.rng():
                out.append((f"Rinv({i},{j})", "Rinv", (i, j)))
        for i in self.rng():
            out.append((f"x({i})", "x", (i,)))
        for i in self.rng():
            out.append((f"y({i})", "y", (i,)))
        out.append(("chi", "chi", ()))
        return out

    def var(self, kind, idx, s):
        return getattr(self, kind)(*idx, s) if idx else getattr(self, kind)(s)

    def psi(self, s, t, sign=(1, -1)):
        a, b = sign
        A = sum(self.y(i, s) * self.Rinv(j, i, t) * self.x(j, t) for i in self.rng() for j in self.rng())
        B = sum(self.x(i, s) * self.R(i, j, t) * self.y(j, t) for i in self.rng() for j in self.rng())
        return sp.Rational(a, 2) * A + sp.Rational(b, 2) * B

    def delta(self, kind, idx, s=1, t=2):
        """Coproduct of a generator into slots (s, t)."""
        r = self.rng()
        if kind == "R":
            i, j = idx
            return sum(self.R(i, k, s) * self.R(k, j, t) for k in r)
        if kind == "Rinv":
            i, j = idx
            return sum(self.Rinv(k, j, s) * self.Rinv(i, k, t) for k in r)
        if kind == "x":
            (i,) = idx
            return self.x(i, t) + sum(self.x(k, s) * self.R(k, i, t) for k in r)
        if kind == "y":
            (i,) = idx
            return self.y(i, t) + sum(self.y(k, s) * self.Rinv(i, k, t) for k in r)
        if kind == "chi":
            return self.chi(t) + self.chi(s) + self.psi(s, t)
        raise KeyError(kind)

    def counit(self, kind, idx):
        if kind in ("R", "Rinv"):
            return sp.Integer(1 if idx[0] == idx[1] else 0)
        return sp.Integer(0)

    def slot_map(self, expr, slot, fn):
        """Replace the slot-``slot`` variables of ``expr`` by ``fn(kind, idx)``."""
        sub = {}
        for name, kind, idx in self.generators():
            sub[self.var(kind, idx, slot)] = fn(kind, idx)
        return expr.xreplace(sub)

    def shift(self, expr, mapping):
        """Rename slots, e.g. {2: 3}."""
        sub = {}
        for name, kind, idx in self.generators():
            for a, b in mapping.items():
                sub[self.var(kind, idx, a)] = self.var(kind, idx, b)
        return expr.xreplace(sub)

    def inverse_substitution(self, slots):
        sub = {}
        for s in slots:
            M = sp.Matrix(self.n, self.n, lambda i, j: self.R(i + 1, j + 1, s))
            Minv = M.inv()
            for i in self.rng():
                for j in self.rng():
                    sub[self.Rinv(i, j, s)] = Minv[i - 1, j - 1]
        return sub

    def is_zero(self, expr, slots=(1, 2, 3)):
        expr = sp.expand(expr)
        if expr == 0:
            return True
        return sp.cancel(sp.together(expr.xreplace(self.inverse_substitution(slots)))) == 0

    def euler(self, expr, s):
        """Degree operator in the x, y coordinates of slot s."""
        out = 0
        for i in self.rng():
            for v in (self.x(i, s), self.y(i, s)):
                out += v * sp.diff(expr, v)
        return out


def build_dual_hw(N, order=None) -> DualHwPresentation:
    return DualHwPresentation(N, order)


def _sympy_compare(d, check_id, lhs, rhs, slots=(1, 2, 3), role="check", note=None):
    diff = sp.expand(lhs - rhs)
    ok = d.is_zero(diff, slots)
    detail = None if ok else {"lhs": str(sp.expand(lhs)), "rhs": str(sp.expand(rhs)), "diff": str(diff)}
    res = verdict(check_id, ok, role=role, note=note)
    if not ok:
        res.counterexample = detail
    return res


def check_dual_bialgebra(d) -> Report:
    checks = []
    for name, kind, idx in d.generators():
        D = d.delta(kind, idx)
        left = d.slot_map(d.shift(D, {2: 3}), 1, lambda k, i: d.delta(k, i, 1, 2))
        right = d.slot_map(D, 2, lambda k, i: d.delta(k, i, 2, 3))
        checks.append(_sympy_compare(d, f"dual.coassoc[{name}]", left, right))
        g1, g2 = d.var(kind, idx, 1), d.var(kind, idx, 2)
        checks.append(_sympy_compare(d, f"dual.counit_left[{name}]", d.slot_map(D, 1, d.counit), g2))
        checks.append(_sympy_compare(d, f"dual.counit_right[{name}]", d.slot_map(D, 2, d.counit), g1))
    # Delta respects [chi, g]: chi acts on each slot by -lam times the x,y degree
    lam = d.lam
    dchi_slots = (1, 2)
    for name, kind, idx in d.generators():
        if kind == "chi":
            continue
        D = d.delta(kind, idx)
        lhs = sum(-lam * d.euler(D, s) for s in dchi_slots)
        rel = -lam if kind in ("x", "y") else 0
        checks.append(_sympy_compare(d, f"dual.delta_rel[chi,{name}]", lhs, rel * D))
    for i in d.rng():
        for j in d.rng():
            lhs = sum(d.delta("R", (i, k)) * d.delta("Rinv", (k, j)) for k in d.rng())
            rhs = sp.Integer(1 if i == j else 0)
            checks.append(_sympy_compare(d, f"dual.delta_rel[R*Rinv]({i},{j})", lhs, rhs))
            lhs = sum(d.delta("Rinv", (i, k)) * d.delta("R", (k, j)) for k in d.rng())
            checks.append(_sympy_compare(d, f"dual.delta_rel[Rinv*R]({i},{j})", lhs, rhs))
    # counit respects the same relations
    for name, kind, idx in d.generators():
        if kind in ("x", "y"):
            checks.append(verdict(f"dual.eps_rel[chi,{name}]", d.counit(kind, idx) == 0))
    return Report(d.describe(), checks)


def check_cocoboundary(d) -> Report:
    """Find s in {+1/2, -1/2} with chi' = chi + s sum y_i x_i and
    Delta chi' = 1 (x) chi' + chi' (x) 1 + sum y_i (x) Rinv_ji x_j."""
    checks = []
    working = []
    yx = lambda s: sum(d.y(i, s) * d.x(i, s) for i in d.rng())
    for s in (sp.Rational(1, 2), sp.Rational(-1, 2)):
        dyx = sum(d.delta("y", (i,)) * d.delta("x", (i,)) for i in d.rng())
        lhs = d.delta("chi", ()) + s * dyx
        chi1 = d.chi(1) + s * yx(1)
        chi2 = d.chi(2) + s * yx(2)
        rhs = chi2 + chi1 + d.psi(1, 2, sign=(2, 0))
        res = _sympy_compare(d, f"cocoboundary.sign[{s}]", lhs, rhs, slots=(1, 2), role="probe")
        checks.append(res)
        if res.passed:
            working.append(str(s))
    checks.append(verdict("cocoboundary.unique_sign", len(working) == 1,
                          note=f"working sign: {', '.join(working) or 'none'}", detail={"working": working}))
    rep = Report(d.describe(), checks)
    rep.working = working
    return rep
