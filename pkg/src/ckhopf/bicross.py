"""Verification suites: Hopf axioms, action/coaction, bicrossproduct structure.

Structure maps are checked on letters, and compatibility with the relations is
checked rule by rule (Delta and eps multiplicative, gamma anti-multiplicative).
Since the maps are defined as (anti)multiplicative extensions, this is enough
for them to be well defined on the quotient algebra and to satisfy the axioms
on every element.
"""
from __future__ import annotations

from fractions import Fraction

from .hopf import (
    antipode,
    as_element,
    coproduct,
    counit,
    delta_slot,
    eps_slot,
    gamma_slot,
    map_slot,
    multiply,
)
from .ncalg import Element, TensorElement, add_into, truncate
from .presentation import (
    EXPONENTIAL,
    J_LEFT,
    J_RIGHT,
    X_SECTOR,
    Presentation,
    hat_j,
    undeformed_bracket,
)
from .report import CheckResult, Report, compare, verdict

__all__ = [
    "check_hopf_axioms",
    "check_action",
    "check_coaction",
    "check_bicrossproduct",
    "check_classical_limit",
    "resolve_variant",
    "beta",
    "left_factor_consistency",
    "VARIANTS",
]

VARIANTS = [("J", True), ("J", False), ("X", True), ("X", False)]


def _name(p, r):
    return p.alphabet[r].name


def _rule_element(p, rhs):
    terms = {}
    for w, e, c in rhs:
        add_into(terms, (w, e), c)
    return Element(p, terms, normalize=False)


# -- Hopf axioms ---------------------------------------------------------------


def _letter_axioms(p, r, which=("coassoc", "counit", "antipode")):
    g = p.letter(p.alphabet[r].key)
    n = _name(p, r)
    d = TensorElement(p, p.delta[r], 2, normalize=False)
    out = []
    if "coassoc" in which:
        out.append(compare(f"hopf.coassoc[{n}]", map_slot(d, 0, delta_slot), map_slot(d, 1, delta_slot)))
    if "counit" in which:
        out.append(compare(f"hopf.counit_left[{n}]", as_element(map_slot(d, 0, eps_slot)), g))
        out.append(compare(f"hopf.counit_right[{n}]", as_element(map_slot(d, 1, eps_slot)), g))
    if "antipode" in which:
        unit = p.one * p.eps[r]
        out.append(compare(f"hopf.antipode_left[{n}]", multiply(map_slot(d, 0, gamma_slot)), unit))
        out.append(compare(f"hopf.antipode_right[{n}]", multiply(map_slot(d, 1, gamma_slot)), unit))
    return out


def _relation_axioms(p, which=("delta", "eps", "gamma")):
    out = []
    for (a, b), rhs in sorted(p.rules.items()):
        ga, gb = p.letter(p.alphabet[a].key), p.letter(p.alphabet[b].key)
        tag = f"[{_name(p, a)},{_name(p, b)}]"
        r = _rule_element(p, rhs)
        if "delta" in which:
            out.append(compare(f"hopf.delta_rel{tag}", coproduct(ga) * coproduct(gb), coproduct(r)))
        if "eps" in which:
            out.append(compare(f"hopf.eps_rel{tag}", counit(ga) * counit(gb), counit(r)))
        if "gamma" in which:
            out.append(compare(f"hopf.gamma_rel{tag}", antipode(gb) * antipode(ga), antipode(r)))
    return out


def check_hopf_axioms(p) -> Report:
    """Coassociativity, counit and antipode on letters; Delta/eps/gamma on rules."""
    checks = []
    for r in p.letter_ranks():
        checks.extend(_letter_axioms(p, r))
    checks.extend(_relation_axioms(p))
    return Report(p.describe(), checks)


def _antipode_checks(p):
    checks = []
    for r in p.letter_ranks():
        checks.extend(_letter_axioms(p, r, ("antipode",)))
    checks.extend(_relation_axioms(p, ("gamma",)))
    return checks


# -- sectors -----------------------------------------------------------------


def _ranks(p, *sectors):
    return [r for r in p.letter_ranks() if p.alphabet[r].sector in sectors]


def _split_of(p, a):
    if a is not None and a != p.split:
        raise ValueError(f"presentation was built for split {p.split}, not {a}")
    return p.split


def _letters_ok(p, letters, allowed):
    bad = sorted(r for r in letters if p.alphabet[r].sector not in allowed)
    return not bad, [_name(p, r) for r in bad]


# -- action ------------------------------------------------------------------


def check_action(p, a=None) -> Report:
    """x <| j := [x, j] for translations x and rotation-sector letters j."""
    _split_of(p, a)
    xs = _ranks(p, X_SECTOR, EXPONENTIAL)
    js = _ranks(p, J_LEFT, J_RIGHT)
    L = lambda r: p.letter(p.alphabet[r].key)
    checks = []
    acts = {}
    for x in xs:
        for j in js:
            v = L(x).commutator(L(j))
            acts[(x, j)] = v
            ok, bad = _letters_ok(p, v.letters(), (X_SECTOR, EXPONENTIAL))
            checks.append(verdict(f"action.closure[{_name(p, x)},{_name(p, j)}]", ok,
                                  detail={"foreign_letters": bad}))
    for x in xs:
        for i, j1 in enumerate(js):
            for j2 in js[i + 1:]:
                lhs = acts[(x, j1)].commutator(L(j2)) - acts[(x, j2)].commutator(L(j1))
                rhs = L(x).commutator(L(j1).commutator(L(j2)))
                cid = f"action.law[{_name(p, x)};{_name(p, j1)},{_name(p, j2)}]"
                checks.append(compare(cid, lhs, rhs))
    for i, x in enumerate(xs):
        for y in xs[i:]:
            for j in js:
                lhs = (L(x) * L(y)).commutator(L(j))
                rhs = acts[(x, j)] * L(y) + L(x) * acts[(y, j)]
                cid = f"action.leibniz[{_name(p, x)}*{_name(p, y)};{_name(p, j)}]"
                checks.append(compare(cid, lhs, rhs))
    return Report(p.describe(), checks)


# -- coaction ------------------------------------------------------------------


def beta(p, printed=False):
    """Left coaction on rotation-sector letters, as in the bicrossproduct data.

    ``printed=True`` uses the right slot J(i,j) for J(0,i) as typeset; that
    form does not name a single generator, so it yields one candidate per
    existing J(i,j) and is only used as a probe.
    """
    if p.order is not None:
        src = p.exact_source
        conv = lambda t: truncate(t, p.order)
        return {p.alphabet.rank(src.alphabet[r].key): conv(t) if not isinstance(t, list) else [conv(c) for c in t]
                for r, t in beta(src, printed).items()}
    N, a = p.N, p.split
    out = {}
    for r in _ranks(p, J_LEFT, J_RIGHT):
        _, i, j = p.alphabet[r].key
        if i == 0:
            if printed:
                out[r] = [p._tensor([(1, 0, ["Z"], [(j, k)])]) for k in range(j + 1, N + 1)]
            else:
                out[r] = p._tensor([(1, 0, ["Z"], [(0, j)])])
        elif j < N:
            out[r] = p._tensor([(1, 0, [], [(i, j)])])
        else:
            wi = p.w(i, N)
            items = [(1, 0, ["Z"], [(i, N)])]
            for s in range(1, a):
                items.append((-wi, 1, ["Z", (s, i)], [(0, s)]))
            for s in range(a, i):
                items.append((wi, 1, [(0, s)], [(s, i)]))
            for s in range(i + 1, N):
                items.append((-p.w(s, N), 1, [(0, s)], [(i, s)]))
            out[r] = p._tensor(items)
    return {r: TensorElement(p, t, 2, normalize=False) if isinstance(t, dict) else
            [TensorElement(p, c, 2, normalize=False) for c in t] for r, t in out.items()}


def _beta_slot(table):
    def fn(alg, word):
        acc = {(((), ()), 0): Fraction(1)}
        for r in word:
            if r not in table:
                raise KeyError(alg.alphabet[r].name)
            acc = alg.mul_tensor_terms(acc, table[r].terms)
        return acc, 2
    return fn


def check_coaction(p, a=None, probes=True) -> Report:
    _split_of(p, a)
    b = beta(p)
    checks = []
    for r, bj in sorted(b.items()):
        n = _name(p, r)
        g = p.letter(p.alphabet[r].key)
        checks.append(compare(f"coaction.counit[{n}]", as_element(map_slot(bj, 0, eps_slot)), g))
        try:
            lhs = map_slot(bj, 1, _beta_slot(b))
            checks.append(compare(f"coaction.coassoc[{n}]", lhs, map_slot(bj, 0, delta_slot)))
        except KeyError as exc:
            checks.append(verdict(f"coaction.coassoc[{n}]", False, detail={"not_coacted": str(exc)}))
        recon = TensorElement.of(g, p.one) + bj
        checks.append(compare(f"coaction.reconstruction[{n}]", coproduct(g), recon))
        rest = coproduct(g) - TensorElement.of(g, p.one)
        ok, bad = _letters_ok(p, rest.slot_letters(0), (X_SECTOR, EXPONENTIAL))
        checks.append(verdict(f"coaction.image[{n}]", ok, detail={"foreign_letters": bad}))
    if probes:
        for r, cands in sorted(beta(p, printed=True).items()):
            if not isinstance(cands, list):
                continue
            g = p.letter(p.alphabet[r].key)
            d = coproduct(g)
            hit = any((TensorElement.of(g, p.one) + c - d).is_zero() for c in cands)
            checks.append(verdict(f"coaction.printed_reading[{_name(p, r)}]", hit, role="probe",
                                  note="printed right slot J(i,j) for J(0,i)",
                                  detail={"candidates": len(cands)}))
    return Report(p.describe(), checks)


# -- bicrossproduct ----------------------------------------------------------


def _negative_controls(p):
    """Check ids expected to fail in the old basis when hat J is nonzero."""
    if p.basis != "old" or p.split == 1:
        return set()
    N, a = p.N, p.split
    ids = set()
    for i in range(a, N):
        if hat_j(p, i).is_zero():
            continue
        n = _name(p, p._r((i, N)))
        ids.add(f"coaction.reconstruction[{n}]")
        ids.add(f"coaction.image[{n}]")
        for j in range(1, a):
            m = _name(p, p._r((0, j)))
            lo, hi = sorted((p._r((i, N)), p._r((0, j))))
            ids.add(f"bicross.j_closure[{_name(p, lo)},{_name(p, hi)}]")
    return ids


def left_factor_consistency(N, a):
    """The printed left-factor rule versus the triangle 0 <= i < j <= a-1."""
    printed = {(i, j) for i in range(N + 1) for j in range(i + 1, N + 1) if i < a - 1 and j < a}
    triangle = {(i, j) for i in range(N + 1) for j in range(i + 1, N + 1) if j <= a - 1}
    return printed == triangle


def check_bicrossproduct(p, a=None) -> Report:
    _split_of(p, a)
    L = lambda r: p.letter(p.alphabet[r].key)
    xs = _ranks(p, X_SECTOR, EXPONENTIAL)
    js = _ranks(p, J_LEFT, J_RIGHT)
    checks = []
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            checks.append(compare(f"bicross.x_abelian[{_name(p, x)},{_name(p, y)}]",
                                  L(x).commutator(L(y)), p.zero))
        d = coproduct(L(x))
        ok = all(_letters_ok(p, d.slot_letters(s), (X_SECTOR, EXPONENTIAL))[0] for s in (0, 1))
        ok = ok and _letters_ok(p, antipode(L(x)).letters(), (X_SECTOR, EXPONENTIAL))[0]
        checks.append(verdict(f"bicross.x_hopf_closure[{_name(p, x)}]", ok))
    for i, j1 in enumerate(js):
        for j2 in js[i + 1:]:
            v = L(j1).commutator(L(j2))
            ok, bad = _letters_ok(p, v.letters(), (J_LEFT, J_RIGHT))
            lam_free = v.lambda_degrees() <= {0}
            mixed = p.alphabet[j1].sector != p.alphabet[j2].sector
            split_ok = not mixed or v.is_zero()
            checks.append(verdict(f"bicross.j_closure[{_name(p, j1)},{_name(p, j2)}]",
                                  ok and lam_free and split_ok,
                                  detail={"bracket": v.serialize(), "foreign_letters": bad}))
    checks.append(verdict(f"bicross.left_factor_rule[a={p.split}]", left_factor_consistency(p.N, p.split),
                          note="printed index rule agrees with the triangle 0 <= i < j <= a-1"))
    rep = Report(p.describe(), checks)
    rep.extend(check_action(p))
    rep.extend(check_coaction(p))
    rep.extend(check_hopf_axioms(p))
    controls = _negative_controls(p)
    for c in rep.checks:
        if c.check_id in controls:
            c.role = "negative_control"
    return rep


def negative_controls_fired(rep):
    """All negative controls failed (as expected)."""
    ctl = [c for c in rep.checks if c.role == "negative_control"]
    return bool(ctl) and all(not c.passed for c in ctl)


# -- classical limit ---------------------------------------------------------


def check_classical_limit(p) -> Report:
    """TRUNCATED(0): brackets are the undeformed CK ones, coproducts primitive."""
    src = p if p.order is None else p.exact_source
    t = src.truncated(0)
    checks = []
    gens = [r for r in t.letter_ranks()]
    key = lambda r: t.alphabet[r].key
    for g in gens:
        for h in gens:
            if g == h:
                continue
            expect = t.zero
            for (b, c), k in undeformed_bracket(key(g)[1:], key(h)[1:], src.w):
                expect = expect + t.letter(("g", b, c)) * k
            got = t.comm_element(g, h)
            checks.append(compare(f"classical.bracket[{_name(t, g)},{_name(t, h)}]", got, expect))
        x = t.letter(key(g))
        checks.append(compare(f"classical.primitive[{_name(t, g)}]", coproduct(x),
                              TensorElement.of(x, t.one) + TensorElement.of(t.one, x)))
        checks.append(compare(f"classical.antipode[{_name(t, g)}]", antipode(x), -x))
    return Report(t.describe(), checks)


# -- antipode typo resolution -----------------------------------------------


def _gamma_signature(q):
    return tuple(sorted((q.alphabet[r].name, repr(Element(q, t, normalize=False)))
                        for r, t in q.gamma.items()))


def resolve_variant(p, variant=None) -> Report:
    """Run the antipode axiom for each reading of the last gamma(J(i,N)) sum.

    Readings: second factor J(i,s) or X(i,s), with or without w_{sN}.  Readings
    that give identical antipode tables form one family; the criterion is that
    exactly one family passes.
    """
    if p.basis != "new":
        raise ValueError("resolve_variant needs a new-basis presentation")
    readings = [v for v in VARIANTS if variant is None or v[0] == variant]
    families = {}
    checks = []
    for v in readings:
        q = Presentation(p.N, p.omega, "new", p.split, variant=v, certify=False)
        if p.order is not None:
            q = q.truncated(p.order)
        tag = f"{v[0]}{'' if v[1] else ',no-w'}"
        ac = _antipode_checks(q)
        for c in ac:
            c.check_id = f"variant[{tag}].{c.check_id}"
            c.role = "probe"
        passed = all(c.passed for c in ac)
        families.setdefault(_gamma_signature(q), []).append((tag, passed))
        checks.append(verdict(f"variant[{tag}].antipode_axiom", passed, role="probe"))
        checks.extend(c for c in ac if not c.passed)
    passing = [fam for fam in families.values() if all(ok for _, ok in fam)]
    names = ["/".join(t for t, _ in fam) for fam in passing]
    note = f"{len(families)} families; passing: {', '.join(names) or 'none'}"
    checks.append(verdict("variant.unique_passing_family", len(passing) == 1, note=note,
                          detail={"passing": names}))
    rep = Report(p.describe(), checks)
    rep.families = families
    rep.passing = names
    return rep
