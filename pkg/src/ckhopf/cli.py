"""Command line front end: ``verify``, ``tables`` and ``hw``.

Exit status: 0 when every ordinary check passes, 1 when some check fails,
2 for an invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .bicross import check_bicrossproduct, check_classical_limit, check_hopf_axioms, resolve_variant
from .hw import build_dual_hw, build_hw, check_cocoboundary, check_cocycle_reconstruction, check_dual_bialgebra
from .ncalg import Element, TensorElement
from .presentation import Presentation, build_presentation, parse_omega, verify_change_basis
from .report import Report, dumps
from .rewrite import check_confluence

SUITES = ("confluence", "hopf", "bicross", "variant", "basis", "classical", "hw", "dual")
DEFAULT_SUITES = ("confluence", "hopf", "bicross")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    N: int
    omega: tuple
    basis: str = "new"
    split: object = "auto"
    mode: str = "exact"
    trunc_order: int = 4
    suites: tuple = DEFAULT_SUITES
    variant: str | None = None
    output: str | None = None
    jobs: int = 1
    splits: list = field(default_factory=list)

    def validate(self):
        if self.N < 2:
            raise ConfigError("--n must be >= 2")
        if len(self.omega) != self.N - 1:
            raise ConfigError(f"--omega needs {self.N - 1} entries (w2..wN)")
        if self.basis not in ("old", "new"):
            raise ConfigError("--basis must be old or new")
        if self.mode not in ("exact", "trunc"):
            raise ConfigError("--mode must be exact or trunc")
        if self.trunc_order < 0:
            raise ConfigError("--trunc-order must be >= 0")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}")
        if self.split == "auto":
            self.splits = [1] + [a for a in range(2, self.N + 1) if self.omega[a - 2] == 0]
        else:
            a = int(self.split)
            if not 1 <= a <= self.N:
                raise ConfigError(f"--split must lie in 1..{self.N}")
            if a > 1 and self.omega[a - 2] != 0:
                raise ConfigError(f"--split {a} requires w{a} = 0")
            self.splits = [a]
        return self


def _parse_split(text):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("split must be an integer or 'auto'") from None


def _parse_omega(text):
    try:
        return parse_omega(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad omega: {exc}") from None


def _parse_suites(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


# -- running suites ---------------------------------------------------------


def run_split(cfg: RunConfig, a: int) -> Report:
    exact = Presentation(cfg.N, cfg.omega, cfg.basis, a)
    p = exact if cfg.mode == "exact" else exact.truncated(cfg.trunc_order)
    rep = Report(p.describe(), [])
    suites = set(cfg.suites)
    if "confluence" in suites:
        rep.extend(check_confluence(p))
    if "bicross" in suites:
        rep.extend(check_bicrossproduct(p))
    elif "hopf" in suites:
        rep.extend(check_hopf_axioms(p))
    if "variant" in suites and cfg.basis == "new":
        rep.extend(resolve_variant(p, cfg.variant))
    if "basis" in suites and a > 1:
        rep.extend(verify_change_basis(Presentation(cfg.N, cfg.omega, "old", a)))
    if "classical" in suites:
        rep.extend(check_classical_limit(exact))
    if a == cfg.N and ("hw" in suites or "dual" in suites):
        rep.extend(run_hw(cfg.N, cfg.omega, suites))
    seen, unique = set(), []
    for c in rep.checks:
        if c.check_id not in seen:
            seen.add(c.check_id)
            unique.append(c)
    rep.checks = unique
    return rep


def run_hw(N, omega=None, suites=("hw", "dual")) -> Report:
    h = build_hw(N, omega)
    rep = Report(h.describe(), [])
    if "hw" in suites:
        rep.extend(h.match_report)
        rep.extend(check_cocycle_reconstruction(h))
    if "dual" in suites:
        d = build_dual_hw(N)
        rep.extend(check_dual_bialgebra(d))
        rep.extend(check_cocoboundary(d))
    return rep


def _run_split_args(args):
    return run_split(*args).to_dict()


def run_verify(cfg: RunConfig):
    jobs = max(1, cfg.jobs)
    tasks = [(cfg, a) for a in cfg.splits]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_split_args, tasks))
    else:
        results = [_run_split_args(t) for t in tasks]
    return results


def _ok(result):
    return all(c["status"] == "PASS" for c in result["checks"] if c.get("role", "check") == "check")


def _summary(result):
    rep = Report(result["presentation"], [])
    from .report import CheckResult

    for c in result["checks"]:
        rep.checks.append(CheckResult(c["check_id"], c["status"], c["counterexample"],
                                      c.get("role", "check"), c.get("note")))
    return rep.summary()


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    results = run_verify(cfg)
    doc = results[0] if len(results) == 1 else {"reports": results}
    _write(cfg.output, dumps(doc))
    for r in results:
        print(_summary(r), file=out)
    return 0 if all(_ok(r) for r in results) else 1


# -- tables -------------------------------------------------------------------


def tables_json(p):
    A = p.alphabet
    n = len(A)
    doc = {
        "presentation": p.describe(),
        "letters": [{"name": l.name, "sector": l.sector, "weight": l.weight} for l in A.letters],
        "commutators": [],
        "coproduct": [],
        "counit": [],
        "antipode": [],
    }
    for g in range(n):
        for h in range(g):
            doc["commutators"].append({"pair": [A[g].name, A[h].name], "value": p.comm_element(g, h).serialize()})
    for r in range(n):
        name = A[r].name
        doc["coproduct"].append({"generator": name, "value": TensorElement(p, p.delta[r], 2, normalize=False).serialize()})
        doc["counit"].append({"generator": name, "value": p.eps[r].serialize()})
        doc["antipode"].append({"generator": name, "value": Element(p, p.gamma[r], normalize=False).serialize()})
    return doc


def _latex_name(p, r):
    l = p.alphabet[r]
    if l.key[0] == "g":
        return f"{l.name[0]}_{{{l.key[1]}{l.key[2]}}}"
    return l.name


def _latex_word(p, w):
    if not w:
        return ""
    T = p.exp_rank
    tname = _latex_name(p, T)
    parts = []
    i = 0
    while i < len(w):
        r = w[i]
        k = 1
        while i + k < len(w) and w[i + k] == r:
            k += 1
        if r == p.z_rank or r == p.zinv_rank:
            sign = "-" if r == p.z_rank else ""
            coef = "" if k == 1 else str(k)
            parts.append(f"e^{{{sign}{coef}\\lambda {tname}}}")
        else:
            name = _latex_name(p, r)
            parts.append(name if k == 1 else f"{name}^{{{k}}}")
        i += k
    return " ".join(parts)


def _latex_scalar(coeffs):
    """Laurent polynomial in lambda; returns (text, is_single_term)."""
    items = sorted(coeffs.items())
    out = []
    for e, c in items:
        c = Fraction(c)
        mag = abs(c)
        num = "" if (mag == 1 and e != 0) else (str(mag.numerator) if mag.denominator == 1 else f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}")
        lam = "" if e == 0 else ("\\lambda" if e == 1 else f"\\lambda^{{{e}}}")
        out.append(("-" if c < 0 else "+", (num + lam) or "1"))
    return out


def latex_element(p, el):
    if not el.terms:
        return "0"
    chunks = []
    for w, cs in sorted(el.by_word().items()):
        sc = _latex_scalar(cs)
        word = _latex_word(p, w)
        if len(sc) == 1:
            sign, body = sc[0]
            body = word if (body == "1" and word) else (f"{body} {word}".strip())
            chunks.append((sign, body))
        else:
            inner = " ".join(f"{s} {b}" for s, b in sc).lstrip("+ ").strip()
            chunks.append(("+", f"\\left({inner}\\right) {word}".strip()))
    text = " ".join(f"{s} {b}" for s, b in chunks)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def latex_tensor(p, t):
    if not t.terms:
        return "0"
    chunks = []
    for ws, cs in sorted(t.by_words().items()):
        sc = _latex_scalar(cs)
        body = " \\otimes ".join(_latex_word(p, w) or "1" for w in ws)
        if len(sc) == 1:
            sign, c = sc[0]
            chunks.append((sign, body if c == "1" else f"{c}\\, {body}"))
        else:
            inner = " ".join(f"{s} {b}" for s, b in sc).lstrip("+ ").strip()
            chunks.append(("+", f"\\left({inner}\\right) {body}"))
    text = " ".join(f"{s} {b}" for s, b in chunks)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def tables_latex(p):
    A = p.alphabet
    n = len(A)
    d = p.describe()
    lines = [f"% N={d['N']} omega=({','.join(d['omega'])}) basis={d['basis']} split={d['split']} mode={d['mode']}",
             "% Commutators", "\\begin{align*}"]
    gens = [r for r in range(n) if r not in (p.z_rank, p.zinv_rank)]
    for g in gens:
        for h in gens:
            if h < g:
                lines.append(f"[{_latex_name(p, g)},{_latex_name(p, h)}] &= {latex_element(p, p.comm_element(g, h))} \\\\")
    lines += ["\\end{align*}", "% Coproducts", "\\begin{align*}"]
    for r in range(n):
        t = TensorElement(p, p.delta[r], 2, normalize=False)
        lines.append(f"\\Delta {_latex_word(p, (r,))} &= {latex_tensor(p, t)} \\\\")
    lines += ["\\end{align*}", "% Counit", "\\begin{align*}"]
    for r in range(n):
        lines.append(f"\\epsilon({_latex_word(p, (r,))}) &= {latex_element(p, p.one * p.eps[r])} \\\\")
    lines += ["\\end{align*}", "% Antipodes", "\\begin{align*}"]
    for r in range(n):
        el = Element(p, p.gamma[r], normalize=False)
        lines.append(f"\\gamma({_latex_word(p, (r,))}) &= {latex_element(p, el)} \\\\")
    lines.append("\\end{align*}")
    return "\n".join(lines) + "\n"


def cmd_tables(cfg: RunConfig, fmt="json") -> int:
    docs = []
    for a in cfg.splits:
        p = build_presentation(cfg.N, cfg.omega, cfg.basis, a, cfg.mode, cfg.trunc_order)
        docs.append(tables_json(p) if fmt == "json" else tables_latex(p))
    if fmt == "json":
        text = dumps(docs[0] if len(docs) == 1 else {"tables": docs})
    else:
        text = "\n".join(docs)
    _write(cfg.output, text)
    return 0


def cmd_hw(N, omega, suites, output) -> int:
    rep = run_hw(N, omega, suites)
    _write(output, rep.to_json())
    print(rep.summary())
    return 0 if rep.ok else 1


def _write(path, text):
    if path in (None, "-"):
        if path == "-":
            sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def schema():
    """The published JSON schema for reports."""
    return json.loads(resources.files("ckhopf").joinpath("report.schema.json").read_text())


# -- argument parsing -------------------------------------------------------


def make_parser():
    ap = argparse.ArgumentParser(prog="ckhopf", description="Deformed Cayley-Klein Hopf algebras: verification and tables.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp_, suites=True):
        sp_.add_argument("--n", type=int, required=True, help="dimension N >= 2")
        sp_.add_argument("--omega", type=_parse_omega, required=True, help="w2,...,wN as rationals, e.g. 0,1 or 1,-1/2")
        sp_.add_argument("--basis", choices=("old", "new"), default="new")
        sp_.add_argument("--split", type=_parse_split, default="auto", help="split index a, or 'auto'")
        sp_.add_argument("--mode", choices=("exact", "trunc"), default="exact")
        sp_.add_argument("--trunc-order", type=int, default=4)
        sp_.add_argument("--output", "-o", default=None, help="output file ('-' for stdout)")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suites", type=_parse_suites, default=DEFAULT_SUITES,
                   help=f"comma separated subset of {','.join(SUITES)}")
    v.add_argument("--variant", choices=("J", "X"), default=None, help="restrict the antipode readings")
    v.add_argument("--jobs", type=int, default=1)

    t = sub.add_parser("tables", help="export commutator and Hopf tables")
    common(t)
    t.add_argument("--format", choices=("json", "latex"), default="json")

    h = sub.add_parser("hw", help="Heisenberg-Weyl split and its dual")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--omega", type=_parse_omega, default=None, help="w2,...,wN with wN = 0")
    h.add_argument("--suites", type=_parse_suites, default=("hw", "dual"))
    h.add_argument("--output", "-o", default=None)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "hw":
            if args.n < 2:
                raise ConfigError("--n must be >= 2")
            if args.omega is not None and (len(args.omega) != args.n - 1 or args.omega[-1] != 0):
                raise ConfigError("--omega needs N-1 entries ending in 0")
        else:
            cfg = RunConfig(
                N=args.n,
                omega=args.omega,
                basis=args.basis,
                split=args.split,
                mode=args.mode,
                trunc_order=args.trunc_order,
                suites=getattr(args, "suites", DEFAULT_SUITES),
                variant=getattr(args, "variant", None),
                output=args.output,
                jobs=getattr(args, "jobs", 1),
            ).validate()
    except ConfigError as exc:
        ap.print_usage(sys.stderr)
        print(f"ckhopf: error: {exc}", file=sys.stderr)
        return 2
    if args.command == "hw":
        return cmd_hw(args.n, args.omega, args.suites, args.output)
    if args.command == "verify":
        return cmd_verify(cfg)
    return cmd_tables(cfg, args.format)

if __name__ == "__main__":
    sys.exit(main())
