"""Command-line front end.

Exit status: 0 all checks passed, 1 some check failed, 2 bad or missing verb
arguments, 3 parse error, 4 depth exceeded, 5 invalid datum or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks as C
from .algebra import Algebra
from .center import (
    check_image_constraints,
    f_lambda,
    format_toral,
    harish_chandra,
    is_central,
)
from .datum import SAMPLE_NAMES, CartanDatum, parse_weight, sample_datum
from .errors import DatumAxiomError, DepthExceeded, DomainError, NotExhausted, ParseError, QBorcherdsError
from .linalg import DEFAULT_MODULAR, EXACT
from .modules import build_irreducible, character_formula, r_lambda
from .rmatrix import RMatrix, r_operator, ybe_check

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_PARSE, EXIT_DEPTH, EXIT_DOMAIN = 0, 1, 2, 3, 4, 5

VERBS = (
    "validate", "dims", "gram", "pair", "mul", "hopf-test", "char",
    "center-check", "hc", "flambda", "rmat", "ybe", "all",
)

# gram blocks up to this size get an exact determinant; larger ones are
# certified by the exact inverse plus a nonzero determinant mod p
EXACT_DET_LIMIT = 12


class ArgumentMismatch(QBorcherdsError):
    pass


class Report:
    def __init__(self, verb: str, datum: CartanDatum | None, depth: int):
        self.verb = verb
        self.datum = datum
        self.depth = depth
        self.checks: list[C.Check] = []
        self.lines: list[str] = []
        self.data: dict = {}

    def check(self, name: str, ref: str, passed: bool, detail: str = "") -> None:
        self.checks.append(C.Check(name, ref, bool(passed), detail))

    def extend(self, items) -> None:
        self.checks.extend(items)

    def say(self, line: str) -> None:
        self.lines.append(line)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        body = {
            "verb": self.verb,
            "datum_hash": self.datum.digest if self.datum is not None else None,
            "depth": self.depth,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.data:
            body["data"] = self.data
        return json.dumps(body, indent=2, sort_keys=True)

    def to_text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            tail = f" ({c.detail})" if c.detail else ""
            ref = f" [{c.ref}]" if not c.passed else ""
            out.append(f"{tag} {c.name}{tail}{ref}")
        if self.checks:
            npass = sum(c.passed for c in self.checks)
            out.append(f"{npass}/{len(self.checks)} checks passed")
        return "\n".join(out)


def load_datum(spec: str) -> CartanDatum:
    if spec in SAMPLE_NAMES:
        return sample_datum(spec)
    path = Path(spec)
    if not path.exists():
        raise ArgumentMismatch(f"no datum file {spec!r} (samples: {', '.join(SAMPLE_NAMES)})")
    return CartanDatum.load(path)


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise ArgumentMismatch(f"verb {args.verb!r} needs --{name.replace('_', '-')}")
    return val


def _lam(args, d: CartanDatum, name: str = "lam"):
    text = getattr(args, name)
    if text is None:
        raise ArgumentMismatch(f"verb {args.verb!r} needs --{'lambda' if name == 'lam' else name}")
    return parse_weight(d, text)


def _root_label(beta) -> str:
    return "(" + ",".join(str(b) for b in beta) + ")"


# verbs ---------------------------------------------------------------------

def verb_validate(args, d, rep: Report) -> None:
    try:
        d.validate()
        rep.check("datum axioms", "datum axioms", True, f"rank {d.rank}")
    except DatumAxiomError as exc:
        rep.check("datum axioms", "datum axioms", False, str(exc))


def verb_dims(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    rep.say("weight\tdim U+ = dim U-")
    table = {}
    for beta in d.roots_up_to(args.depth):
        n = alg.reg.dim(beta)
        table[_root_label(beta)] = n
        rep.say(f"{_root_label(beta)}\t{n}")
    rep.data["dims"] = table


def verb_gram(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    reg = alg.reg
    table = {}
    for beta in d.roots_up_to(args.depth):
        lv = reg.level(beta)
        if lv.dim == 0:
            continue
        shadow = reg.shadow.level(beta)
        nonzero = shadow.dim == lv.dim and DEFAULT_MODULAR.det(shadow.gram) != 0
        if lv.dim <= EXACT_DET_LIMIT:
            det = EXACT.det(lv.gram)
            txt = det.to_string(d.root_order)
            nonzero = nonzero and bool(det)
        else:
            txt = "nonzero (exact inverse, det mod p != 0)"
        table[_root_label(beta)] = txt
        rep.say(f"{_root_label(beta)}\tdim {lv.dim}\tdet {txt}")
        rep.check(f"gram {_root_label(beta)}", "pairing nondegenerate on the halves", nonzero)
    rep.data["determinants"] = table


def verb_pair(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    x = alg.parse(_need(args, "x"))
    y = alg.parse(_need(args, "y"))
    val = alg.pair_borel(x, y)
    txt = val.to_string(d.root_order)
    rep.say(f"({args.x} | {args.y}) = {txt}")
    rep.data["value"] = txt


def verb_mul(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    x = alg.parse(_need(args, "x"))
    y = alg.parse(_need(args, "y"))
    txt = (x * y).to_string()
    rep.say(txt)
    rep.data["product"] = txt


def verb_hopf(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    elems = [(lab, g) for lab, g in alg.generators()]
    if args.x is not None:
        elems.append((args.x, alg.parse(args.x)))
    else:
        mons = C.random_monomials(alg, args.count, 3, seed=args.seed)
        elems += [(f"monomial {n}", m) for n, m in enumerate(mons)]
    fails = {"coassociativity": [], "counit": [], "antipode": []}
    for lab, x in elems:
        for k, ok in C.hopf_axioms(alg, x).items():
            if not ok:
                fails[k].append(lab)
    for k, bad in fails.items():
        rep.check(k, "Hopf superalgebra axioms", not bad,
                  f"{len(elems) - len(bad)}/{len(elems)}" + (f", failing: {bad}" if bad else ""))


def verb_char(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    lam = _lam(args, d)
    V = build_irreducible(alg, lam, args.depth)
    ch = character_formula(d, lam, args.depth, alg.reg)
    md = V.dims()
    rep.say("weight lambda-beta\tformula\tmodule")
    for beta in d.roots_up_to(args.depth):
        rep.say(f"{_root_label(beta)}\t{ch.get(beta, 0)}\t{md.get(beta, 0)}")
    rep.data["formula"] = {_root_label(b): v for b, v in ch.items()}
    rep.data["module"] = {_root_label(b): v for b, v in md.items()}
    rep.check("character formula = module multiplicities", "character formula", ch == md,
              f"|R(lambda)| = {len(r_lambda(d, lam, args.depth))}")


def _element_or_casimir(args, alg: Algebra):
    if args.x is not None:
        return args.x, alg.parse(args.x)
    d = alg.datum
    if d.rank != 1:
        raise ArgumentMismatch("--x is required unless the datum has rank 1")
    return "rank-1 central element", C.rank1_casimir(alg)


def verb_center(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    label, z = _element_or_casimir(args, alg)
    rep.say(f"z = {z.to_string()}")
    rep.check(f"{label} is central", "centrality", is_central(alg, z))


def verb_hc(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    label, z = _element_or_casimir(args, alg)
    t = harish_chandra(alg, z)
    txt = format_toral(alg, t)
    rep.say(f"xi({label}) = {txt}")
    rep.data["image"] = txt
    res = check_image_constraints(d, t)
    rep.check("Weyl invariance", "image of the Harish-Chandra map", res["weyl_invariant"])
    rep.check("restricted torus", "image of the Harish-Chandra map", res["restricted"])


def verb_flambda(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    lam = _lam(args, d)
    V = build_irreducible(alg, lam, args.depth)
    if args.x is not None:
        val = f_lambda(alg, V, alg.parse(args.x))
        txt = val.to_string(d.root_order)
        rep.say(f"f_lambda({args.x}) = {txt}")
        rep.data["value"] = txt
        return
    gens = [g for _, g in alg.generators()]
    us = [alg.one()] + gens
    good = total = 0
    for x in gens:
        for u in us:
            lhs = None
            for udeg, up in u.homogeneous_parts().items():
                term = f_lambda(alg, V, alg.ad(x, up)) * alg.theta(udeg, x.degree())
                lhs = term if lhs is None else lhs + term
            total += 1
            good += lhs == alg.counit(x) * f_lambda(alg, V, u)
    rep.check("f_lambda ad-invariance", "ad-invariance of f_lambda", good == total, f"{good}/{total}")


def _three_modules(args, d, alg):
    lam = _lam(args, d)
    mu = parse_weight(d, args.mu) if args.mu is not None else lam
    nu = parse_weight(d, args.nu) if args.nu is not None else mu
    cache: dict = {}

    def mod(w):
        if w not in cache:
            cache[w] = build_irreducible(alg, w, args.depth)
        return cache[w]

    return mod(lam), mod(mu), mod(nu)


def verb_rmat(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    V, W, _ = _three_modules(args, d, alg)
    op = r_operator(RMatrix(alg), V, W)
    blocks = {}
    for tot, (basis, mat) in op.blocks().items():
        rep.say(f"block beta={_root_label(tot)} basis {[(_root_label(b1), j1, _root_label(b2), j2) for (b1, j1), (b2, j2) in basis]}")
        rows = [[c.to_string(d.root_order) for c in row] for row in mat]
        for row in rows:
            rep.say("  [" + ", ".join(row) + "]")
        blocks[_root_label(tot)] = rows
    rep.data["blocks"] = blocks
    rep.check("R invertible blockwise", "R is invertible", op.blockwise_invertible())


def verb_ybe(args, d, rep: Report) -> None:
    alg = Algebra(d, args.depth)
    V1, V2, V3 = _three_modules(args, d, alg)
    res = ybe_check(RMatrix(alg), V1, V2, V3)
    rep.say(f"{res.residual_entries} nonzero residual entries / {res.total_entries}")
    rep.check(f"Yang-Baxter {res.dim}x{res.dim}", "Yang-Baxter equation", res.ok,
              f"{res.residual_entries} nonzero residual entries / {res.total_entries}")


def verb_all(args, d, rep: Report) -> None:
    for name, fn in C.SUITES.items():
        rep.extend(fn())


HANDLERS = {
    "validate": verb_validate,
    "dims": verb_dims,
    "gram": verb_gram,
    "pair": verb_pair,
    "mul": verb_mul,
    "hopf-test": verb_hopf,
    "char": verb_char,
    "center-check": verb_center,
    "hc": verb_hc,
    "flambda": verb_flambda,
    "rmat": verb_rmat,
    "ybe": verb_ybe,
    "all": verb_all,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qborcherds", description=__doc__.splitlines()[0])
    p.add_argument("verb_pos", nargs="?", metavar="verb", choices=VERBS, help="one of: " + ", ".join(VERBS))
    p.add_argument("--verb", choices=VERBS)
    p.add_argument("--datum", help=f"datum JSON file or sample name ({', '.join(SAMPLE_NAMES)})")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--lambda", dest="lam", help="weight such as h1=1,d1=0")
    p.add_argument("--mu", help="second weight (rmat, ybe)")
    p.add_argument("--nu", help="third weight (ybe)")
    p.add_argument("--x", help="element expression, e.g. 'f[1,1]*q^{h:1;d:0}*e[1,1]'")
    p.add_argument("--y", help="second element expression")
    p.add_argument("--count", type=int, default=50, help="random monomials for hopf-test")
    p.add_argument("--seed", type=int, default=7)
    return p


def run(argv=None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_ARGS), ""
    if args.verb_pos and args.verb and args.verb_pos != args.verb:
        return EXIT_ARGS, "error: conflicting verbs"
    args.verb = args.verb or args.verb_pos
    if args.verb is None:
        return EXIT_ARGS, "error: no verb given"
    if args.depth < 0:
        return EXIT_ARGS, "error: --depth must be non-negative"
    try:
        datum = None
        if args.verb != "all":
            datum = load_datum(_need(args, "datum"))
            if args.verb != "validate":
                datum.validate()
        rep = Report(args.verb, datum, args.depth)
        HANDLERS[args.verb](args, datum, rep)
    except ArgumentMismatch as exc:
        return EXIT_ARGS, f"error: {exc}"
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except DepthExceeded as exc:
        return EXIT_DEPTH, f"depth exceeded: {exc}"
    except (DatumAxiomError, DomainError, NotExhausted) as exc:
        return EXIT_DOMAIN, f"error: {exc}"
    text = rep.to_json() if args.format == "json" else rep.to_text()
    return (EXIT_OK if rep.passed else EXIT_FAIL), text


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
