"""Verification suites. Each suite returns a list of ``Check`` records."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .algebra import Algebra, AlgebraElement, key_degree
from .center import (
    casimir_rank1,
    check_image_constraints,
    chi,
    f_lambda,
    harish_chandra,
    highest_weight_scalar,
    is_central,
    k_two_rho_inverse,
    toral_independent,
    toral_multiply,
    xi_z_lambda,
)
from .datum import CartanDatum, sample_datum
from .errors import DatumAxiomError
from .halves import element_weight, serre_relations
from .killing import KillingForm
from .linalg import DEFAULT_MODULAR
from .modules import build_irreducible, character_formula, check_uv_iso, r_lambda
from .rmatrix import RMatrix, r_operator, ybe_check
from .scalars import ONE


@dataclass
class Check:
    name: str
    ref: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ref": self.ref, "pass": self.passed, "detail": self.detail}


def weight(datum: CartanDatum, *hvals: int) -> tuple:
    return tuple(hvals) + (0,) * datum.rank


_algebras: dict = {}


def algebra(name: str, depth: int = 5) -> Algebra:
    """Shared algebra per sample datum, so registries are built once."""
    key = (name, depth)
    if key not in _algebras:
        _algebras[key] = Algebra(sample_datum(name), depth)
    return _algebras[key]


# datum axioms -----------------------------------------------------------------

INVALID_DATA = {
    "diagonal": dict(index=["1"], A=[[4]], s=[1], m=[1], theta=[[1]]),
    "off-diagonal": dict(index=["1", "2"], A=[[2, 1], [1, 2]], s=[1, 1], m=[1, 1], theta=[[1, 1], [1, 1]]),
    "zero-pattern": dict(index=["1", "2"], A=[[2, 0], [-1, 2]], s=[1, 1], m=[1, 1], theta=[[1, 1], [1, 1]]),
    "symmetrizable": dict(index=["1", "2"], A=[[2, -1], [-2, 2]], s=[1, 1], m=[1, 1], theta=[[1, 1], [1, 1]]),
    "coloring": dict(index=["1", "2"], A=[[2, -1], [-1, 2]], s=[1, 1], m=[1, 1], theta=[[1, 1], [-1, 1]]),
    "colored-even": dict(index=["1", "2"], A=[[2, -1], [-1, 2]], s=[1, 1], m=[1, 1], theta=[[-1, 1], [1, 1]]),
    "charge": dict(index=["1"], A=[[2]], s=[1], m=[2], theta=[[1]]),
}


def suite_datum_axioms() -> list[Check]:
    out = []
    for name in ("sl2", "osp12", "a2", "odd_isotropic", "borcherds_mixed"):
        try:
            sample_datum(name).validate()
            out.append(Check(f"valid {name}", "datum axioms", True))
        except DatumAxiomError as exc:
            out.append(Check(f"valid {name}", "datum axioms", False, str(exc)))
    for axiom, raw in INVALID_DATA.items():
        try:
            CartanDatum.from_dict(raw).validate()
            out.append(Check(f"reject {axiom}", "datum axioms", False, "accepted"))
        except DatumAxiomError as exc:
            out.append(Check(f"reject {axiom}", "datum axioms", exc.axiom == axiom, f"raised {exc.axiom}"))
    return out


# pairing ------------------------------------------------------------------------

def suite_nondegeneracy(names=("sl2", "osp12", "a2", "odd_isotropic", "borcherds_mixed"), depth: int = 5) -> list[Check]:
    """Every pivot Gram block has an exact inverse and a nonzero modular determinant."""
    out = []
    for name in names:
        reg = algebra(name, depth).reg
        bad = []
        for beta in reg.datum.roots_up_to(depth):
            lv = reg.level(beta)
            if lv.dim == 0:
                continue
            shadow = reg.shadow.level(beta)
            if shadow.dim != lv.dim or DEFAULT_MODULAR.det(shadow.gram) == 0 or len(lv.gram_inv) != lv.dim:
                bad.append(beta)
        n = len(reg.datum.roots_up_to(depth))
        out.append(Check(f"gram {name} ht<={depth}", "pairing nondegenerate on the halves", not bad,
                         f"{n} weights, singular: {bad}"))
    return out


def suite_serre(names=("a2", "borcherds_mixed")) -> list[Check]:
    out = []
    for name in names:
        alg = algebra(name)
        d = alg.datum
        for label, elem in serre_relations(d):
            beta = element_weight(d, elem)
            coords = alg.reg.project_e_combo(beta, {w: alg.reg.F.convert(c) for w, c in elem.items()})
            out.append(Check(f"serre {name} {label}", "Serre elements lie in the radical", all(not c for c in coords)))
    return out


# Hopf structure ---------------------------------------------------------------------

def random_monomials(alg: Algebra, count: int, max_len: int, seed: int, pool=None) -> list[AlgebraElement]:
    rng = random.Random(seed)
    gens = pool if pool is not None else [g for _, g in alg.generators()]
    out = []
    for _ in range(count):
        el = alg.one()
        for _ in range(rng.randint(1, max_len)):
            el = el * rng.choice(gens)
        out.append(el)
    return out


def hopf_axioms(alg: Algebra, x: AlgebraElement) -> dict:
    D = alg.coproduct(x)
    eps = alg.scalar(alg.counit(x))

    def eps_key(k):
        return alg.counit(AlgebraElement(alg, {k: ONE}))

    left_unit = D.contract(0, eps_key)
    right_unit = D.contract(1, eps_key)
    as_elem = lambda t: AlgebraElement(alg, {ks[0]: c for ks, c in t.terms.items()})
    return {
        "coassociativity": D.apply(0, alg.coproduct_key) == D.apply(1, alg.coproduct_key),
        "counit": as_elem(left_unit) == x and as_elem(right_unit) == x,
        "antipode": D.apply(0, alg.antipode_key).multiply_out() == eps
        and D.apply(1, alg.antipode_key).multiply_out() == eps,
    }


def suite_hopf(names=("sl2", "osp12", "a2", "odd_isotropic", "borcherds_mixed"), count: int = 50) -> list[Check]:
    out = []
    for name in names:
        alg = algebra(name)
        elems = [g for _, g in alg.generators()] + random_monomials(alg, count, 3, seed=7)
        fails = {"coassociativity": 0, "counit": 0, "antipode": 0}
        for x in elems:
            for k, ok in hopf_axioms(alg, x).items():
                fails[k] += not ok
        for k, nbad in fails.items():
            out.append(Check(f"{k} {name}", "Hopf superalgebra axioms", nbad == 0, f"{len(elems) - nbad}/{len(elems)}"))
    return out


# flip lemma ---------------------------------------------------------------------------

def flip_expansion(alg: Algebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Rebuild x*y from the iterated coproducts of x and y and the pairing."""
    X = alg.coproduct(x).apply(0, alg.coproduct_key)
    Y = alg.coproduct(y).apply(0, alg.coproduct_key)
    total = alg.zero()
    for (x0, x1, x2), cx in X.terms.items():
        d1, d2 = key_degree(x1), key_degree(x2)
        for (y0, y1, y2), cy in Y.terms.items():
            p = alg.pair_borel(AlgebraElement(alg, {x0: ONE}), AlgebraElement(alg, {y0: ONE}))
            if not p:
                continue
            p2 = alg.pair_borel(AlgebraElement(alg, {x2: ONE}), alg.antipode(AlgebraElement(alg, {y2: ONE})))
            if not p2:
                continue
            e0, e1 = key_degree(y0), key_degree(y1)
            s = alg.theta(d1, e1) * alg.theta(d1, e0) * alg.theta(d2, e0) * alg.theta(d2, e1)
            total = total + (AlgebraElement(alg, {y1: ONE}) * AlgebraElement(alg, {x1: ONE})).scale(cx * cy * p * p2 * s)
    return total


def borel_generators(alg: Algebra, side: str) -> list[AlgebraElement]:
    d = alg.datum
    out = [alg.e(i, k) if side == "e" else alg.f(i, k) for i, k in d.letters]
    for i in range(d.rank):
        out += [alg.toral(d.h_basis(i)), alg.toral(d.d_basis(i))]
    return out


def suite_flip(names=("sl2", "osp12", "a2", "odd_isotropic"), count: int = 20) -> list[Check]:
    out = []
    for name in names:
        alg = algebra(name)
        xs, ys = borel_generators(alg, "e"), borel_generators(alg, "f")
        pairs = list(product(xs, ys))
        rx = random_monomials(alg, count, 3, seed=11, pool=xs)
        ry = random_monomials(alg, count, 3, seed=13, pool=ys)
        pairs += list(zip(rx, ry))
        good = sum(flip_expansion(alg, x, y) == x * y for x, y in pairs)
        out.append(Check(f"flip {name}", "flip lemma", good == len(pairs), f"{good}/{len(pairs)}"))
    return out


# Killing form --------------------------------------------------------------------------

def low_triples(alg: Algebra, max_len: int, toral_choices) -> list[AlgebraElement]:
    d = alg.datum
    out = []
    for gamma in d.roots_up_to(max_len):
        for beta in d.roots_up_to(max_len - sum(gamma)):
            for t in range(alg.reg.dim(gamma)):
                for r in range(alg.reg.dim(beta)):
                    for h in toral_choices:
                        out.append(AlgebraElement(alg, {(gamma, t, h, beta, r): ONE}))
    return out


def suite_killing(names=("sl2", "osp12", "a2")) -> list[Check]:
    out = []
    for name in names:
        alg = algebra(name)
        d = alg.datum
        kf = KillingForm(alg)
        vs = low_triples(alg, 2, [alg.zero_h, d.h_basis(0)])
        good = total = 0
        for _, u in alg.generators():
            du = u.degree()
            for v in vs:
                av = alg.ad(u, v)
                dv = v.degree()
                for vp in vs:
                    lhs = kf(av, vp)
                    rhs = kf(v, alg.adt(vp, u)) * alg.theta(du, dv) * alg.theta(du, vp.degree())
                    total += 1
                    good += lhs == rhs
        out.append(Check(f"killing invariance {name}", "invariance of the Killing form", good == total,
                         f"{good}/{total}"))
    return out


# modules -----------------------------------------------------------------------------------

UV_CASES = {"sl2": (4,), "osp12": (4,), "borcherds_mixed": (4, 4)}


def suite_uv_iso(depth: int = 4) -> list[Check]:
    out = []
    for name, hv in UV_CASES.items():
        alg = algebra(name)
        lam = weight(alg.datum, *hv)
        V = build_irreducible(alg, lam, depth)
        gammas = [g for g in alg.datum.roots_up_to(depth)]
        bad = [g for g in gammas if not check_uv_iso(alg, lam, g, V)]
        out.append(Check(f"U-/V iso {name} lambda={hv}", "weight spaces of V match U-", not bad,
                         f"{len(gammas)} weights, mismatched: {bad}"))
    return out


CHAR_CASES = {
    "sl2": [(0,), (1,), (2,), (3,)],
    "osp12": [(0,), (2,), (4,)],
    "a2": [(0, 0), (1, 0), (1, 1), (2, 1)],
    "borcherds_mixed": [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (3, 2)],
}


def suite_characters(depth: int = 4) -> list[Check]:
    out = []
    for name, lams in CHAR_CASES.items():
        alg = algebra(name)
        d = alg.datum
        for hv in lams:
            lam = weight(d, *hv)
            V = build_irreducible(alg, lam, depth)
            ch = character_formula(d, lam, depth, alg.reg)
            nr = len(r_lambda(d, lam, depth))
            out.append(Check(f"character {name} lambda={hv}", "character formula", ch == V.dims(), f"|R(lambda)|={nr}"))
    return out


# center ------------------------------------------------------------------------------------

CENTER_LAMBDAS = [(0,), (1,), (3,)]


def rank1_casimir(alg: Algebra) -> AlgebraElement:
    d = alg.datum
    h = d.d_basis(0) if d.A[0][0] == 0 else None
    return casimir_rank1(alg, 0, h=h)


def suite_center(names=("sl2", "osp12", "odd_isotropic"), depth: int = 6) -> list[Check]:
    # depth 6 leaves room for the cube of the quartic odd Casimir
    out = []
    for name in names:
        alg = algebra(name, depth)
        d = alg.datum
        z = rank1_casimir(alg)
        out.append(Check(f"central {name}", "rank-1 central elements", is_central(alg, z)))
        t = harish_chandra(alg, z)
        rep = check_image_constraints(d, t)
        out.append(Check(f"hc W-invariant {name}", "image of the Harish-Chandra map", rep["weyl_invariant"]))
        out.append(Check(f"hc restricted {name}", "image of the Harish-Chandra map", rep["restricted"]))
        powers = [{d.zero_coweight(): ONE}]
        zn = alg.one()
        mult_ok = True
        for _ in range(3):
            zn = zn * z
            powers.append(toral_multiply(powers[-1], t))
            mult_ok &= harish_chandra(alg, zn) == powers[-1]
        out.append(Check(f"hc multiplicative {name}", "Harish-Chandra map is an algebra map", mult_ok))
        out.append(Check(f"hc powers independent {name}", "Harish-Chandra map is injective", toral_independent(powers)))
        for hv in CENTER_LAMBDAS:
            lam = weight(d, *hv)
            lr = tuple(a + b for a, b in zip(lam, d.rho))
            ok = chi(alg, lr, t) == highest_weight_scalar(alg, z, lam)
            out.append(Check(f"chi(lambda+rho) {name} lambda={hv}", "central character", ok))
    return out


FLAMBDA_CASES = {"sl2": [(1,), (2,)], "osp12": [(2,)]}


def suite_flambda(depth: int = 5) -> list[Check]:
    out = []
    for name, lams in FLAMBDA_CASES.items():
        alg = algebra(name)
        d = alg.datum
        gens = [g for _, g in alg.generators()]
        us = [alg.one()] + gens + [a * b for a in gens for b in gens]
        k = k_two_rho_inverse(alg)
        for hv in lams:
            lam = weight(d, *hv)
            V = build_irreducible(alg, lam, depth)
            good = total = 0
            for x in gens:
                eps = alg.counit(x)
                for u in us:
                    lhs = None
                    for udeg, up in u.homogeneous_parts().items():
                        term = f_lambda(alg, V, alg.ad(x, up), k) * alg.theta(udeg, x.degree())
                        lhs = term if lhs is None else lhs + term
                    rhs = eps * f_lambda(alg, V, u, k)
                    total += 1
                    good += lhs == rhs
            out.append(Check(f"f_lambda invariance {name} lambda={hv}", "ad-invariance of f_lambda", good == total,
                             f"{good}/{total}"))
            t = xi_z_lambda(alg, lam, depth)
            rep = check_image_constraints(d, t)
            out.append(Check(f"xi(z_lambda) constraints {name} lambda={hv}", "image of the Harish-Chandra map",
                             rep["weyl_invariant"] and rep["restricted"], str(rep)))
    return out


# R-matrix --------------------------------------------------------------------------------

def suite_rmatrix(names=("sl2", "osp12", "odd_isotropic"), lemma_depth: int = 3,
                  inverse_depth: int = 4, intertwine_depth: int = 3) -> list[Check]:
    out = []
    for name in names:
        alg = algebra(name)
        d = alg.datum
        rm = RMatrix(alg)
        bad = []
        for beta in d.roots_up_to(lemma_depth):
            for i, k in d.letters:
                for label, ok in rm.six_identities(beta, i, k).items():
                    if not ok:
                        bad.append((beta, i, k, label))
        out.append(Check(f"six identities {name}", "canonical element identities", not bad, f"failures: {bad}"))
        for label, ok in rm.inverse_check(inverse_depth).items():
            out.append(Check(f"{label} = 1 {name}", "inverse of the quasi-R-matrix", ok))
        inter = rm.intertwining_check(intertwine_depth)
        out.append(Check(f"intertwining {name}", "C Delta = Phi(Delta') C", all(inter.values()), str(inter)))
        for label, ok in {**rm.p3_p4_check(intertwine_depth), **rm.p5_p6_check(intertwine_depth)}.items():
            out.append(Check(f"{label} {name}", "pre-triangular axioms", ok))
    return out


YBE_CASES = {"sl2": (1,), "osp12": (2,)}


def suite_ybe() -> list[Check]:
    out = []
    for name, hv in YBE_CASES.items():
        alg = algebra(name)
        rm = RMatrix(alg)
        V = build_irreducible(alg, weight(alg.datum, *hv), alg.depth)
        rep = ybe_check(rm, V, V, V)
        out.append(Check(f"YBE {name} ({rep.dim}x{rep.dim})", "Yang-Baxter equation", rep.ok,
                         f"{rep.residual_entries} nonzero residual entries / {rep.total_entries}"))
        op = r_operator(rm, V, V)
        out.append(Check(f"R invertible {name}", "R is invertible",
                         op.blockwise_invertible() and op.inverse_matches()))
        inter = all(op.intertwines(g) for _, g in alg.generators())
        out.append(Check(f"R intertwines {name}", "R Delta = Delta' R", inter))
    return out


SUITES = {
    "datum-axioms": suite_datum_axioms,
    "nondegeneracy": suite_nondegeneracy,
    "serre": suite_serre,
    "hopf": suite_hopf,
    "flip": suite_flip,
    "killing": suite_killing,
    "uv-iso": suite_uv_iso,
    "characters": suite_characters,
    "center": suite_center,
    "flambda": suite_flambda,
    "rmatrix": suite_rmatrix,
    "ybe": suite_ybe,
}
