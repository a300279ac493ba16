"""Canonical elements, the truncated quasi-R-matrix and the R operator.

Infinite sums over Q+ are kept as per-weight summands up to a height bound,
so every identity is checked one weight component at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import Algebra, AlgebraElement, TensorElement, _accumulate, key_degree
from .datum import Root
from .errors import DepthExceeded, DomainError
from .linalg import EXACT
from .modules import HighestWeightModule
from .scalars import ONE, ZERO, RationalFunction


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass
class CanonicalElement:
    beta: Root
    xs: list  # e-side pivot elements
    ys: list  # dual f-side elements
    gram_inv: list

    def tensor(self, alg: Algebra) -> TensorElement:
        total = TensorElement(alg, 2, {})
        for x, y in zip(self.xs, self.ys):
            total = total + TensorElement.pure(x, y)
        return total

    def duality_matrix(self, alg: Algebra) -> list:
        return [[alg.pair_borel(x, y) for y in self.ys] for x in self.xs]


@dataclass
class TruncatedQuasiR:
    depth: int
    summands: dict = field(default_factory=dict)

    def total(self, alg: Algebra, upto: int | None = None) -> TensorElement:
        out = TensorElement(alg, 2, {})
        for beta, t in self.summands.items():
            if upto is None or sum(beta) <= upto:
                out = out + t
        return out


class RMatrix:
    """Quasi-R-matrix data for one algebra, cached per weight."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self._canon: dict = {}
        self._c: dict = {}
        self._cp: dict = {}

    # canonical elements ------------------------------------------------------
    def dual_bases(self, beta: Root) -> CanonicalElement:
        got = self._canon.get(beta)
        if got is not None:
            return got
        alg = self.alg
        if sum(beta) > alg.reg.depth:
            raise DepthExceeded(f"weight {beta} beyond registry depth {alg.reg.depth}")
        lvl = alg.reg.level(beta)
        n = lvl.dim
        zr, zh = alg.zero_root, alg.zero_h
        xs = [AlgebraElement(alg, {(zr, 0, zh, beta, r): ONE}) for r in range(n)]
        ys = []
        for s in range(n):
            terms = {}
            for t in range(n):
                v = lvl.gram_inv[t][s]
                if v:
                    terms[(beta, t, zh, zr, 0)] = v
            ys.append(AlgebraElement(alg, terms))
        got = CanonicalElement(beta, xs, ys, lvl.gram_inv)
        self._canon[beta] = got
        return got

    def canonical(self, beta: Root) -> TensorElement:
        if any(b < 0 for b in beta):
            return TensorElement(self.alg, 2, {})
        return self.dual_bases(beta).tensor(self.alg)

    def _weight_factor(self, beta: Root) -> RationalFunction:
        d = self.alg.datum
        hb = d.h_beta(beta)
        return self.alg.qexp(d.coweight_form(hb, hb)) * d.theta_bicharacter(beta, beta)

    def c_summand(self, beta: Root) -> TensorElement:
        got = self._c.get(beta)
        if got is None:
            alg = self.alg
            k = TensorElement.pure(alg.K(beta, -1), alg.K(beta))
            got = (k * self.canonical(beta)).scale(self._weight_factor(beta))
            self._c[beta] = got
        return got

    def c_inverse_summand(self, beta: Root) -> TensorElement:
        got = self._cp.get(beta)
        if got is None:
            alg = self.alg
            k = TensorElement.pure(alg.one(), alg.K(beta))
            got = (k * self.antipode_first(self.canonical(beta))).scale(self._weight_factor(beta))
            self._cp[beta] = got
        return got

    def antipode_first(self, t: TensorElement) -> TensorElement:
        return t.apply(0, self.alg.antipode_key)

    def quasi_R(self, depth: int) -> TruncatedQuasiR:
        self._check(depth)
        return TruncatedQuasiR(depth, {b: self.c_summand(b) for b in self.alg.datum.roots_up_to(depth)})

    def quasi_R_inverse(self, depth: int) -> TruncatedQuasiR:
        self._check(depth)
        return TruncatedQuasiR(depth, {b: self.c_inverse_summand(b) for b in self.alg.datum.roots_up_to(depth)})

    def _check(self, depth: int) -> None:
        if depth > self.alg.reg.depth:
            raise DepthExceeded(f"depth {depth} exceeds registry depth {self.alg.reg.depth}")

    # the automorphism Phi ------------------------------------------------------
    def phi(self, t: TensorElement, i: int = 0, j: int = 1) -> TensorElement:
        """Phi on factors i < j: a (x) b -> a K_{deg b} (x) K_{deg a} b."""
        alg = self.alg
        out: dict = {}
        for ks, c in t.terms.items():
            da, db = key_degree(ks[i]), key_degree(ks[j])
            left = alg.multiply_keys(ks[i], _toral_key(alg, alg.kcow(db)))
            right = alg.multiply_keys(_toral_key(alg, alg.kcow(da)), ks[j])
            for (ka, ca), (kb, cb) in product(left.items(), right.items()):
                new = list(ks)
                new[i], new[j] = ka, kb
                _accumulate(out, tuple(new), c * ca * cb)
        return TensorElement(alg, t.n, out)

    def coproduct_op(self, a: AlgebraElement) -> TensorElement:
        """Delta' = P o Delta with the colored flip."""
        return self.alg.coproduct(a).permute([1, 0])

    # embeddings into triple tensors ---------------------------------------------
    def embed(self, t: TensorElement, slots: tuple[int, int]) -> TensorElement:
        one = _toral_key(self.alg, self.alg.zero_h)
        out: dict = {}
        for ks, c in t.terms.items():
            new = [one, one, one]
            new[slots[0]], new[slots[1]] = ks
            _accumulate(out, tuple(new), c)
        return TensorElement(self.alg, 3, out)

    # lemma identities ---------------------------------------------------------
    def _splits(self, beta):
        return [(g, _sub(beta, g)) for g in self.alg.datum.roots_up_to(sum(beta))
                if all(x <= y for x, y in zip(g, beta))]

    def identity_a(self, beta) -> bool:
        alg = self.alg
        total = TensorElement(alg, 2, {})
        for g, dl in self._splits(beta):
            k = TensorElement.pure(alg.K(dl), alg.one())
            total = total + self.canonical(g) * (k * self.antipode_first(self.canonical(dl)))
        return total == self._delta0(beta, 2)

    def identity_b(self, beta) -> bool:
        alg = self.alg
        total = TensorElement(alg, 2, {})
        for g, dl in self._splits(beta):
            k = TensorElement.pure(alg.K(g), alg.one())
            total = total + (k * self.antipode_first(self.canonical(g))) * self.canonical(dl)
        return total == self._delta0(beta, 2)

    def identity_c(self, beta, i: int, k: int) -> bool:
        alg = self.alg
        e = alg.e(i, k)
        ai = alg.datum.simple_root(i)
        big = self.canonical(_add(beta, ai))
        one_e = TensorElement.pure(alg.one(), e)
        lhs = (one_e * big - big * one_e).scale(alg.datum.theta[i][i])
        cb = self.canonical(beta)
        rhs = cb * TensorElement.pure(e, alg.K(ai, -1)) - TensorElement.pure(e, alg.K(ai)) * cb
        return lhs == rhs

    def identity_d(self, beta, i: int, k: int) -> bool:
        alg = self.alg
        f = alg.f(i, k)
        ai = alg.datum.simple_root(i)
        big = self.canonical(_add(beta, ai))
        f_one = TensorElement.pure(f, alg.one())
        lhs = (f_one * big - big * f_one).scale(alg.datum.theta[i][i])
        cb = self.canonical(beta)
        rhs = cb * TensorElement.pure(alg.K(ai), f) - TensorElement.pure(alg.K(ai, -1), f) * cb
        return lhs == rhs

    def identity_e(self, beta) -> bool:
        alg = self.alg
        d = alg.datum
        lhs = self.canonical(beta).apply(0, alg.coproduct_key)
        rhs = TensorElement(alg, 3, {})
        for g, dl in self._splits(beta):
            k = TensorElement.pure(alg.K(dl), alg.one(), alg.one())
            term = k * self.embed(self.canonical(g), (0, 2)) * self.embed(self.canonical(dl), (1, 2))
            rhs = rhs + term.scale(alg.qexp(-d.coweight_form(d.h_beta(g), d.h_beta(dl))))
        return _tensor_eq(lhs, rhs)

    def identity_f(self, beta) -> bool:
        alg = self.alg
        d = alg.datum
        lhs = self.canonical(beta).apply(1, alg.coproduct_key)
        rhs = TensorElement(alg, 3, {})
        for g, dl in self._splits(beta):
            k = TensorElement.pure(alg.one(), alg.one(), alg.K(dl, -1))
            term = k * self.embed(self.canonical(g), (0, 2)) * self.embed(self.canonical(dl), (0, 1))
            rhs = rhs + term.scale(alg.qexp(-d.coweight_form(d.h_beta(g), d.h_beta(dl))))
        return _tensor_eq(lhs, rhs)

    def six_identities(self, beta, i: int = 0, k: int = 1) -> dict:
        return {
            "a": self.identity_a(beta),
            "b": self.identity_b(beta),
            "c": self.identity_c(beta, i, k),
            "d": self.identity_d(beta, i, k),
            "e": self.identity_e(beta),
            "f": self.identity_f(beta),
        }

    def _delta0(self, beta, n: int) -> TensorElement:
        if any(beta):
            return TensorElement(self.alg, n, {})
        return TensorElement.pure(*([self.alg.one()] * n))

    # completed-product checks -----------------------------------------------------
    def inverse_check(self, depth: int) -> dict:
        """Components of CC' and C'C of first-factor height <= depth."""
        c = self.quasi_R(depth).total(self.alg)
        cp = self.quasi_R_inverse(depth).total(self.alg)
        one = TensorElement.pure(self.alg.one(), self.alg.one())
        res = {}
        for name, prod_ in (("CC'", _truncated_product(c, cp, 0, depth, 1)),
                            ("C'C", _truncated_product(cp, c, 0, depth, 1))):
            res[name] = _low_components(prod_, 0, depth, 1) == one
        return res

    def intertwining_check(self, depth: int) -> dict:
        """C Delta(g) = Phi(Delta'(g)) C on components of first-factor height <= depth."""
        alg = self.alg
        c = self.quasi_R(depth + 1).total(alg)
        res = {}
        for label, g in alg.generators():
            lhs = _truncated_product(c, alg.coproduct(g), 0, depth, 1)
            rhs = _truncated_product(self.phi(self.coproduct_op(g)), c, 0, depth, 1)
            res[label] = _low_components(lhs - rhs, 0, depth, 1).is_zero()
        return res

    def p3_p4_check(self, depth: int) -> dict:
        c = self.quasi_R(depth).total(self.alg)
        c12, c23 = self.embed(c, (0, 1)), self.embed(c, (1, 2))
        return {
            "P3": self.phi(self.phi(c12, 0, 2), 1, 2) == c12,
            "P4": self.phi(self.phi(c23, 0, 2), 0, 1) == c23,
        }

    def p5_p6_check(self, depth: int) -> dict:
        alg = self.alg
        c = self.quasi_R(depth).total(alg)
        c13 = self.embed(c, (0, 2))
        p5_l = _truncated_product(self.phi(c13, 1, 2), self.embed(c, (1, 2)), 2, depth, -1)
        p5_r = c.apply(0, alg.coproduct_key)
        p6_l = _truncated_product(self.phi(c13, 0, 1), self.embed(c, (0, 1)), 0, depth, 1)
        p6_r = c.apply(1, alg.coproduct_key)
        return {
            "P5": _low_components(p5_l - p5_r, 2, depth, -1).is_zero(),
            "P6": _low_components(p6_l - p6_r, 0, depth, 1).is_zero(),
        }


def _toral_key(alg: Algebra, h):
    return (alg.zero_root, 0, tuple(h), alg.zero_root, 0)


def _tensor_eq(a: TensorElement, b: TensorElement) -> bool:
    return (a - b).is_zero()


def _truncated_product(a: TensorElement, b: TensorElement, pos: int, depth: int, sign: int) -> TensorElement:
    """a*b keeping only pairs of components whose factor-``pos`` degrees add
    up to sign*beta with ht(beta) <= depth."""
    out = TensorElement(a.alg, a.n, {})
    pa = a.degree_components(pos)
    pb = b.degree_components(pos)
    for da, ta in pa.items():
        for db, tb in pb.items():
            if (sum(da) + sum(db)) * sign <= depth:
                out = out + ta * tb
    return out


def _low_components(t: TensorElement, pos: int, depth: int, sign: int) -> TensorElement:
    """Terms whose factor ``pos`` has degree sign*beta with ht(beta) <= depth."""
    keep = {}
    for ks, c in t.terms.items():
        deg = key_degree(ks[pos])
        if sum(deg) * sign <= depth:
            keep[ks] = c
    return TensorElement(t.alg, t.n, keep)


# ---------------------------------------------------------------------------
# operators on tensor products of modules


class TensorModule:
    """V_1 (x) ... (x) V_n with a basis of tuples ((beta_1, j_1), ...)."""

    def __init__(self, modules: list[HighestWeightModule]):
        self.modules = modules
        self.alg = modules[0].alg
        per = [[(b, j) for b in m.weights() for j in range(m.dim(b))] for m in modules]
        self.basis = list(product(*per))
        self.index = {b: n for n, b in enumerate(self.basis)}
        self._act: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight(self, pos: int, beta) -> tuple:
        return self.alg.datum.weight_sub(self.modules[pos].lam, beta)

    def act_key(self, pos: int, key, beta, j) -> dict:
        """A single triple acting on a basis vector of factor ``pos``."""
        memo = (pos, key, beta, j)
        got = self._act.get(memo)
        if got is not None:
            return got
        m = self.modules[pos]
        unit = [ONE if t == j else ZERO for t in range(m.dim(beta))]
        res = m.act(AlgebraElement(self.alg, {key: ONE}), beta, unit)
        out = {}
        for g, vec in res.items():
            for t, v in enumerate(vec):
                if v:
                    out[(g, t)] = v
        self._act[memo] = out
        return out

    def apply_tensor(self, t: TensorElement, vec: dict) -> dict:
        """Act by a tensor of algebra elements with the Koszul sign
        theta(deg a_i, deg v_1 + ... + deg v_{i-1})."""
        theta = self.alg.theta
        out: dict = {}
        for b, cv in vec.items():
            for ks, ck in t.terms.items():
                sign = 1
                acc = self.alg.zero_root
                for i, k in enumerate(ks):
                    if i:
                        sign *= theta(key_degree(k), acc)
                    acc = _sub(acc, b[i][0])
                results = [self.act_key(i, k, b[i][0], b[i][1]) for i, k in enumerate(ks)]
                if not all(results):
                    continue
                base = cv * ck * sign
                for combo in product(*(r.items() for r in results)):
                    c = base
                    for _, v in combo:
                        c = c * v
                    _accumulate(out, tuple(x for x, _ in combo), c)
        return out

    def z_scale(self, b, i: int, j: int, power: int) -> RationalFunction:
        d = self.alg.datum
        return self.alg.qexp(power * d.weight_form(self.weight(i, b[i][0]), self.weight(j, b[j][0])))

    def matrix(self, fn) -> list:
        n = self.dim
        mat = [[ZERO] * n for _ in range(n)]
        for col, b in enumerate(self.basis):
            for tgt, v in fn({b: ONE}).items():
                mat[self.index[tgt]][col] = v
        return mat


def module_depth(module: HighestWeightModule) -> int:
    return max(sum(b) for b in module.weights())


class ROperator:
    """R = Z^{-1} C on tensor products of exhausted modules."""

    def __init__(self, rm: RMatrix, modules: list[HighestWeightModule]):
        for m in modules:
            if not m.is_exhausted():
                raise DomainError("R acts only on modules exhausted within the truncation")
        self.rm = rm
        self.tm = TensorModule(modules)
        depth = max(module_depth(m) for m in modules)
        if depth > rm.alg.reg.depth:
            raise DepthExceeded(f"modules need depth {depth}, registry has {rm.alg.reg.depth}")
        self.c = rm.quasi_R(depth).total(rm.alg)
        self.cp = rm.quasi_R_inverse(depth).total(rm.alg)

    def _pair_tensor(self, t: TensorElement, slots: tuple[int, int]) -> TensorElement:
        if self.tm.modules and len(self.tm.modules) == 2:
            return t
        return self.rm.embed(t, slots)

    def apply_r(self, vec: dict, slots=(0, 1)) -> dict:
        i, j = slots
        mid = self.tm.apply_tensor(self._pair_tensor(self.c, slots), vec)
        return {b: c * self.tm.z_scale(b, i, j, -1) for b, c in mid.items()}

    def apply_r_inverse(self, vec: dict, slots=(0, 1)) -> dict:
        i, j = slots
        scaled = {b: c * self.tm.z_scale(b, i, j, 1) for b, c in vec.items()}
        return self.tm.apply_tensor(self._pair_tensor(self.cp, slots), scaled)

    def matrix(self, slots=(0, 1)) -> list:
        return self.tm.matrix(lambda v: self.apply_r(v, slots))

    def blocks(self) -> dict:
        """R restricted to each total-weight block, as (basis, matrix)."""
        groups: dict = {}
        for b in self.tm.basis:
            tot = tuple(sum(x) for x in zip(*(p[0] for p in b)))
            groups.setdefault(tot, []).append(b)
        out = {}
        full = self.matrix()
        for tot, bs in sorted(groups.items()):
            idx = [self.tm.index[b] for b in bs]
            out[tot] = (bs, [[full[r][c] for c in idx] for r in idx])
        return out

    def blockwise_invertible(self) -> bool:
        return all(EXACT.det(m) != 0 for _, (_, m) in self.blocks().items())

    def inverse_matches(self) -> bool:
        n = self.tm.dim
        for b in self.tm.basis:
            back = self.apply_r_inverse(self.apply_r({b: ONE}))
            if {k: v for k, v in back.items() if v} != {b: ONE}:
                return False
        return n > 0

    def intertwines(self, a: AlgebraElement) -> bool:
        """R Delta(a) = Delta'(a) R on V (x) W."""
        tm = self.tm
        da = self.rm.alg.coproduct(a)
        dpa = self.rm.coproduct_op(a)
        for b in tm.basis:
            lhs = self.apply_r(tm.apply_tensor(da, {b: ONE}))
            rhs = tm.apply_tensor(dpa, self.apply_r({b: ONE}))
            if _clean(lhs) != _clean(rhs):
                return False
        return True


def _clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c}


def r_operator(rm: RMatrix, V: HighestWeightModule, W: HighestWeightModule) -> ROperator:
    return ROperator(rm, [V, W])


@dataclass
class YBEReport:
    dim: int
    residual_entries: int
    total_entries: int

    @property
    def ok(self) -> bool:
        return self.residual_entries == 0


def ybe_check(rm: RMatrix, V1: HighestWeightModule, V2: HighestWeightModule,
              V3: HighestWeightModule) -> YBEReport:
    """Compare R12 R13 R23 with R23 R13 R12 entry by entry."""
    op = ROperator(rm, [V1, V2, V3])
    tm = op.tm

    def chain(order, v):
        for slots in reversed(order):
            v = op.apply_r(v, slots)
        return _clean(v)

    left = ((0, 1), (0, 2), (1, 2))
    right = ((1, 2), (0, 2), (0, 1))
    bad = 0
    for b in tm.basis:
        lv = chain(left, {b: ONE})
        rv = chain(right, {b: ONE})
        for k in set(lv) | set(rv):
            if lv.get(k, ZERO) != rv.get(k, ZERO):
                bad += 1
    return YBEReport(tm.dim, bad, tm.dim * tm.dim)
