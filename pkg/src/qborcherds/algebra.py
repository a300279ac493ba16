"""The full algebra U in triangular normal form, with its Hopf structure.

An element is a finite combination of triples ``y q^h x`` where ``y`` is an
f-pivot word of weight gamma, ``h`` a coweight, and ``x`` an e-pivot word of
weight beta. A triple is keyed by ``(gamma, y_index, h, beta, x_index)`` and its
Q-degree is beta - gamma.

Products are brought to normal form with the commutation relation between
e- and f-letters applied to free words, followed by projection of both halves
onto the registry bases.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .datum import CartanDatum, Coweight, Root
from .errors import DepthExceeded, DomainError, ParseError
from .halves import DatumScalars, Registry, Word, format_word, word_weight
from .scalars import ONE, ZERO, RationalFunction, u_power

Key = tuple  # (gamma, y_index, h, beta, x_index)


def _add_root(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_root(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _accumulate(acc: dict, key, coef) -> None:
    if not coef:
        return
    cur = acc.get(key)
    if cur is None:
        acc[key] = coef
    else:
        s = cur + coef
        if s:
            acc[key] = s
        else:
            del acc[key]


class Algebra:
    """Shared context: datum, registry, and the caches used by products."""

    def __init__(self, datum: CartanDatum, depth: int = 5, registry: Registry | None = None):
        self.datum = datum
        self.depth = depth
        self.reg = registry if registry is not None else Registry(datum, depth)
        self.sc = DatumScalars(datum)
        self.D = datum.root_order
        self._straighten: dict = {}
        self._mul_cache: dict = {}
        self._split_e: dict = {}
        self._split_f: dict = {}
        self._antipode_cache: dict = {}
        self.zero_root = datum.zero_root()
        self.zero_h = datum.zero_coweight()

    # scalars ---------------------------------------------------------------
    def qexp(self, e) -> RationalFunction:
        """q**e as an element of Q(u)."""
        k = Fraction(e) * self.D
        if k.denominator != 1:
            raise DomainError(f"q^{e} is not an integral power of u")
        return u_power(int(k))

    def theta(self, a: Root, b: Root) -> int:
        return self.datum.theta_bicharacter(a, b)

    def kcow(self, beta: Root, sign: int = 1) -> Coweight:
        return self.datum.k_coweight(beta, sign)

    def root_on(self, beta: Root, h: Coweight) -> int:
        return self.datum.root_on_coweight(beta, h)

    # construction ----------------------------------------------------------
    def element(self, terms: Mapping | None = None) -> "AlgebraElement":
        return AlgebraElement(self, dict(terms or {}))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return self.toral(self.zero_h)

    def scalar(self, c) -> "AlgebraElement":
        c = RationalFunction.coerce(c)
        if not c:
            return self.zero()
        return AlgebraElement(self, {(self.zero_root, 0, self.zero_h, self.zero_root, 0): c})

    def toral(self, h: Coweight, coef=ONE) -> "AlgebraElement":
        h = tuple(int(x) for x in h)
        return AlgebraElement(self, {(self.zero_root, 0, h, self.zero_root, 0): RationalFunction.coerce(coef)})

    def K(self, beta: Root, sign: int = 1) -> "AlgebraElement":
        return self.toral(self.kcow(beta, sign))

    def e(self, i: int, k: int = 1) -> "AlgebraElement":
        return self.from_words((), self.zero_h, ((i, k),))

    def f(self, i: int, k: int = 1) -> "AlgebraElement":
        return self.from_words(((i, k),), self.zero_h, ())

    def generators(self) -> list[tuple[str, "AlgebraElement"]]:
        """Algebra generators e_{i,k}, f_{i,k}, q^{h_i}, q^{d_i}, labelled."""
        d = self.datum
        out = []
        for i, k in d.letters:
            out.append((f"e[{d.index[i]},{k}]", self.e(i, k)))
            out.append((f"f[{d.index[i]},{k}]", self.f(i, k)))
        for i in range(d.rank):
            out.append((f"q^h{d.index[i]}", self.toral(d.h_basis(i))))
            out.append((f"q^d{d.index[i]}", self.toral(d.d_basis(i))))
        return out

    def from_words(self, fw: Word, h: Coweight, ew: Word, coef=ONE) -> "AlgebraElement":
        out: dict = {}
        self._add_words(out, tuple(fw), tuple(h), tuple(ew), RationalFunction.coerce(coef))
        return AlgebraElement(self, out)

    def _add_words(self, acc: dict, fw: Word, h: Coweight, ew: Word, coef) -> None:
        if not coef:
            return
        gamma = word_weight(self.datum, fw)
        beta = word_weight(self.datum, ew)
        try:
            yv = self.reg.project_f(fw)
            xv = self.reg.project_e(ew)
        except DepthExceeded:
            raise
        for t, a in enumerate(yv):
            if not a:
                continue
            ca = coef * a
            for r, b in enumerate(xv):
                if b:
                    _accumulate(acc, (gamma, t, h, beta, r), ca * b)

    def words_of(self, key: Key) -> tuple[Word, Coweight, Word]:
        gamma, t, h, beta, r = key
        return self.reg.f_basis(gamma)[t], h, self.reg.e_basis(beta)[r]

    # straightening ---------------------------------------------------------
    def straighten(self, x: Word, y: Word) -> dict:
        """x*y for an e-word x and an f-word y, as {(f-word, h, e-word): coef}
        over free words."""
        key = (x, y)
        got = self._straighten.get(key)
        if got is not None:
            return got
        if not x or not y:
            res = {(y, self.zero_h, x): ONE}
            self._straighten[key] = res
            return res
        d = self.datum
        a = x[-1]
        xa = d.simple_root(a[0])
        rest = x[:-1]
        # a * y
        first: dict = {}
        _accumulate(first, (y, self.zero_h, (a,)), RationalFunction.from_int(self.theta(xa, word_weight(d, y))))
        inv_xi = self.sc.inv_xi[a[0]]
        for p, letter in enumerate(y):
            if letter != a:
                continue
            pre, post = y[:p], y[p + 1:]
            sign = self.theta(xa, word_weight(d, pre))
            gpp = word_weight(d, post)
            ex = d.root_form(xa, gpp)
            fw = pre + post
            _accumulate(first, (fw, self.kcow(xa, 1), ()), inv_xi * self.qexp(-ex) * sign)
            _accumulate(first, (fw, self.kcow(xa, -1), ()), inv_xi * self.qexp(ex) * (-sign))
        if not rest:
            self._straighten[key] = first
            return first
        res: dict = {}
        for (fw, h, ew), c in first.items():
            for (fw2, h2, ew2), c2 in self.straighten(rest, fw).items():
                shift = self.qexp(-self.root_on(word_weight(d, ew2), h))
                _accumulate(res, (fw2, _add_root(h2, h), ew2 + ew), c * c2 * shift)
        self._straighten[key] = res
        return res

    # products --------------------------------------------------------------
    def multiply_keys(self, k1: Key, k2: Key) -> dict:
        ck = (k1, k2)
        got = self._mul_cache.get(ck)
        if got is not None:
            return got
        g1, t1, h1, b1, r1 = k1
        g2, t2, h2, b2, r2 = k2
        y1 = self.reg.f_basis(g1)[t1]
        x1 = self.reg.e_basis(b1)[r1]
        y2 = self.reg.f_basis(g2)[t2]
        x2 = self.reg.e_basis(b2)[r2]
        out: dict = {}
        d = self.datum
        for (fw, h, ew), c in self.straighten(x1, y2).items():
            gp = word_weight(d, fw)
            bp = word_weight(d, ew)
            shift = self.qexp(-self.root_on(gp, h1) - self.root_on(bp, h2))
            htot = tuple(a + b + e for a, b, e in zip(h1, h, h2))
            self._add_words(out, y1 + fw, htot, ew + x2, c * shift)
        self._mul_cache[ck] = out
        return out

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        out: dict = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                c = c1 * c2
                for k, v in self.multiply_keys(k1, k2).items():
                    _accumulate(out, k, c * v)
        return AlgebraElement(self, out)

    # coproduct -------------------------------------------------------------
    def split_e(self, word: Word) -> list:
        """Delta of an e-word as (coef, left, right) meaning coef*left K_{wt right} (x) right."""
        got = self._split_e.get(word)
        if got is not None:
            return got
        d = self.datum
        n = len(word)
        roots = [d.simple_root(i) for i, _ in word]
        out = []
        for mask in range(1 << n):
            sign = 1
            ex = 0
            for j in range(n):
                if mask >> j & 1:
                    continue
                for k in range(j + 1, n):
                    if mask >> k & 1:
                        sign *= self.theta(roots[j], roots[k])
                        ex += d.root_form(roots[j], roots[k])
            left = tuple(word[p] for p in range(n) if mask >> p & 1)
            right = tuple(word[p] for p in range(n) if not mask >> p & 1)
            out.append((self.qexp(ex) * sign, left, right))
        self._split_e[word] = out
        return out

    def split_f(self, word: Word) -> list:
        """Delta of an f-word as (coef, left, right) meaning coef*left (x) right K_{-wt left}."""
        got = self._split_f.get(word)
        if got is not None:
            return got
        d = self.datum
        n = len(word)
        roots = [d.simple_root(i) for i, _ in word]
        out = []
        for mask in range(1 << n):
            sign = 1
            ex = 0
            for j in range(n):
                for k in range(j + 1, n):
                    jl = mask >> j & 1
                    kl = mask >> k & 1
                    if not jl and kl:
                        sign *= self.theta(roots[j], roots[k])
                    if jl and not kl:
                        ex += d.root_form(roots[j], roots[k])
            left = tuple(word[p] for p in range(n) if mask >> p & 1)
            right = tuple(word[p] for p in range(n) if not mask >> p & 1)
            out.append((self.qexp(ex) * sign, left, right))
        self._split_f[word] = out
        return out

    def coproduct_key(self, key: Key) -> dict:
        fy, h, ex = self.words_of(key)
        d = self.datum
        out: dict = {}
        for cy, yl, yr in self.split_f(fy):
            gl = word_weight(d, yl)
            gr = word_weight(d, yr)
            for cx, xl, xr in self.split_e(ex):
                bl = word_weight(d, xl)
                br = word_weight(d, xr)
                coef = cy * cx * self.theta(_neg(gr), bl) * self.qexp(-d.root_form(bl, br))
                left: dict = {}
                right: dict = {}
                self._add_words(left, yl, _add_root(h, self.kcow(br)), xl, ONE)
                self._add_words(right, yr, _sub_root(h, self.kcow(gl)), xr, ONE)
                for k1, c1 in left.items():
                    for k2, c2 in right.items():
                        _accumulate(out, (k1, k2), coef * c1 * c2)
        return out

    def coproduct(self, a: "AlgebraElement") -> "TensorElement":
        out: dict = {}
        for k, c in a.terms.items():
            for kk, v in self.coproduct_key(k).items():
                _accumulate(out, kk, c * v)
        return TensorElement(self, 2, out)

    def counit(self, a: "AlgebraElement") -> RationalFunction:
        acc = ZERO
        for (g, t, h, b, r), c in a.terms.items():
            if not any(g) and not any(b):
                acc = acc + c
        return acc

    # antipode --------------------------------------------------------------
    def _word_antipode_data(self, word: Word):
        d = self.datum
        roots = [d.simple_root(i) for i, _ in word]
        sign = (-1) ** len(word)
        ex = 0
        for j in range(len(word)):
            for k in range(j + 1, len(word)):
                sign *= self.theta(roots[j], roots[k])
                ex += d.root_form(roots[j], roots[k])
        return sign, ex

    def antipode_e_word(self, word: Word) -> "AlgebraElement":
        """S(x) = c K_{-beta} reversed(x)."""
        sign, ex = self._word_antipode_data(word)
        beta = word_weight(self.datum, word)
        return self.from_words((), self.kcow(beta, -1), tuple(reversed(word)), self.qexp(ex) * sign)

    def antipode_f_word(self, word: Word) -> "AlgebraElement":
        """S(y) = c reversed(y) K_gamma."""
        sign, ex = self._word_antipode_data(word)
        gamma = word_weight(self.datum, word)
        return self.from_words(tuple(reversed(word)), self.kcow(gamma, 1), (), self.qexp(-ex) * sign)

    def antipode_key(self, key: Key) -> dict:
        got = self._antipode_cache.get(key)
        if got is not None:
            return got
        fy, h, ex = self.words_of(key)
        gamma, beta = key[0], key[3]
        sx = self.antipode_e_word(ex)
        sy = self.antipode_f_word(fy)
        mid = self.toral(tuple(-v for v in h))
        res = (sx * mid * sy).scale(self.theta(gamma, beta))
        self._antipode_cache[key] = res.terms
        return res.terms

    def antipode(self, a: "AlgebraElement") -> "AlgebraElement":
        out: dict = {}
        for k, c in a.terms.items():
            for kk, v in self.antipode_key(k).items():
                _accumulate(out, kk, c * v)
        return AlgebraElement(self, out)

    # adjoint actions -------------------------------------------------------
    def ad(self, u: "AlgebraElement", v: "AlgebraElement") -> "AlgebraElement":
        """ad(u).v = sum theta(u_(1), v) u_(0) v S(u_(1))."""
        total = self.zero()
        for vdeg, vpart in v.homogeneous_parts().items():
            for (k0, k1), c in self.coproduct(u).terms.items():
                s = self.theta(key_degree(k1), vdeg)
                u0 = AlgebraElement(self, {k0: c})
                u1 = AlgebraElement(self, {k1: ONE})
                total = total + (u0 * vpart * self.antipode(u1)).scale(s)
        return total

    def adt(self, v: "AlgebraElement", u: "AlgebraElement") -> "AlgebraElement":
        """v.adt(u) = sum theta(v, u_(0)) S(u_(0)) v u_(1)."""
        total = self.zero()
        for vdeg, vpart in v.homogeneous_parts().items():
            for (k0, k1), c in self.coproduct(u).terms.items():
                s = self.theta(vdeg, key_degree(k0))
                u0 = AlgebraElement(self, {k0: c})
                u1 = AlgebraElement(self, {k1: ONE})
                total = total + (self.antipode(u0) * vpart * u1).scale(s)
        return total

    # borel pairing ---------------------------------------------------------
    def pair_borel(self, a: "AlgebraElement", b: "AlgebraElement") -> RationalFunction:
        """The pairing of U>=0 with U<=0, extended from (x q^h | y q^h') = q^{-(h|h')}(x|y)."""
        acc = ZERO
        d = self.datum
        for (g1, t1, h1, b1, r1), c1 in a.terms.items():
            if any(g1):
                raise DomainError("left argument of the pairing must lie in U>=0")
            for (g2, t2, h2, b2, r2), c2 in b.terms.items():
                if any(b2):
                    raise DomainError("right argument of the pairing must lie in U<=0")
                if b1 != g2:
                    continue
                # q^{h1} x = q^{beta(h1)} x q^{h1}
                val = self.reg.level(b1).gram[r1][t2]
                if not val:
                    continue
                ex = self.root_on(b1, h1) - d.coweight_form(h1, h2)
                acc = acc + c1 * c2 * val * self.qexp(ex)
        return acc

    # parsing and rendering -------------------------------------------------
    def parse(self, text: str) -> "AlgebraElement":
        return _ElementParser(self, text).parse()

    def format_key(self, key: Key) -> str:
        fy, h, ex = self.words_of(key)
        parts = []
        if fy:
            parts.append(format_word(self.datum, fy, "f"))
        if any(h):
            parts.append(format_coweight(self.datum, h))
        if ex:
            parts.append(format_word(self.datum, ex, "e"))
        return "*".join(parts) if parts else "1"


def _neg(a):
    return tuple(-x for x in a)


def key_degree(key: Key) -> Root:
    return _sub_root(key[3], key[0])


def format_coweight(datum: CartanDatum, h: Coweight) -> str:
    n = datum.rank
    hs = ",".join(str(v) for v in h[:n])
    ds = ",".join(str(v) for v in h[n:])
    return f"q^{{h:{hs};d:{ds}}}"


class AlgebraElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return AlgebraElement(self.alg, out)

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = RationalFunction.coerce(c)
        if not c:
            return AlgebraElement(self.alg, {})
        return AlgebraElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for k, c in self.terms.items():
            parts.setdefault(key_degree(k), {})[k] = c
        return {deg: AlgebraElement(self.alg, t) for deg, t in sorted(parts.items())}

    def degree(self) -> Root:
        degs = {key_degree(k) for k in self.terms}
        if len(degs) > 1:
            raise DomainError("element is not homogeneous")
        return degs.pop() if degs else self.alg.zero_root

    def toral_part(self) -> dict:
        """{h: coef} for the triples with empty words."""
        return {k[2]: c for k, c in self.terms.items() if not any(k[0]) and not any(k[3])}

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        D = self.alg.D
        pieces = []
        for k in sorted(self.terms, key=_key_order):
            c = self.terms[k]
            mono = self.alg.format_key(k)
            cs = c.to_string(D)
            if mono == "1":
                pieces.append(f"({cs})")
            elif cs == "1":
                pieces.append(mono)
            else:
                pieces.append(f"({cs})*{mono}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"AlgebraElement({self.to_string()})"

    __str__ = to_string


def _key_order(k):
    return (sum(k[0]) + sum(k[3]), k)


class TensorElement:
    """A combination of n-fold tensors of normal-form triples."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: Algebra, n: int, terms: dict):
        self.alg = alg
        self.n = n
        self.terms = terms

    @classmethod
    def pure(cls, *factors: AlgebraElement) -> "TensorElement":
        alg = factors[0].alg
        out: dict = {}
        for combo in product(*(f.terms.items() for f in factors)):
            c = ONE
            for _, v in combo:
                c = c * v
            _accumulate(out, tuple(k for k, _ in combo), c)
        return cls(alg, len(factors), out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return TensorElement(self.alg, self.n, out)

    def __neg__(self):
        return TensorElement(self.alg, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = RationalFunction.coerce(c)
        if not c:
            return TensorElement(self.alg, self.n, {})
        return TensorElement(self.alg, self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        alg = self.alg
        out: dict = {}
        for ks1, c1 in self.terms.items():
            degs1 = [key_degree(k) for k in ks1]
            for ks2, c2 in other.terms.items():
                sign = 1
                for i in range(self.n):
                    for j in range(i):
                        sign *= alg.theta(degs1[i], key_degree(ks2[j]))
                prods = [alg.multiply_keys(a, b) for a, b in zip(ks1, ks2)]
                base = c1 * c2 * sign
                for combo in product(*(p.items() for p in prods)):
                    c = base
                    for _, v in combo:
                        c = c * v
                    _accumulate(out, tuple(k for k, _ in combo), c)
        return TensorElement(alg, self.n, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, pos: int, fn) -> "TensorElement":
        """Apply a linear map on factor ``pos``; ``fn(key)`` returns a dict
        {key: coef} (stays n-fold) or {tuple of keys: coef} (expands)."""
        out: dict = {}
        grow = 0
        for ks, c in self.terms.items():
            res = fn(ks[pos])
            for kk, v in res.items():
                if isinstance(kk[0], tuple) and isinstance(kk[0][0], tuple):
                    newks = ks[:pos] + kk + ks[pos + 1:]
                    grow = len(kk) - 1
                else:
                    newks = ks[:pos] + (kk,) + ks[pos + 1:]
                _accumulate(out, newks, c * v)
        n = self.n + grow if out else self.n
        return TensorElement(self.alg, n, out)

    def contract(self, pos: int, fn) -> "TensorElement":
        """Apply a scalar-valued function on factor ``pos`` and drop that factor."""
        out: dict = {}
        for ks, c in self.terms.items():
            v = fn(ks[pos])
            if v:
                _accumulate(out, ks[:pos] + ks[pos + 1:], c * v)
        return TensorElement(self.alg, self.n - 1, out)

    def multiply_out(self) -> AlgebraElement:
        """m(a (x) b (x) ...) = a b ..."""
        alg = self.alg
        total = alg.zero()
        for ks, c in self.terms.items():
            el = AlgebraElement(alg, {ks[0]: c})
            for k in ks[1:]:
                el = el * AlgebraElement(alg, {k: ONE})
            total = total + el
        return total

    def permute(self, order: Iterable[int]) -> "TensorElement":
        """Reorder factors with the colored sign: new factor t is old factor order[t]."""
        order = list(order)
        alg = self.alg
        out: dict = {}
        for ks, c in self.terms.items():
            degs = [key_degree(k) for k in ks]
            sign = 1
            for a in range(len(order)):
                for b in range(a + 1, len(order)):
                    if order[a] > order[b]:
                        sign *= alg.theta(degs[order[a]], degs[order[b]])
            _accumulate(out, tuple(ks[o] for o in order), c * sign)
        return TensorElement(alg, self.n, out)

    def degree_components(self, pos: int = 0) -> dict:
        """Group terms by the Q-degree of factor ``pos``."""
        parts: dict = {}
        for ks, c in self.terms.items():
            parts.setdefault(key_degree(ks[pos]), {})[ks] = c
        return {d: TensorElement(self.alg, self.n, t) for d, t in parts.items()}

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for ks in sorted(self.terms):
            c = self.terms[ks].to_string(self.alg.D)
            body = " (x) ".join(self.alg.format_key(k) for k in ks)
            pieces.append(f"({c})*[{body}]")
        return " + ".join(pieces)

    def __repr__(self):
        return f"TensorElement({self.to_string()})"


# ---------------------------------------------------------------------------
# parser for the element grammar


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<letter>[ef])\[\s*(?P<li>[^,\]\s]+)\s*,\s*(?P<lk>\d+)\s*\]"
    r"|(?P<qcow>q\^\{(?P<cow>[^}]*)\})"
    r"|(?P<qpow>q\^(?:(?P<qe>-?\d+)|\((?P<qf>-?\d+(?:/\d+)?)\)))"
    r"|(?P<q>q)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*/()])"
    r")"
)


class _ElementParser:
    def __init__(self, alg: Algebra, text: str):
        self.alg = alg
        self.text = text
        self.tokens = self._lex(text)
        self.pos = 0

    def _lex(self, text: str):
        out = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            pos = m.end()
            if m.group("letter"):
                out.append(("letter", (m.group("letter"), m.group("li"), int(m.group("lk")))))
            elif m.group("qcow"):
                out.append(("cow", m.group("cow")))
            elif m.group("qpow"):
                out.append(("qpow", Fraction(m.group("qe") or m.group("qf"))))
            elif m.group("q"):
                out.append(("qpow", 1))
            elif m.group("num"):
                out.append(("num", Fraction(m.group("num"))))
            else:
                out.append(("op", m.group("op")))
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse(self) -> AlgebraElement:
        if not self.tokens:
            raise ParseError("empty element expression")
        el = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return el

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        el = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            el = el + t if op == "+" else el - t
        return el

    def term(self):
        el = self.factor()
        while True:
            nxt = self.peek()
            if nxt == ("op", "*"):
                self.take()
                el = el * self.factor()
            elif nxt == ("op", "/"):
                self.take()
                el = el.scale(self._scalar_of(self.factor()).inverse())
            elif nxt[0] in ("letter", "cow", "qpow", "num") or nxt == ("op", "("):
                el = el * self.factor()
            else:
                return el

    def factor(self):
        kind, val = self.take()
        alg = self.alg
        if kind == "letter":
            side, name, k = val
            i = alg.datum.index_position(name)
            if not 1 <= k <= alg.datum.m[i]:
                raise ParseError(f"copy {k} out of range for index {name}")
            return alg.e(i, k) if side == "e" else alg.f(i, k)
        if kind == "cow":
            return alg.toral(_parse_coweight(alg.datum, val))
        if kind == "qpow":
            e = alg.D * val
            if e.denominator != 1:
                raise ParseError(f"q^{val} is not a power of the root u")
            return alg.scalar(u_power(int(e)))
        if kind == "num":
            return alg.scalar(val)
        if (kind, val) == ("op", "("):
            el = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return el
        if (kind, val) == ("op", "-"):
            return self.factor().scale(-1)
        raise ParseError(f"unexpected token {val!r}")


    def _scalar_of(self, el: AlgebraElement) -> RationalFunction:
        unit = (self.alg.zero_root, 0, self.alg.zero_h, self.alg.zero_root, 0)
        if set(el.terms) - {unit}:
            raise ParseError("can only divide by scalars")
        c = el.terms.get(unit)
        if not c:
            raise ParseError("division by zero")
        return c


def _parse_coweight(datum: CartanDatum, text: str) -> Coweight:
    n = datum.rank
    hv = [0] * n
    dv = [0] * n
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ParseError(f"bad coweight component {part!r}")
        tag, vals = part.split(":", 1)
        nums = [v.strip() for v in vals.split(",") if v.strip()]
        if len(nums) != n:
            raise ParseError(f"coweight {tag} needs {n} entries")
        try:
            ints = [int(v) for v in nums]
        except ValueError:
            raise ParseError(f"bad coweight entries {vals!r}") from None
        if tag.strip() == "h":
            hv = ints
        elif tag.strip() == "d":
            dv = ints
        else:
            raise ParseError(f"unknown coweight tag {tag!r}")
    return tuple(hv + dv)
