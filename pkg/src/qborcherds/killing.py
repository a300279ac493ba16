"""The Killing form on U.

The form is defined on two auxiliary bases of U: a "left" basis of elements
x q^h S(y) and a "right" basis of elements y q^h S(x), with x, y running over
the registry pivots. Right-basis coordinates come from a single change of
basis per weight, because y q^h S(x) is already in normal order. Left-basis
elements need straightening; their leading part (top total height) is a
scalar multiple of a normal-form triple block, so coordinates are found by
peeling off the top layer repeatedly.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraElement, _accumulate
from .linalg import EXACT
from .scalars import ZERO, RationalFunction


class KillingForm:
    def __init__(self, alg: Algebra):
        self.alg = alg
        self._rev_e: dict = {}
        self._rev_f: dict = {}

    # reversal matrices ----------------------------------------------------
    def _reversal(self, beta, side: str):
        cache = self._rev_e if side == "e" else self._rev_f
        got = cache.get(beta)
        if got is not None:
            return got
        reg = self.alg.reg
        if side == "e":
            rows = [reg.project_e(tuple(reversed(w))) for w in reg.e_basis(beta)]
        else:
            rows = [reg.project_f(tuple(reversed(w))) for w in reg.f_basis(beta)]
        inv = EXACT.inverse(rows) if rows else []
        cache[beta] = (rows, inv)
        return rows, inv

    def _antipode_scalar(self, beta, side: str) -> RationalFunction:
        """c with S(x) = c K_{-beta} rev(x) (e-side) or S(y) = c rev(y) K_gamma (f-side)."""
        alg = self.alg
        word = tuple((i, 1) for i in range(len(beta)) for _ in range(beta[i]))
        sign, ex = alg._word_antipode_data(word)
        return alg.qexp(ex if side == "e" else -ex) * sign

    # coordinates ----------------------------------------------------------
    def right_coords(self, b: AlgebraElement) -> dict:
        """{(gamma, t, h, beta, r): c} with b = sum c * y_t q^h S(x_r)."""
        alg = self.alg
        out: dict = {}
        for (gamma, t, h, beta, s), c in b.terms.items():
            _, inv = self._reversal(beta, "e")
            scal = self._antipode_scalar(beta, "e").inverse()
            hh = tuple(a + k for a, k in zip(h, alg.kcow(beta)))
            for r, v in enumerate(inv[s]):
                if v:
                    _accumulate(out, (gamma, t, hh, beta, r), c * v * scal)
        return out

    def left_element(self, beta, r, h, gamma, s) -> AlgebraElement:
        """x_r q^h S(y_s) in normal form."""
        alg = self.alg
        x = AlgebraElement(alg, {(alg.zero_root, 0, h, beta, r): alg.qexp(-alg.root_on(beta, h))})
        y = alg.reg.f_basis(gamma)[s]
        return x * alg.antipode_f_word(y)

    def left_coords(self, a: AlgebraElement) -> dict:
        """{(beta, r, h, gamma, s): c} with a = sum c * x_r q^h S(y_s)."""
        alg = self.alg
        d = alg.datum
        rem = dict(a.terms)
        out: dict = {}
        while rem:
            top = max(sum(k[0]) + sum(k[3]) for k in rem)
            groups: dict = {}
            for k, c in rem.items():
                if sum(k[0]) + sum(k[3]) == top:
                    gamma, t, hh, beta, r = k
                    groups.setdefault((gamma, hh, beta, r), {})[t] = c
            for (gamma, hh, beta, r), vec in sorted(groups.items()):
                h = tuple(a - k for a, k in zip(hh, alg.kcow(gamma)))
                scal = (
                    self._antipode_scalar(gamma, "f")
                    * alg.theta(beta, gamma)
                    * alg.qexp(-alg.root_on(beta, h) - alg.root_on(gamma, h) - d.root_form(beta, gamma))
                )
                _, tinv = self._reversal(gamma, "f")
                dim = len(tinv)
                sinv = scal.inverse()
                for s in range(dim):
                    z = ZERO
                    for t, v in vec.items():
                        w = tinv[t][s]
                        if w:
                            z = z + v * w
                    if not z:
                        continue
                    z = z * sinv
                    _accumulate(out, (beta, r, h, gamma, s), z)
                    for k, v in self.left_element(beta, r, h, gamma, s).terms.items():
                        _accumulate(rem, k, -(z * v))
        return out

    # the form ---------------------------------------------------------------
    def value(self, a: AlgebraElement, b: AlgebraElement) -> RationalFunction:
        alg = self.alg
        d = alg.datum
        reg = alg.reg
        left = self.left_coords(a)
        right = self.right_coords(b)
        acc = ZERO
        for (b1, r1, h1, g1, s1), c1 in left.items():
            for (g2, t2, h2, b2, r2), c2 in right.items():
                if b1 != g2 or b2 != g1:
                    continue
                p1 = reg.level(b1).gram[r1][t2]
                if not p1:
                    continue
                p2 = reg.level(b2).gram[r2][s1]
                if not p2:
                    continue
                sign = alg.theta(g1, g2) * alg.theta(g1, b2)
                ex = -d.coweight_form(h1, h2) / 2
                acc = acc + c1 * c2 * p1 * p2 * alg.qexp(ex) * sign
        return acc

    __call__ = value
