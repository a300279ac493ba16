"""The positive and negative halves U+ and U-, and the pairing between them.

U+ is realized as the free algebra on the letters e_{i,k} modulo the radical
of the pairing, and U- likewise on the f-letters; the Serre-type relations
are never imposed, they fall out as radical elements.

The pairing is driven by a family of skew derivations on e-words: peeling the
first letter of an f-word,

    (x | f_c y') = (-1/xi_c) (D_c x | y'),
    D_c(a w) = [a = c] theta(wt w, alpha_c) w + q^{(alpha_a|alpha_c)} a D_c(w),

which is the coproduct recursion of the pairing written out letter by letter.

The :class:`Registry` stores, per weight beta, a basis of pivot words for
each half, the pivot Gram matrix, and coordinates of every "candidate" word
(a letter prepended to a lower pivot word). Everything is computed lazily by
weight and works over any field from :mod:`qborcherds.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .datum import CartanDatum, Root
from .errors import DepthExceeded, DomainError
from .linalg import DEFAULT_MODULAR, EXACT, ExactField, SingularMatrix
from .scalars import ONE, ZERO, RationalFunction, super_binomial, u_power

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def word_weight(datum: CartanDatum, word: Iterable[Letter]) -> Root:
    v = [0] * datum.rank
    for i, _ in word:
        v[i] += 1
    return tuple(v)


def format_word(datum: CartanDatum, word: Word, side: str) -> str:
    if not word:
        return "1"
    return "*".join(f"{side}[{datum.index[i]},{k}]" for i, k in word)


class DatumScalars:
    """Frequently used structure constants of a datum, as exact scalars."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        D = datum.root_order
        n = datum.rank
        self.q = u_power(D)
        self.q_i = [u_power(D * datum.s[i]) for i in range(n)]
        self.xi = [u_power(D * datum.s[i]) - u_power(-D * datum.s[i]) for i in range(n)]
        self.minus_inv_xi = [-(x.inverse()) for x in self.xi]
        self.inv_xi = [x.inverse() for x in self.xi]

    def q_power(self, e) -> RationalFunction:
        """q**e for rational e with D*e integral."""
        k = e * self.datum.root_order
        if getattr(k, "denominator", 1) != 1:
            raise DomainError(f"q^{e} is not a power of u")
        return u_power(int(k))

    def q_root_form(self, beta, gamma) -> RationalFunction:
        return u_power(self.datum.root_order * self.datum.root_form(beta, gamma))


@dataclass
class Level:
    weight: Root
    e_cands: list  # list of (letter, lower pivot index); [None] at weight 0
    f_cands: list
    e_pivots: list  # indices into e_cands
    f_pivots: list
    gram: list  # e-pivot rows x f-pivot columns
    gram_inv: list
    coord_e: dict = field(default_factory=dict)  # candidate -> coordinate vector
    coord_f: dict = field(default_factory=dict)
    deriv: dict = field(default_factory=dict)  # letter c -> list of vectors, one per e-pivot
    e_words: list = field(default_factory=list)
    f_words: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.e_pivots)


class Registry:
    """Pivot bases, Gram matrices and coordinate maps for U+ and U-, by weight."""

    def __init__(self, datum: CartanDatum, depth: int = 5, field=EXACT, shadow: "Registry | None" = None):
        self.datum = datum
        self.depth = depth
        self.F = field
        self.sc = DatumScalars(datum)
        self._levels: dict[Root, Level] = {}
        self._proj_e: dict[Word, list] = {}
        self._proj_f: dict[Word, list] = {}
        if shadow is None and isinstance(field, ExactField):
            shadow = Registry(datum, depth, DEFAULT_MODULAR)
        self.shadow = shadow
        n = datum.rank
        conv = field.convert
        self._qform = {
            (a, c): conv(self.sc.q_root_form(datum.simple_root(a), datum.simple_root(c)))
            for a in range(n) for c in range(n)
        }
        self._mxi = [conv(x) for x in self.sc.minus_inv_xi]

    # ------------------------------------------------------------------
    def check_depth(self, beta: Sequence[int]) -> None:
        if sum(beta) > self.depth:
            raise DepthExceeded(f"weight {tuple(beta)} exceeds registry depth {self.depth}")

    def dim(self, beta: Sequence[int]) -> int:
        if any(b < 0 for b in beta):
            return 0
        return self.level(tuple(beta)).dim

    def level(self, beta: Root) -> Level:
        lv = self._levels.get(beta)
        if lv is None:
            self.check_depth(beta)
            lv = self._build(beta)
            self._levels[beta] = lv
        return lv

    def e_basis(self, beta: Root) -> list[Word]:
        return self.level(beta).e_words

    def f_basis(self, beta: Root) -> list[Word]:
        return self.level(beta).f_words

    def gram(self, beta: Root) -> list:
        return self.level(beta).gram

    # ------------------------------------------------------------------
    def _below(self, beta: Root, i: int) -> Root | None:
        if beta[i] == 0:
            return None
        return tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))

    def _build(self, beta: Root) -> Level:
        F = self.F
        letters = self.datum.letters
        if sum(beta) == 0:
            lv = Level(beta, [None], [None], [0], [0], [[F.one]], [[F.one]])
            lv.coord_e[None] = [F.one]
            lv.coord_f[None] = [F.one]
            lv.e_words = [()]
            lv.f_words = [()]
            return lv

        below = {}
        for c in letters:
            b = self._below(beta, c[0])
            if b is not None:
                below[c] = self.level(b)
        e_cands = [(a, s) for a in letters if a in below for s in range(below[a].dim)]
        f_cands = list(e_cands)

        # derivatives of every e-candidate: D_c(a b_s)
        derivs = {}
        for c, lc in below.items():
            dims_c = lc.dim
            rows = []
            for a, s in e_cands:
                v = [F.zero] * dims_c
                if a == c:
                    v[s] = v[s] + self._theta_wt_letter(below[a].weight, c[0])
                la = below[a]
                if c[0] in range(self.datum.rank) and la.weight[c[0]] > 0 and c in la.deriv:
                    dv = la.deriv[c][s]
                    qf = self._qform[(a[0], c[0])]
                    for t, coef in enumerate(dv):
                        if coef:
                            cv = lc.coord_e[(a, t)]
                            cq = coef * qf
                            for r, x in enumerate(cv):
                                if x:
                                    v[r] = v[r] + cq * x
                rows.append(v)
            derivs[c] = rows

        def gram_entry(x: int, y: int):
            c, t = f_cands[y]
            lc = below[c]
            dv = derivs[c][x]
            acc = F.zero
            for s, coef in enumerate(dv):
                if coef:
                    g = lc.gram[s][t]
                    if g:
                        acc = acc + coef * g
            return acc * self._mxi[c[0]] if acc else acc

        if self.shadow is not None:
            sl = self.shadow.level(beta)
            e_piv, f_piv = list(sl.e_pivots), list(sl.f_pivots)
        else:
            full = [[gram_entry(x, y) for y in range(len(f_cands))] for x in range(len(e_cands))]
            e_piv = F.row_profile(full, len(f_cands))
            sub = [[full[x][y] for x in e_piv] for y in range(len(f_cands))]
            f_piv = F.row_profile(sub, len(e_piv))

        r = len(e_piv)
        gram = [[gram_entry(x, y) for y in f_piv] for x in e_piv]
        try:
            gram_inv = F.inverse(gram)
        except SingularMatrix:
            raise SingularMatrix(f"pivot Gram matrix at weight {beta} is singular") from None

        lv = Level(beta, e_cands, f_cands, e_piv, f_piv, gram, gram_inv)
        piv_pos = {x: k for k, x in enumerate(e_piv)}
        for x, cand in enumerate(e_cands):
            if x in piv_pos:
                vec = [F.zero] * r
                vec[piv_pos[x]] = F.one
            else:
                row = [gram_entry(x, y) for y in f_piv]
                vec = _vec_mat(row, gram_inv, r, F.zero)
            lv.coord_e[cand] = vec
        fpos = {y: k for k, y in enumerate(f_piv)}
        for y, cand in enumerate(f_cands):
            if y in fpos:
                vec = [F.zero] * r
                vec[fpos[y]] = F.one
            else:
                col = [gram_entry(x, y) for x in e_piv]
                vec = _mat_vec(gram_inv, col, F.zero)
            lv.coord_f[cand] = vec
        for c in below:
            lv.deriv[c] = [derivs[c][x] for x in e_piv]
        for x in e_piv:
            a, s = e_cands[x]
            lv.e_words.append((a,) + below[a].e_words[s])
        for y in f_piv:
            a, s = f_cands[y]
            lv.f_words.append((a,) + below[a].f_words[s])
        return lv

    def _theta_wt_letter(self, weight: Root, c: int):
        sign = self.datum.theta_bicharacter(weight, self.datum.simple_root(c))
        return self.F.one if sign == 1 else -self.F.one

    # projections -------------------------------------------------------
    def project_e(self, word: Word) -> list:
        """Pivot coordinates of an e-word."""
        word = tuple(word)
        got = self._proj_e.get(word)
        if got is not None:
            return got
        if not word:
            res = [self.F.one]
        else:
            beta = word_weight(self.datum, word)
            lv = self.level(beta)
            tail = self.project_e(word[1:])
            a = word[0]
            res = [self.F.zero] * lv.dim
            for s, coef in enumerate(tail):
                if coef:
                    for r, x in enumerate(lv.coord_e[(a, s)]):
                        if x:
                            res[r] = res[r] + coef * x
        self._proj_e[word] = res
        return res

    def project_f(self, word: Word) -> list:
        word = tuple(word)
        got = self._proj_f.get(word)
        if got is not None:
            return got
        if not word:
            res = [self.F.one]
        else:
            beta = word_weight(self.datum, word)
            lv = self.level(beta)
            tail = self.project_f(word[1:])
            a = word[0]
            res = [self.F.zero] * lv.dim
            for s, coef in enumerate(tail):
                if coef:
                    for r, x in enumerate(lv.coord_f[(a, s)]):
                        if x:
                            res[r] = res[r] + coef * x
        self._proj_f[word] = res
        return res

    def project_e_combo(self, beta: Root, terms: dict) -> list:
        """Coordinates of a linear combination {e-word: scalar} of weight beta."""
        lv = self.level(beta)
        out = [self.F.zero] * lv.dim
        for w, c in terms.items():
            if not c:
                continue
            for r, x in enumerate(self.project_e(w)):
                if x:
                    out[r] = out[r] + c * x
        return out

    def project_f_combo(self, beta: Root, terms: dict) -> list:
        lv = self.level(beta)
        out = [self.F.zero] * lv.dim
        for w, c in terms.items():
            if not c:
                continue
            for r, x in enumerate(self.project_f(w)):
                if x:
                    out[r] = out[r] + c * x
        return out

    # pairing -----------------------------------------------------------
    def pair_vectors(self, beta: Root, xv: Sequence, yv: Sequence):
        g = self.level(beta).gram
        acc = self.F.zero
        for r, a in enumerate(xv):
            if not a:
                continue
            row = g[r]
            for s, b in enumerate(yv):
                if b and row[s]:
                    acc = acc + a * row[s] * b
        return acc

    def pair(self, x: Word, y: Word):
        bx = word_weight(self.datum, x)
        if bx != word_weight(self.datum, y):
            return self.F.zero
        return self.pair_vectors(bx, self.project_e(x), self.project_f(y))

    def derivative(self, c: Letter, beta: Root, xv: Sequence) -> list:
        """Coordinates of D_c applied to the element with coordinates xv at beta."""
        lv = self.level(beta)
        below = self._below(beta, c[0])
        if below is None:
            return []
        dimb = self.dim(below)
        out = [self.F.zero] * dimb
        for r, a in enumerate(xv):
            if a:
                for t, x in enumerate(lv.deriv[c][r]):
                    if x:
                        out[t] = out[t] + a * x
        return out


def _vec_mat(v, M, ncols, zero):
    out = [zero] * ncols
    for a, row in zip(v, M):
        if a:
            for k in range(ncols):
                b = row[k]
                if b:
                    out[k] = out[k] + a * b
    return out


def _mat_vec(M, v, zero):
    out = []
    for row in M:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# free-word oracles


def pair_free(datum: CartanDatum, x: Word, y: Word) -> RationalFunction:
    """The pairing of an e-word with an f-word by direct letter recursion,
    without any basis reduction. Exponential; for cross-checks only."""
    sc = DatumScalars(datum)
    return _pair_free(datum, sc, tuple(x), tuple(y))


def _pair_free(datum, sc, x, y):
    if len(x) != len(y):
        return ZERO
    if not y:
        return ONE
    c = y[0]
    rest = y[1:]
    total = ZERO
    for p, letter in enumerate(x):
        if letter != c:
            continue
        after = word_weight(datum, x[p + 1:])
        before = word_weight(datum, x[:p])
        sign = datum.theta_bicharacter(after, datum.simple_root(c[0]))
        sub = _pair_free(datum, sc, x[:p] + x[p + 1:], rest)
        if sub.is_zero():
            continue
        total = total + sub * sc.q_root_form(before, datum.simple_root(c[0])) * sign
    return total * sc.minus_inv_xi[c[0]] if total else total


def delta_plus(datum: CartanDatum, x: Word) -> list[tuple[RationalFunction, Word, Root, Word]]:
    """Coproduct of an e-word as terms (coef, left word, K-shift, right word),
    meaning coef * left K_shift (x) right."""
    n = len(x)
    out = []
    for mask in range(1 << n):
        left = [p for p in range(n) if mask >> p & 1]
        right = [p for p in range(n) if not mask >> p & 1]
        coef = ONE
        sign = 1
        expo = 0
        for j in right:
            aj = datum.simple_root(x[j][0])
            for k in left:
                if k > j:
                    ak = datum.simple_root(x[k][0])
                    sign *= datum.theta_bicharacter(aj, ak)
                    expo += datum.root_form(aj, ak)
        coef = u_power(datum.root_order * expo) * sign
        lw = tuple(x[p] for p in left)
        rw = tuple(x[p] for p in right)
        out.append((coef, lw, word_weight(datum, rw), rw))
    return out


# --------------------------------------------------------------------------
# relations


def serre_element(datum: CartanDatum, i: int, j: int, k: int = 1, l: int = 1) -> dict:
    """The quantum Serre element attached to (i, k), (j, l) as {e-word: coef}.

    For a_{i,i} = 2 and i != j this is the alternating binomial sum; for
    a_{i,j} = 0 it is the two-term commutator e_{i,k}e_{j,l} - theta e_{j,l}e_{i,k}.
    """
    A = datum.A
    if A[i][j] == 0:
        terms: dict = {}
        w1 = ((i, k), (j, l))
        w2 = ((j, l), (i, k))
        terms[w1] = terms.get(w1, ZERO) + ONE
        terms[w2] = terms.get(w2, ZERO) - datum.theta[i][j]
        return {w: c for w, c in terms.items() if c}
    if A[i][i] != 2 or i == j:
        raise DomainError("Serre elements need a real index i and j != i, or a_{i,j} = 0")
    N = 1 - A[i][j]
    terms = {}
    for n in range(N + 1):
        sign = (-1) ** n * datum.theta[i][j] ** n * datum.theta[i][i] ** (n * (n - 1) // 2)
        coef = super_binomial(N, n, i, datum) * sign
        w = ((i, k),) * (N - n) + ((j, l),) + ((i, k),) * n
        terms[w] = terms.get(w, ZERO) + coef
    return {w: c for w, c in terms.items() if c}


def serre_relations(datum: CartanDatum) -> list[tuple[str, dict]]:
    """All (R5) and (R7) type elements of the datum, labelled."""
    out = []
    n = datum.rank
    for i in range(n):
        for j in range(n):
            if datum.A[i][j] == 0:
                for k in range(1, datum.m[i] + 1):
                    for l in range(1, datum.m[j] + 1):
                        if (i, k) <= (j, l) or i != j:
                            out.append((f"commute({i},{k};{j},{l})", serre_element(datum, i, j, k, l)))
            elif datum.A[i][i] == 2 and i != j:
                for l in range(1, datum.m[j] + 1):
                    out.append((f"serre({i};{j},{l})", serre_element(datum, i, j, 1, l)))
    return out


def element_weight(datum, terms: dict) -> Root:
    weights = {word_weight(datum, w) for w in terms}
    if len(weights) != 1:
        raise DomainError("element is not homogeneous")
    return weights.pop()


def serre_in_radical(datum: CartanDatum, i: int, j: int, k: int = 1, l: int = 1,
                     registry: Registry | None = None) -> bool:
    """True iff the Serre element has zero coordinates in the registry."""
    elem = serre_element(datum, i, j, k, l)
    if not elem:
        return True
    beta = element_weight(datum, elem)
    if registry is None:
        registry = Registry(datum, sum(beta))
    coords = registry.project_e_combo(beta, {w: registry.F.convert(c) for w, c in elem.items()})
    return all(not c for c in coords)


def serre_pairs_to_zero(datum: CartanDatum, elem: dict) -> bool:
    """Oracle: the element pairs to zero with every f-word of its weight."""
    from itertools import permutations

    letters = []
    for w in elem:
        letters = list(w)
        break
    fwords = set(permutations(letters))
    # f-words may use any copies with the right weight; the Serre words use fixed copies
    for y in sorted(fwords):
        acc = ZERO
        for w, c in elem.items():
            acc = acc + c * pair_free(datum, w, y)
        if acc:
            return False
    return True


def all_words(datum: CartanDatum, beta: Root) -> list[Word]:
    """Every e-word of weight beta over all charge copies, lexicographically."""
    out: list[Word] = []

    def rec(rem, prefix):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for i, k in datum.letters:
            if rem[i]:
                rem2 = list(rem)
                rem2[i] -= 1
                rec(rem2, prefix + [(i, k)])

    rec(list(beta), [])
    return out
