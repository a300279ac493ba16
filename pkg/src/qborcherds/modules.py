"""Depth-truncated highest-weight modules and character computations.

Weight spaces are indexed by beta in Q+ (the weight is lambda - beta). The
Verma module has the f-pivot words of weight beta as basis of its beta-space.
The irreducible quotient is computed by the kernel recursion

    N_beta = { w in M_beta : e_{i,k} w in N_{beta - alpha_i} for all i, k },

starting from N_0 = 0, and a complement is chosen by taking the non-pivot
coordinates of N_beta in reduced row echelon form.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .algebra import Algebra, AlgebraElement, key_degree
from .datum import CartanDatum, Root, Weight
from .errors import DepthExceeded, DomainError, NotExhausted
from .halves import Registry
from .linalg import EXACT, _rref_exact
from .scalars import ONE, ZERO, RationalFunction


class HighestWeightModule:
    def __init__(self, alg: Algebra, lam: Weight, depth: int, irreducible: bool = False):
        if depth > alg.depth:
            raise DepthExceeded(f"module depth {depth} exceeds algebra depth {alg.depth}")
        self.alg = alg
        self.datum = alg.datum
        self.lam = tuple(lam)
        self.depth = depth
        self.irreducible = irreducible
        self._e_mats: dict = {}
        # quotient data per beta: (lift columns, quotient matrix) or None for Verma
        self._quot: dict = {}
        if irreducible:
            self._build_quotients()

    # Verma layer ----------------------------------------------------------
    def verma_dim(self, beta: Root) -> int:
        return self.alg.reg.dim(beta)

    def _q_lambda(self, h) -> RationalFunction:
        return self.alg.qexp(sum(l * c for l, c in zip(self.lam, h)))

    def verma_act_key(self, key, beta: Root, t: int) -> dict:
        """A triple applied to the Verma basis vector y_t v_lambda at beta:
        {(target beta, index): coef}."""
        alg = self.alg
        src = (beta, t, alg.zero_h, alg.zero_root, 0)
        out: dict = {}
        for (g, tt, h, b, r), c in alg.multiply_keys(key, src).items():
            if any(b):
                continue
            k = (g, tt)
            v = c * self._q_lambda(h)
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return {k: v for k, v in out.items() if v}

    def verma_act(self, a: AlgebraElement, beta: Root, vec: Sequence) -> dict:
        """{target beta: vector} for a applied to a Verma vector at beta."""
        out: dict = {}
        for key, c in a.terms.items():
            for t, x in enumerate(vec):
                if not x:
                    continue
                for (g, tt), v in self.verma_act_key(key, beta, t).items():
                    if g not in out:
                        out[g] = [ZERO] * self.alg.reg.dim(g)
                    out[g][tt] = out[g][tt] + c * x * v
        return out

    def e_matrix(self, letter, beta: Root) -> list:
        """Matrix of e_letter from M_beta to M_{beta - alpha_i}, as rows = target coords."""
        key = (letter, beta)
        got = self._e_mats.get(key)
        if got is not None:
            return got
        i = letter[0]
        tgt = tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))
        reg = self.alg.reg
        ekey = self.alg.e(*letter)
        (ek,) = ekey.terms
        src_dim = reg.dim(beta)
        tgt_dim = reg.dim(tgt) if min(tgt) >= 0 else 0
        mat = [[ZERO] * src_dim for _ in range(tgt_dim)]
        if tgt_dim:
            for t in range(src_dim):
                for (g, tt), v in self.verma_act_key(ek, beta, t).items():
                    mat[tt][t] = mat[tt][t] + v
        self._e_mats[key] = mat
        return mat

    # irreducible quotient ---------------------------------------------------
    def _build_quotients(self) -> None:
        d = self.datum
        for beta in d.roots_up_to(self.depth):
            n = self.verma_dim(beta)
            if sum(beta) == 0:
                self._quot[beta] = (list(range(n)), _identity(n))
                continue
            rows = []
            for letter in d.letters:
                i = letter[0]
                if beta[i] == 0:
                    continue
                tgt = tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))
                free, Q = self._quot[tgt]
                if not free:
                    continue
                E = self.e_matrix(letter, beta)
                for qrow in Q:
                    rows.append(_row_times(qrow, E, n))
            if rows:
                kern = EXACT.kernel(rows, n)
            else:
                kern = _identity(n)
            if kern:
                nrref, pivots = _rref_exact(kern, n)
            else:
                nrref, pivots = [], []
            free = [c for c in range(n) if c not in pivots]
            Q = []
            for fc in free:
                row = [ZERO] * n
                row[fc] = ONE
                for r, pc in enumerate(pivots):
                    v = nrref[r][fc]
                    if v:
                        row[pc] = -v
                Q.append(row)
            self._quot[beta] = (free, Q)

    def dim(self, beta: Root) -> int:
        if any(b < 0 for b in beta):
            return 0
        if sum(beta) > self.depth:
            raise DepthExceeded(f"weight {beta} beyond module depth {self.depth}")
        if not self.irreducible:
            return self.verma_dim(beta)
        return len(self._quot[beta][0])

    def dims(self) -> dict:
        return {b: self.dim(b) for b in self.datum.roots_up_to(self.depth)}

    def is_exhausted(self) -> bool:
        top = self.datum.roots_of_height(self.depth)
        return all(self.dim(b) == 0 for b in top)

    def weights(self) -> list[Root]:
        return [b for b in self.datum.roots_up_to(self.depth) if self.dim(b)]

    # action on the module basis ----------------------------------------------
    def _lift(self, beta, j: int) -> list:
        n = self.verma_dim(beta)
        v = [ZERO] * n
        if self.irreducible:
            v[self._quot[beta][0][j]] = ONE
        else:
            v[j] = ONE
        return v

    def _reduce(self, beta, vec) -> list:
        if not self.irreducible:
            return list(vec)
        if sum(beta) > self.depth:
            if any(vec):
                raise DepthExceeded(f"action leaves the truncation at weight {beta}")
            return []
        _, Q = self._quot[beta]
        return [_dot(row, vec) for row in Q]

    def act(self, a: AlgebraElement, beta: Root, vec: Sequence) -> dict:
        """a applied to a module vector (module coordinates) at beta."""
        n = self.verma_dim(beta)
        if self.irreducible:
            free = self._quot[beta][0]
            full = [ZERO] * n
            for j, x in zip(free, vec):
                full[j] = x
        else:
            full = list(vec)
        out = {}
        for g, v in self.verma_act(a, beta, full).items():
            red = self._reduce(g, v)
            if any(red):
                out[g] = red
        return out

    def block(self, a: AlgebraElement, src: Root, tgt: Root) -> list:
        """Matrix (rows = target basis) of the component of a from src to tgt."""
        ns, nt = self.dim(src), self.dim(tgt)
        mat = [[ZERO] * ns for _ in range(nt)]
        for j in range(ns):
            unit = [ONE if k == j else ZERO for k in range(ns)]
            res = self.act(a, src, unit).get(tgt)
            if res:
                for i in range(nt):
                    mat[i][j] = res[i]
        return mat

    def supertrace(self, a: AlgebraElement) -> RationalFunction:
        if not self.is_exhausted():
            raise NotExhausted("module has nonzero weight spaces at the truncation depth")
        d = self.datum
        acc = ZERO
        deg0 = AlgebraElement(self.alg, {k: c for k, c in a.terms.items() if not any(key_degree(k))})
        for beta in self.weights():
            blk = self.block(deg0, beta, beta)
            tr = ZERO
            for i in range(len(blk)):
                tr = tr + blk[i][i]
            acc = acc + tr * d.theta_bicharacter(beta, beta)
        return acc


def _identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _dot(a, b):
    acc = ZERO
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


def _row_times(row, M, ncols):
    out = [ZERO] * ncols
    for a, mrow in zip(row, M):
        if not a:
            continue
        for k in range(ncols):
            if mrow[k]:
                out[k] = out[k] + a * mrow[k]
    return out


def build_verma(alg: Algebra, lam: Weight, depth: int) -> HighestWeightModule:
    return HighestWeightModule(alg, lam, depth, irreducible=False)


def build_irreducible(alg: Algebra, lam: Weight, depth: int) -> HighestWeightModule:
    if not alg.datum.is_dominant(lam):
        raise DomainError(f"weight {tuple(lam)} is not dominant integral")
    return HighestWeightModule(alg, lam, depth, irreducible=True)


def check_uv_iso(alg: Algebra, lam: Weight, gamma: Root, module: HighestWeightModule | None = None) -> bool:
    d = alg.datum
    for i in range(d.rank):
        if d.is_real(i):
            if lam[i] < gamma[i]:
                raise DomainError(f"lambda(h_{d.index[i]}) must be at least {gamma[i]}")
        elif lam[i] <= 0:
            raise DomainError(f"lambda(h_{d.index[i]}) must be positive on imaginary indices")
    if module is None:
        module = build_irreducible(alg, lam, sum(gamma))
    return module.dim(tuple(gamma)) == alg.reg.dim(tuple(gamma))


# character formula ------------------------------------------------------------


def r_lambda(datum: CartanDatum, lam: Weight, depth: int) -> list[Root]:
    """The set R(lambda), truncated at height ``depth``, as a list of root
    vectors with repetition for distinct charge-copy choices."""
    n = datum.rank
    copies = [(i, k) for i in range(n) if not datum.is_real(i) for k in range(1, datum.m[i] + 1)]
    usable = [c for c in copies if datum.s[c[0]] * lam[c[0]] == 0]

    def perp(i, j):
        return datum.s[i] * datum.A[i][j] == 0

    out = []

    def rec(pos, chosen, total):
        if pos == len(usable):
            out.append(tuple(total))
            return
        rec(pos + 1, chosen, total)
        i, _ = usable[pos]
        if not all(perp(i, j) for j, _ in chosen):
            return
        odd = datum.is_odd(i)
        max_l = depth - sum(total)
        if max_l < 1:
            return
        limit = max_l if (odd and perp(i, i)) else 1
        for l in range(1, limit + 1):
            t2 = list(total)
            t2[i] += l
            rec(pos + 1, chosen + [(i, l)], t2)

    rec(0, [], [0] * n)
    return out


def weyl_orbit_shifts(datum: CartanDatum, Lam: Weight, depth: int) -> list[tuple[Root, int]]:
    """(Lam - w Lam, l(w)) for w in W with height of the shift <= depth.

    Lam must be regular dominant for the real reflections."""
    n = datum.rank
    real = [i for i in range(n) if datum.is_real(i)]
    start = (0,) * n
    dist = {start: 0}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for i in real:
            coef = Lam[i] - sum(c[j] * datum.A[i][j] for j in range(n))
            if coef <= 0:
                continue
            c2 = tuple(c[j] + (coef if j == i else 0) for j in range(n))
            if sum(c2) > depth or c2 in dist:
                continue
            dist[c2] = dist[c] + 1
            queue.append(c2)
    return sorted(dist.items())


def character_formula(datum: CartanDatum, lam: Weight, depth: int, registry: Registry) -> dict:
    """dim V(lam)_{lam - beta} for every beta of height <= depth, from the
    alternating sum over W x R(lam) times the Verma series."""
    numerator: dict = {}
    for mu in r_lambda(datum, lam, depth):
        Lam = datum.weight_sub(tuple(a + b for a, b in zip(lam, datum.rho)), mu)
        for c, length in weyl_orbit_shifts(datum, Lam, depth - sum(mu)):
            delta = tuple(a + b for a, b in zip(mu, c))
            sign = -1 if (length + sum(mu)) % 2 else 1
            numerator[delta] = numerator.get(delta, 0) + sign
    out = {}
    for beta in datum.roots_up_to(depth):
        total = 0
        for delta, coef in numerator.items():
            rest = tuple(b - x for b, x in zip(beta, delta))
            if min(rest) < 0:
                continue
            total += coef * registry.dim(rest)
        out[beta] = total
    return out
