"""Small dense linear algebra over the two scalar fields the package uses.

``EXACT`` works in Q(u) with :class:`RationalFunction` entries. A
:class:`ModularField` is the specialization u -> u0 in GF(p); it is used to
find rank profiles quickly and, since it is a ring homomorphism image of the
exact computation, a nonzero determinant there certifies a nonzero exact
determinant.

Matrices are plain lists of rows.
"""

from __future__ import annotations

from typing import Sequence

from flint import nmod, nmod_mat

from .errors import QBorcherdsError
from .scalars import ONE, ZERO, DivisionByZero, RationalFunction

Matrix = list


class SingularMatrix(QBorcherdsError):
    pass


class ExactField:
    name = "exact"
    zero = ZERO
    one = ONE

    def convert(self, x: RationalFunction) -> RationalFunction:
        return x

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction.from_int(n)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    # matrices --------------------------------------------------------------
    def row_profile(self, M: Matrix, ncols: int) -> list[int]:
        """Indices of the greedy (first-come) maximal independent set of rows."""
        basis: list[tuple[int, list]] = []  # (pivot column, reduced row with 1 at pivot)
        chosen = []
        for r, row in enumerate(M):
            v = list(row)
            for col, b in basis:
                c = v[col]
                if not c.is_zero():
                    v = [x - c * y if not y.is_zero() else x for x, y in zip(v, b)]
            piv = next((k for k in range(ncols) if not v[k].is_zero()), None)
            if piv is None:
                continue
            inv = v[piv].inverse()
            basis.append((piv, [x * inv for x in v]))
            chosen.append(r)
        return chosen

    def inverse(self, M: Matrix) -> Matrix:
        n = len(M)
        aug = [list(row) + [ONE if j == i else ZERO for j in range(n)] for i, row in enumerate(M)]
        for c in range(n):
            p = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            inv = aug[c][c].inverse()
            pr = [x * inv if not x.is_zero() else x for x in aug[c]]
            aug[c] = pr
            nz = [k for k in range(c, 2 * n) if not pr[k].is_zero()]
            for r in range(n):
                if r == c:
                    continue
                f = aug[r][c]
                if f.is_zero():
                    continue
                row = aug[r]
                for k in nz:
                    row[k] = row[k] - f * pr[k]
        return [row[n:] for row in aug]

    def det(self, M: Matrix) -> RationalFunction:
        n = len(M)
        a = [list(r) for r in M]
        det = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det = det * a[c][c]
            inv = a[c][c].inverse()
            for r in range(c + 1, n):
                f = a[r][c]
                if f.is_zero():
                    continue
                f = f * inv
                for k in range(c + 1, n):
                    if not a[c][k].is_zero():
                        a[r][k] = a[r][k] - f * a[c][k]
        return det

    def kernel(self, M: Matrix, ncols: int) -> list[list]:
        """Basis of {x : M x = 0}, one vector per free column, in rref form."""
        rref, pivots = _rref_exact([list(r) for r in M], ncols)
        free = [c for c in range(ncols) if c not in pivots]
        out = []
        for fcol in free:
            v = [ZERO] * ncols
            v[fcol] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -rref[r][fcol]
            out.append(v)
        return out


def _rref_exact(a: Matrix, ncols: int):
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y if not y.is_zero() else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[: len(pivots)], pivots


class ModularField:
    """The specialization u -> u0 of Q(u) into GF(p)."""

    def __init__(self, p: int = 2305843009213693951, u0: int = 1234567891011):
        self.p = p
        self.u0 = u0
        self.name = f"mod{p}@{u0}"
        self.zero = nmod(0, p)
        self.one = nmod(1, p)

    def convert(self, x: RationalFunction) -> nmod:
        v = x.evaluate_mod(self.u0, self.p)
        if v is None:
            raise DivisionByZero(f"pole at the specialization point {self.u0}")
        return nmod(v, self.p)

    def from_int(self, n: int) -> nmod:
        return nmod(n, self.p)

    def is_zero(self, x) -> bool:
        return int(x) == 0

    def _mat(self, M: Matrix, ncols: int) -> nmod_mat:
        return nmod_mat(len(M), ncols, [int(x) for row in M for x in row], self.p)

    def row_profile(self, M: Matrix, ncols: int) -> list[int]:
        if not M or ncols == 0:
            return []
        t = self._mat(M, ncols).transpose()
        rref, rank = t.rref()
        out = []
        col = 0
        for r in range(rank):
            while int(rref[r, col]) == 0:
                col += 1
            out.append(col)
            col += 1
        return out

    def inverse(self, M: Matrix) -> Matrix:
        n = len(M)
        if n == 0:
            return []
        try:
            inv = self._mat(M, n).inv()
        except ZeroDivisionError:
            raise SingularMatrix("matrix is singular modulo p") from None
        return [[nmod(int(inv[i, j]), self.p) for j in range(n)] for i in range(n)]

    def det(self, M: Matrix) -> nmod:
        if not M:
            return self.one
        return nmod(int(self._mat(M, len(M)).det()), self.p)

    def kernel(self, M: Matrix, ncols: int) -> list[list]:
        if not M:
            return [[self.one if j == i else self.zero for j in range(ncols)] for i in range(ncols)]
        rref, rank = self._mat(M, ncols).rref()
        pivots = []
        col = 0
        for r in range(rank):
            while int(rref[r, col]) == 0:
                col += 1
            pivots.append(col)
            col += 1
        out = []
        for fcol in (c for c in range(ncols) if c not in pivots):
            v = [self.zero] * ncols
            v[fcol] = self.one
            for r, pc in enumerate(pivots):
                v[pc] = -nmod(int(rref[r, fcol]), self.p)
            out.append(v)
        return out


EXACT = ExactField()
DEFAULT_MODULAR = ModularField()


# generic helpers that only use + and * ----------------------------------------
def mat_vec(M: Matrix, v: Sequence, zero):
    out = []
    for row in M:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def vec_mat(v: Sequence, M: Matrix, ncols: int, zero):
    out = [zero] * ncols
    for a, row in zip(v, M):
        if not a:
            continue
        for k in range(ncols):
            b = row[k]
            if b:
                out[k] = out[k] + a * b
    return out


def mat_mul(A: Matrix, B: Matrix, ncols: int, zero) -> Matrix:
    return [vec_mat(row, B, ncols, zero) for row in A]
