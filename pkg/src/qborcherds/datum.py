"""Borcherds-Cartan data and the lattice arithmetic attached to them.

Conventions, for an ordered finite index set I of size n:

* root vectors are integer tuples of length n over the simple roots;
* coweights are integer tuples of length 2n, the h-coordinates followed by
  the d-coordinates;
* weights are tuples of length 2n holding the values on h_1..h_n, d_1..d_n.

The simple root alpha_i is the weight with alpha_i(h_j) = a_{j,i} and
alpha_i(d_j) = delta_{i,j}.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from itertools import product
from typing import Sequence

from .errors import DatumAxiomError, DomainError, ParseError

Root = tuple[int, ...]
Coweight = tuple[int, ...]
Weight = tuple


@dataclass(frozen=True)
class CartanDatum:
    index: tuple[str, ...]
    A: tuple[tuple[int, ...], ...]
    s: tuple[int, ...]
    m: tuple[int, ...]
    theta: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # construction ----------------------------------------------------------
    @classmethod
    def build(cls, index, A, s, m, theta) -> "CartanDatum":
        n = len(A)
        if index is None:
            index = [str(i + 1) for i in range(n)]
        d = cls(
            tuple(str(x) for x in index),
            tuple(tuple(row) for row in A),
            tuple(s),
            tuple(m),
            tuple(tuple(row) for row in theta),
        )
        d.validate()
        return d

    @classmethod
    def from_dict(cls, raw: dict) -> "CartanDatum":
        missing = [k for k in ("A", "s", "m", "theta") if k not in raw]
        if missing:
            raise ParseError(f"datum is missing keys: {', '.join(missing)}")
        theta = raw["theta"]
        if isinstance(theta, int):
            theta = [[theta]]
        return cls.build(raw.get("index"), raw["A"], raw["s"], raw["m"], theta)

    @classmethod
    def from_json(cls, text: str) -> "CartanDatum":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"datum is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ParseError("datum JSON must be an object")
        return cls.from_dict(raw)

    @classmethod
    def load(cls, path) -> "CartanDatum":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def to_dict(self) -> dict:
        return {
            "index": list(self.index),
            "A": [list(r) for r in self.A],
            "s": list(self.s),
            "m": list(self.m),
            "theta": [list(r) for r in self.theta],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]

    # axioms ----------------------------------------------------------------
    def validate(self) -> None:
        n = len(self.A)
        if n == 0:
            raise DatumAxiomError("shape", "index set is empty")
        shapes_ok = (
            all(len(r) == n for r in self.A)
            and len(self.theta) == n
            and all(len(r) == n for r in self.theta)
            and len(self.s) == n
            and len(self.m) == n
            and len(self.index) == n
        )
        if not shapes_ok:
            raise DatumAxiomError("shape", "A, theta, s, m and index must agree in size")
        if len(set(self.index)) != n:
            raise DatumAxiomError("shape", "index names must be distinct")
        for val in [x for r in self.A for x in r] + list(self.s) + list(self.m):
            if not isinstance(val, int) or isinstance(val, bool):
                raise DatumAxiomError("integrality", f"non-integer entry {val!r}")
        A = self.A
        for i in range(n):
            if self.s[i] <= 0:
                raise DatumAxiomError("integrality", f"s_{i+1} must be a positive integer")
            if self.m[i] <= 0:
                raise DatumAxiomError("charge", f"m_{i+1} must be positive")
            if A[i][i] % 2:
                raise DatumAxiomError("integrality", f"a_{i+1},{i+1} must be even")
            if not (A[i][i] == 2 or A[i][i] <= 0):
                raise DatumAxiomError("diagonal", f"a_{i+1},{i+1} must be 2 or non-positive")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if A[i][j] > 0:
                    raise DatumAxiomError("off-diagonal", f"a_{i+1},{j+1} must be non-positive")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise DatumAxiomError(
                        "zero-pattern", f"a_{i+1},{j+1} = 0 xor a_{j+1},{i+1} = 0"
                    )
        for i in range(n):
            for j in range(n):
                if self.s[i] * A[i][j] != self.s[j] * A[j][i]:
                    raise DatumAxiomError("symmetrizable", "DA is not symmetric")
        for i in range(n):
            for j in range(n):
                t = self.theta[i][j]
                if t not in (1, -1) or isinstance(t, bool):
                    raise DatumAxiomError("coloring", f"theta_{i+1},{j+1} must be +1 or -1")
                if t * self.theta[j][i] != 1:
                    raise DatumAxiomError("coloring", "theta_ij * theta_ji must be 1")
        for i in range(n):
            if A[i][i] == 2 and self.theta[i][i] == -1:
                if any(A[i][j] % 2 for j in range(n)):
                    raise DatumAxiomError(
                        "colored-even",
                        f"odd real index {self.index[i]} needs every a_{i+1},j even",
                    )
            if A[i][i] == 2 and self.m[i] != 1:
                raise DatumAxiomError("charge", f"real index {self.index[i]} must have m = 1")

    # basic structure -------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.A)

    def is_real(self, i: int) -> bool:
        return self.A[i][i] == 2

    def is_odd(self, i: int) -> bool:
        return self.theta[i][i] == -1

    @cached_property
    def letters(self) -> tuple[tuple[int, int], ...]:
        """All generator labels (i, k) with 1 <= k <= m_i, in lexicographic order."""
        return tuple((i, k) for i in range(self.rank) for k in range(1, self.m[i] + 1))

    def index_position(self, name: str) -> int:
        try:
            return self.index.index(str(name))
        except ValueError:
            raise ParseError(f"unknown index {name!r}") from None

    @cached_property
    def root_order(self) -> int:
        """Smallest D > 0 with D*(h|h')/2 integral on basis coweights."""
        n = self.rank
        denoms = [1]
        for i in range(n):
            for j in range(n):
                denoms.append(Fraction(self.A[j][i], 2 * self.s[i]).denominator)
            denoms.append(Fraction(1, 2 * self.s[i]).denominator)
        return math.lcm(*denoms)

    # roots -----------------------------------------------------------------
    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def zero_root(self) -> Root:
        return (0,) * self.rank

    def root_form(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        n = self.rank
        return sum(
            beta[i] * gamma[j] * self.s[i] * self.A[i][j]
            for i in range(n) if beta[i]
            for j in range(n) if gamma[j]
        )

    def theta_bicharacter(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        e = 0
        n = self.rank
        for i in range(n):
            if beta[i] % 2 == 0:
                continue
            for j in range(n):
                if self.theta[i][j] == -1 and gamma[j] % 2:
                    e += 1
        return -1 if e % 2 else 1

    @staticmethod
    def height(beta: Sequence[int]) -> int:
        return sum(beta)

    def roots_of_height(self, ht: int) -> list[Root]:
        out = []
        for v in product(range(ht + 1), repeat=self.rank):
            if sum(v) == ht:
                out.append(tuple(v))
        return sorted(out)

    def roots_up_to(self, depth: int) -> list[Root]:
        return [b for ht in range(depth + 1) for b in self.roots_of_height(ht)]

    # coweights -------------------------------------------------------------
    def zero_coweight(self) -> Coweight:
        return (0,) * (2 * self.rank)

    def h_basis(self, i: int) -> Coweight:
        v = [0] * (2 * self.rank)
        v[i] = 1
        return tuple(v)

    def d_basis(self, i: int) -> Coweight:
        v = [0] * (2 * self.rank)
        v[self.rank + i] = 1
        return tuple(v)

    def coweight_form(self, h: Sequence[int], g: Sequence[int]) -> Fraction:
        n = self.rank
        total = Fraction(0)
        for i in range(n):
            if h[i]:
                for j in range(n):
                    if g[j]:
                        total += Fraction(h[i] * g[j] * self.A[j][i], self.s[i])
                if g[n + i]:
                    total += Fraction(h[i] * g[n + i], self.s[i])
            if h[n + i] and g[i]:
                total += Fraction(h[n + i] * g[i], self.s[i])
        return total

    def h_beta(self, beta: Sequence[int]) -> Coweight:
        n = self.rank
        return tuple(beta[i] * self.s[i] for i in range(n)) + (0,) * n

    def k_coweight(self, beta: Sequence[int], sign: int = 1) -> Coweight:
        """Coweight of K_beta**sign."""
        n = self.rank
        return tuple(sign * beta[i] * self.s[i] for i in range(n)) + (0,) * n

    def root_on_coweight(self, beta: Sequence[int], h: Sequence[int]) -> int:
        """beta(h) for a root vector beta."""
        n = self.rank
        total = 0
        for i in range(n):
            if beta[i]:
                total += beta[i] * (sum(h[j] * self.A[j][i] for j in range(n)) + h[n + i])
        return total

    # weights ---------------------------------------------------------------
    def root_as_weight(self, beta: Sequence[int]) -> Weight:
        n = self.rank
        hv = tuple(sum(beta[i] * self.A[j][i] for i in range(n)) for j in range(n))
        return hv + tuple(beta)

    def weight_on_coweight(self, lam: Sequence, h: Sequence[int]):
        return sum(l * c for l, c in zip(lam, h))

    def weight_sub(self, lam: Sequence, beta: Sequence[int]) -> Weight:
        """lam - beta for a root vector beta."""
        rb = self.root_as_weight(beta)
        return tuple(a - b for a, b in zip(lam, rb))

    def weight_form(self, lam: Sequence, mu: Sequence):
        n = self.rank
        # lam = sum a_k alpha_k + sum b_k Lambda_k
        def expand(w):
            a = list(w[n:])
            b = [w[i] - sum(w[n + j] * self.A[i][j] for j in range(n)) for i in range(n)]
            return a, b

        a1, b1 = expand(lam)
        a2, b2 = expand(mu)
        total = 0
        for i in range(n):
            for j in range(n):
                total += a1[i] * a2[j] * self.s[i] * self.A[i][j]
            total += a1[i] * b2[i] * self.s[i] + b1[i] * a2[i] * self.s[i]
        return total

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if j == i else 0 for j in range(2 * self.rank))

    @cached_property
    def rho(self) -> Weight:
        n = self.rank
        return tuple(self.A[i][i] // 2 for i in range(n)) + (0,) * n

    def reflect_weight(self, i: int, lam: Sequence) -> tuple:
        a = self.A[i][i]
        if a == 0:
            raise DomainError(f"no reflection for isotropic index {self.index[i]}")
        c = Fraction(2 * lam[i], a)
        ai = self.root_as_weight(self.simple_root(i))
        return tuple(_norm(x - c * y) for x, y in zip(lam, ai))

    def reflect_coweight(self, i: int, h: Sequence) -> tuple:
        a = self.A[i][i]
        if a == 0:
            raise DomainError(f"no reflection for isotropic index {self.index[i]}")
        c = Fraction(2 * self.root_on_coweight(self.simple_root(i), h), a)
        out = list(h)
        out[i] = _norm(out[i] - c)
        return tuple(_norm(x) for x in out)

    def reflect_root(self, i: int, beta: Sequence[int]) -> tuple:
        """r_i on Q; alpha_j -> alpha_j - (2 a_{i,j}/a_{i,i}) alpha_i."""
        a = self.A[i][i]
        if a == 0:
            raise DomainError(f"no reflection for isotropic index {self.index[i]}")
        c = Fraction(2 * sum(beta[j] * self.A[i][j] for j in range(self.rank)), a)
        out = list(beta)
        out[i] = _norm(out[i] - c)
        return tuple(out)

    def is_dominant(self, lam: Sequence) -> bool:
        for i in range(self.rank):
            if self.is_real(i):
                v = lam[i]
                if v < 0:
                    return False
                if self.is_odd(i) and v % 2:
                    return False
        return True

    # finite type -----------------------------------------------------------
    def is_finite_type(self) -> bool:
        n = self.rank
        sym = [[Fraction(self.s[i] * self.A[i][j]) for j in range(n)] for i in range(n)]
        # Sylvester's criterion on leading minors
        for k in range(1, n + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                return False
        return True

    def two_rho_in_Q(self) -> Root:
        if not self.is_finite_type():
            raise DomainError("2rho in Q requires a finite-type datum")
        n = self.rank
        # sum_i c_i a_{j,i} = a_{j,j}
        mat = [[Fraction(self.A[j][i]) for i in range(n)] for j in range(n)]
        rhs = [Fraction(self.A[j][j]) for j in range(n)]
        sol = _solve(mat, rhs)
        if any(x.denominator != 1 for x in sol):
            raise DomainError("2rho is not integral in the root lattice")
        return tuple(int(x) for x in sol)


def _norm(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _det(mat) -> Fraction:
    m = [list(map(Fraction, r)) for r in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _solve(mat, rhs):
    n = len(mat)
    m = [list(r) + [b] for r, b in zip(mat, rhs)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                for k in range(c, n + 1):
                    m[r][k] -= f * m[c][k]
    return [m[i][n] / m[i][i] for i in range(n)]


SAMPLE_NAMES = ("sl2", "osp12", "a2", "odd_isotropic", "borcherds_mixed")


def sample_datum(name: str) -> CartanDatum:
    """Load one of the bundled sample data by name (see ``SAMPLE_NAMES``)."""
    if name not in SAMPLE_NAMES:
        raise KeyError(name)
    text = resources.files("qborcherds.data").joinpath(f"{name}.json").read_text()
    return CartanDatum.from_json(text)


def parse_weight(datum: CartanDatum, text: str) -> Weight:
    """Parse ``h1=1,d1=0`` into a weight; unspecified values are 0."""
    vals = [0] * (2 * datum.rank)
    text = text.strip()
    if not text:
        return tuple(vals)
    for part in text.split(","):
        if "=" not in part:
            raise ParseError(f"bad weight component {part!r}")
        key, val = (p.strip() for p in part.split("=", 1))
        if len(key) < 2 or key[0] not in "hd":
            raise ParseError(f"bad weight key {key!r}")
        pos = datum.index_position(key[1:])
        try:
            v = int(val)
        except ValueError:
            raise ParseError(f"bad weight value {val!r}") from None
        vals[pos if key[0] == "h" else datum.rank + pos] = v
    return tuple(vals)
