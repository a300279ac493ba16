"""Exact scalars in the rational function field Q(u).

The structure constants of the algebra live in Q(q) with q = u**D for a
datum-dependent root order D, so every exponent that shows up (including the
half-integral ones of the Killing form) is an integer power of u.

A value is stored as ``u**e * num(u) / den(u)`` with ``num`` and ``den``
polynomials over Q with nonzero constant terms, coprime, and ``den`` monic.
That triple is unique for every element, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from flint import fmpq, fmpq_poly

__all__ = [
    "RationalFunction",
    "ZERO",
    "ONE",
    "DivisionByZero",
    "u_power",
    "from_laurent",
    "parse_laurent",
    "colored_integer",
    "colored_factorial",
    "super_binomial",
]


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


_P_ZERO = fmpq_poly([])
_P_ONE = fmpq_poly([1])


def _valuation(p: fmpq_poly) -> int:
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    raise ValueError("valuation of zero polynomial")


class RationalFunction:
    __slots__ = ("e", "num", "den", "_hash")

    def __init__(self, e: int, num: fmpq_poly, den: fmpq_poly, _canonical: bool = False):
        if _canonical:
            self.e, self.num, self.den = e, num, den
        else:
            self.e, self.num, self.den = _normalize(e, num, den)
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_int(cls, n) -> "RationalFunction":
        if n == 0:
            return ZERO
        return cls(0, fmpq_poly([n]), _P_ONE, _canonical=True)

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "RationalFunction":
        x = Fraction(x)
        if x == 0:
            return ZERO
        return cls(0, fmpq_poly([fmpq(x.numerator, x.denominator)]), _P_ONE, _canonical=True)

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.e == 0 and self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_monomial(self) -> bool:
        """True for c * u**k with c a nonzero rational."""
        return self.den.is_one() and self.num.degree() == 0

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                other = RationalFunction.from_fraction(other)
            else:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        e1, e2 = self.e, other.e
        e = min(e1, e2)
        if self.den.is_one() and other.den.is_one():
            n1 = self.num if e1 == e else self.num.left_shift(e1 - e)
            n2 = other.num if e2 == e else other.num.left_shift(e2 - e)
            n = n1 + n2
            if n.is_zero():
                return ZERO
            v = _valuation(n)
            if v:
                n = n.right_shift(v)
            return RationalFunction(e + v, n, _P_ONE, _canonical=True)
        if self.den == other.den:
            n1 = self.num if e1 == e else self.num.left_shift(e1 - e)
            n2 = other.num if e2 == e else other.num.left_shift(e2 - e)
            return RationalFunction(e, n1 + n2, self.den)
        g = self.den.gcd(other.den)
        d1 = self.den / g
        d2 = other.den / g
        n1 = self.num * d2
        n2 = other.num * d1
        if e1 != e:
            n1 = n1.left_shift(e1 - e)
        if e2 != e:
            n2 = n2.left_shift(e2 - e)
        return RationalFunction(e, n1 + n2, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return RationalFunction(self.e, -self.num, self.den, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                other = RationalFunction.from_fraction(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return ZERO
                other = RationalFunction.from_fraction(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        e = self.e + other.e
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(e, self.num * other.num, _P_ONE, _canonical=True)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1 = n1 / g
                d2 = d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2 = n2 / g
                d1 = d1 / g
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return RationalFunction(e, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        lc = self.num.leading_coefficient()
        return RationalFunction(-self.e, self.den / lc, self.num / lc, _canonical=True)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise DivisionByZero("division by zero")
                other = RationalFunction.from_fraction(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self.den.is_one():
            return RationalFunction(self.e * n, self.num ** n, _P_ONE, _canonical=True)
        return RationalFunction(self.e * n, self.num ** n, self.den ** n, _canonical=True)

    # comparison / hashing --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                other = RationalFunction.from_fraction(other)
            else:
                return NotImplemented
        return self.e == other.e and self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def key(self) -> tuple:
        return (self.e, tuple(self.num.coeffs()), tuple(self.den.coeffs()))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # evaluation ------------------------------------------------------------
    def evaluate(self, u0) -> Fraction:
        """Exact value at a rational point u = u0."""
        x = fmpq(Fraction(u0).numerator, Fraction(u0).denominator)
        d = self.den(x)
        if d == 0:
            raise DivisionByZero(f"pole at u={u0}")
        v = self.num(x) / d * x ** self.e
        return Fraction(int(v.p), int(v.q))

    def evaluate_mod(self, u0: int, p: int) -> int | None:
        """Value at u = u0 in GF(p), or None at a pole."""
        num = _eval_mod(self.num, u0, p)
        den = _eval_mod(self.den, u0, p)
        if den == 0:
            return None
        val = num * pow(den, -1, p) % p
        if self.e >= 0:
            return val * pow(u0, self.e, p) % p
        return val * pow(pow(u0, -self.e, p), -1, p) % p

    def degree_span(self) -> int:
        return max(self.num.degree(), 0) + max(self.den.degree(), 0)

    # rendering -------------------------------------------------------------
    def laurent_coefficients(self) -> dict[int, Fraction]:
        if not self.den.is_one():
            raise ValueError("not a Laurent polynomial")
        out = {}
        for k, c in enumerate(self.num.coeffs()):
            if c != 0:
                out[k + self.e] = Fraction(int(c.p), int(c.q))
        return out

    def to_string(self, root_order: int = 1, var: str = "q") -> str:
        """Render as a Laurent expression in ``var`` = u**root_order.

        Exponents that are not multiples of the root order print as
        fractions, e.g. ``q^(1/2)``.
        """
        if self.num.is_zero():
            return "0"
        num = _laurent_str(_coeff_map(self.num, self.e), root_order, var)
        if self.den.is_one():
            return num
        den = _laurent_str(_coeff_map(self.den, 0), root_order, var)
        return f"({num})/({den})"

    def __str__(self):
        return self.to_string(1, "u")

    def __repr__(self):
        return f"RationalFunction({self.to_string(1, 'u')})"


def _eval_mod(p: fmpq_poly, u0: int, mod: int) -> int:
    acc = 0
    for c in reversed(p.coeffs()):
        acc = (acc * u0 + int(c.p) * pow(int(c.q), -1, mod)) % mod
    return acc


def _coeff_map(p: fmpq_poly, shift: int) -> dict[int, Fraction]:
    return {k + shift: Fraction(int(c.p), int(c.q)) for k, c in enumerate(p.coeffs()) if c != 0}


def _laurent_str(coeffs: Mapping[int, Fraction], root_order: int, var: str) -> str:
    parts = []
    for k in sorted(coeffs, reverse=True):
        c = coeffs[k]
        exp = Fraction(k, root_order)
        if exp == 0:
            mono = ""
        elif exp == 1:
            mono = var
        elif exp.denominator == 1:
            mono = f"{var}^{exp.numerator}"
        else:
            mono = f"{var}^({exp})"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _normalize(e: int, num: fmpq_poly, den: fmpq_poly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return 0, _P_ZERO, _P_ONE
    v = _valuation(num)
    if v:
        num = num.right_shift(v)
        e += v
    w = _valuation(den)
    if w:
        den = den.right_shift(w)
        e -= w
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
    return e, num, den


ZERO = RationalFunction(0, _P_ZERO, _P_ONE, _canonical=True)
ONE = RationalFunction(0, _P_ONE, _P_ONE, _canonical=True)

_U_POW_CACHE: dict[int, RationalFunction] = {}


def u_power(k: int) -> RationalFunction:
    r = _U_POW_CACHE.get(k)
    if r is None:
        r = RationalFunction(k, _P_ONE, _P_ONE, _canonical=True)
        _U_POW_CACHE[k] = r
    return r


def from_laurent(coeffs: Mapping[int, Fraction | int]) -> RationalFunction:
    """Build sum(c * u**k) from an exponent -> coefficient map."""
    coeffs = {k: Fraction(c) for k, c in coeffs.items() if c != 0}
    if not coeffs:
        return ZERO
    lo = min(coeffs)
    hi = max(coeffs)
    vec = [fmpq(0)] * (hi - lo + 1)
    for k, c in coeffs.items():
        vec[k - lo] = fmpq(c.numerator, c.denominator)
    return RationalFunction(lo, fmpq_poly(vec), _P_ONE, _canonical=True)


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:(q|u)(?:\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*"
)


def parse_laurent(text: str, root_order: int = 1) -> RationalFunction:
    """Parse an integer-coefficient Laurent expression in q such as
    ``q^2 - 3 + 2*q^-1``; ``u`` may be used for the root q**(1/root_order).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent expression at {s[pos:]!r}")
        sign, coef, var, exp = m.groups()
        if coef is None and var is None:
            raise ValueError(f"cannot parse Laurent expression at {s[pos:]!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if var is None:
            k = 0
        else:
            k = int(exp) if exp is not None else 1
            if var == "q":
                k *= root_order
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
        pos = m.end()
    return from_laurent(coeffs)


def colored_integer(n: int, theta_ii: int, qi_exp: int) -> RationalFunction:
    """{n}_{q_i} = (theta^n q_i^n - q_i^-n) / (theta q_i - q_i^-1); q_i = u**qi_exp."""
    top = from_laurent({n * qi_exp: theta_ii ** n}) - u_power(-n * qi_exp)
    bot = from_laurent({qi_exp: theta_ii}) - u_power(-qi_exp)
    return top / bot


def colored_factorial(n: int, theta_ii: int, qi_exp: int) -> RationalFunction:
    out = ONE
    for t in range(1, n + 1):
        out = out * colored_integer(t, theta_ii, qi_exp)
    return out


def super_binomial(n: int, k: int, i: int, datum) -> RationalFunction:
    """Colored q-binomial [n choose k]_{q_i} for index position ``i`` of ``datum``."""
    if k < 0 or k > n:
        raise ValueError(f"binomial domain error: need 0 <= k <= n, got n={n}, k={k}")
    th = datum.theta[i][i]
    qe = datum.root_order * datum.s[i]
    return colored_factorial(n, th, qe) / (
        colored_factorial(k, th, qe) * colored_factorial(n - k, th, qe)
    )


def rf_sum(values: Iterable[RationalFunction]) -> RationalFunction:
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc
