"""Central elements, the Harish-Chandra map and supertrace functionals.

Toral elements (members of U^0) are plain dicts ``{coweight: coefficient}``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, AlgebraElement
from .datum import CartanDatum, Coweight, Weight
from .errors import DomainError, NotExhausted
from .linalg import EXACT
from .modules import HighestWeightModule, build_irreducible, build_verma
from .scalars import ONE, ZERO, RationalFunction

Toral = dict


def casimir_variant(datum: CartanDatum, i: int) -> str:
    a = datum.A[i][i]
    if a != 0:
        return "even" if not datum.is_odd(i) else "odd"
    return "isotropic-odd" if datum.is_odd(i) else "isotropic-even"


def casimir_rank1(alg: Algebra, i: int = 0, variant: str | None = None,
                  h: Coweight | None = None) -> AlgebraElement:
    """The rank-1 central element attached to index ``i``."""
    d = alg.datum
    actual = casimir_variant(d, i)
    if variant is None:
        variant = actual
    if variant != actual:
        raise DomainError(f"index {d.index[i]} has variant {actual}, not {variant}")
    if variant == "isotropic-even":
        raise DomainError("an isotropic even index has no central element outside U^0")
    q = alg.qexp
    xi_inv = alg.sc.inv_xi[i]
    f, e = alg.f(i), alg.e(i)
    K, Kinv = alg.toral(d.k_coweight(d.simple_root(i))), alg.toral(d.k_coweight(d.simple_root(i), -1))
    sa = d.s[i] * d.A[i][i]
    if variant == "even":
        tor = K.scale((1 - q(-sa)).inverse()) - Kinv.scale((1 - q(sa)).inverse())
        return f * e + tor.scale(xi_inv)
    if variant == "odd":
        mid = K.scale((1 - q(sa)) / (1 + q(sa))) - Kinv.scale((1 - q(-sa)) / (1 + q(-sa)))
        K2 = alg.toral(d.k_coweight(d.simple_root(i), 2))
        Km2 = alg.toral(d.k_coweight(d.simple_root(i), -2))
        last = K2.scale(((1 + q(-sa)) ** 2).inverse()) + Km2.scale(((1 + q(sa)) ** 2).inverse())
        return f * f * e * e + (f * mid * e).scale(xi_inv) - last.scale(xi_inv * xi_inv)
    # isotropic odd: C_{ih}
    if h is None:
        raise DomainError("the isotropic odd element needs a coweight h")
    ah = d.root_on_coweight(d.simple_root(i), h)
    if ah == 0:
        raise DomainError("alpha_i(h) must be nonzero")
    qh = alg.toral(h)
    return f * qh * e + (qh * (K - Kinv)).scale(xi_inv * (1 - q(-ah)).inverse())


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b - b * a


def is_central(alg: Algebra, z: AlgebraElement) -> bool:
    return all(commutator(z, g).is_zero() for _, g in alg.generators())


def harish_chandra(alg: Algebra, z: AlgebraElement) -> Toral:
    rho = alg.datum.rho
    out: Toral = {}
    for h, c in z.toral_part().items():
        v = c * alg.qexp(-sum(r * x for r, x in zip(rho, h)))
        if v:
            out[h] = out.get(h, ZERO) + v
    return {h: c for h, c in out.items() if c}


def toral_multiply(a: Toral, b: Toral) -> Toral:
    out: Toral = {}
    for h1, c1 in a.items():
        for h2, c2 in b.items():
            h = tuple(x + y for x, y in zip(h1, h2))
            out[h] = out.get(h, ZERO) + c1 * c2
    return {h: c for h, c in out.items() if c}


def chi(alg: Algebra, lam: Weight, t: Toral) -> RationalFunction:
    acc = ZERO
    for h, c in t.items():
        acc = acc + c * alg.qexp(sum(l * x for l, x in zip(lam, h)))
    return acc


def weyl_invariant(datum: CartanDatum, t: Toral) -> bool:
    for h, c in t.items():
        for i in range(datum.rank):
            if datum.A[i][i] == 0:
                continue
            r = datum.reflect_coweight(i, h)
            if any(isinstance(x, Fraction) for x in r):
                return False
            if t.get(tuple(r)) != c:
                return False
    return True


def in_restricted_torus(datum: CartanDatum, t: Toral) -> bool:
    for h in t:
        for i in range(datum.rank):
            ah = datum.root_on_coweight(datum.simple_root(i), h)
            base = datum.s[i] * datum.A[i][i]
            if not datum.is_odd(i):
                mod = base
            elif datum.A[i][i] != 0:
                mod = 2 * base
            else:
                continue
            if mod == 0:
                if ah != 0:
                    return False
            elif ah % mod:
                return False
    return True


def check_image_constraints(datum: CartanDatum, t: Toral) -> dict:
    return {"weyl_invariant": weyl_invariant(datum, t), "restricted": in_restricted_torus(datum, t)}


def toral_independent(elems: list[Toral]) -> bool:
    support = sorted({h for t in elems for h in t})
    rows = [[t.get(h, ZERO) for h in support] for t in elems]
    return len(EXACT.row_profile(rows, len(support))) == len(elems)


def highest_weight_scalar(alg: Algebra, z: AlgebraElement, lam: Weight) -> RationalFunction:
    """The scalar by which z acts on the highest weight vector of M(lam)."""
    V = build_verma(alg, lam, 0)
    zero = alg.zero_root
    res = V.act(z, zero, [ONE])
    for beta, vec in res.items():
        if any(beta):
            raise DomainError("element does not preserve the highest weight line")
    return res.get(zero, [ZERO])[0]


# finite type ---------------------------------------------------------------


def k_two_rho_inverse(alg: Algebra) -> AlgebraElement:
    two_rho = alg.datum.two_rho_in_Q()
    return alg.K(two_rho, -1)


def f_lambda(alg: Algebra, module: HighestWeightModule, u: AlgebraElement,
             k2rho_inv: AlgebraElement | None = None) -> RationalFunction:
    """str(u K_{2rho}^{-1}) on an exhausted irreducible module."""
    if k2rho_inv is None:
        k2rho_inv = k_two_rho_inverse(alg)
    return module.supertrace(u * k2rho_inv)


def half_qhat_coordinates(datum: CartanDatum, mu: Weight) -> tuple[int, ...]:
    """c with 2mu = sum c_i (1/s_i) alpha_i, or DomainError if not integral."""
    n = datum.rank
    mat = [[Fraction(datum.A[j][i], datum.s[i]) for i in range(n)] for j in range(n)]
    rhs = [Fraction(2 * mu[j]) for j in range(n)]
    from .datum import _solve

    sol = _solve(mat, rhs)
    if any(x.denominator != 1 for x in sol):
        raise DomainError("weight is not in (1/2) Q-hat")
    return tuple(int(x) for x in sol)


def xi_z_lambda(alg: Algebra, lam: Weight, depth: int) -> Toral:
    """sum over weights mu of theta(lam-mu, lam-mu) dim V(lam)_mu K_{-2mu}."""
    d = alg.datum
    if not d.is_finite_type():
        raise DomainError("xi(z_lambda) is defined for finite-type data")
    half_qhat_coordinates(d, lam)
    V = build_irreducible(alg, lam, depth)
    if not V.is_exhausted():
        raise NotExhausted("irreducible module not exhausted at this depth")
    n = d.rank
    out: Toral = {}
    for beta in V.weights():
        mu = d.weight_sub(lam, beta)
        c = half_qhat_coordinates(d, mu)
        h = tuple(-x for x in c) + (0,) * n
        val = RationalFunction.from_int(V.dim(beta) * d.theta_bicharacter(beta, beta))
        out[h] = out.get(h, ZERO) + val
    return {h: c for h, c in out.items() if c}


def format_toral(alg: Algebra, t: Toral) -> str:
    from .algebra import format_coweight

    if not t:
        return "0"
    parts = []
    for h in sorted(t):
        c = t[h].to_string(alg.D)
        parts.append(f"({c})*{format_coweight(alg.datum, h)}")
    return " + ".join(parts)
