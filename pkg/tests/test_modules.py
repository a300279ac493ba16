import pytest

from qborcherds.checks import algebra, random_monomials, weight
from qborcherds.errors import DomainError, NotExhausted
from qborcherds.modules import (
    build_irreducible,
    build_verma,
    character_formula,
    check_uv_iso,
    r_lambda,
)
from qborcherds.scalars import ONE, ZERO


def test_sl2_two_dimensional():
    a = algebra("sl2")
    V = build_irreducible(a, weight(a.datum, 1), 4)
    assert [V.dim((n,)) for n in range(5)] == [1, 1, 0, 0, 0]
    assert V.is_exhausted()
    assert V.supertrace(a.one()) == ONE * 2


def test_osp_three_dimensional_has_superdimension_one():
    a = algebra("osp12")
    V = build_irreducible(a, weight(a.datum, 2), 4)
    assert [V.dim((n,)) for n in range(5)] == [1, 1, 1, 0, 0]
    assert V.supertrace(a.one()) == ONE


def test_trivial_module():
    a = algebra("sl2")
    V = build_irreducible(a, weight(a.datum, 0), 3)
    assert V.dims() == {(0,): 1, (1,): 0, (2,): 0, (3,): 0}


def test_non_dominant_rejected():
    a = algebra("sl2")
    with pytest.raises(DomainError):
        build_irreducible(a, weight(a.datum, -1), 3)


@pytest.mark.parametrize("name,hv", [("sl2", (1,)), ("a2", (1, 0)), ("borcherds_mixed", (1, 1))])
def test_verma_dims_match_registry(name, hv):
    a = algebra(name)
    V = build_verma(a, weight(a.datum, *hv), 3)
    for beta in a.datum.roots_up_to(3):
        assert V.dim(beta) == a.reg.dim(beta)


def test_e_kills_highest_weight_vector():
    a = algebra("a2")
    V = build_verma(a, weight(a.datum, 1, 2), 2)
    for i in range(2):
        out = V.act(a.e(i), (0, 0), [ONE])
        assert all(not any(v) for v in out.values())


@pytest.mark.parametrize("name,hv", [("sl2", (3,)), ("osp12", (2,)), ("a2", (1, 1)), ("borcherds_mixed", (2, 1))])
def test_actions_satisfy_r4_and_move_weights(name, hv):
    a = algebra(name)
    d = a.datum
    V = build_irreducible(a, weight(d, *hv), 3)
    gens = a.generators()
    # two lowering steps from height 1 stay inside the truncation
    for beta in d.roots_up_to(1):
        n = V.dim(beta)
        for j in range(n):
            vec = [ONE if t == j else ZERO for t in range(n)]
            for (_, x) in gens:
                for (_, y) in gens:
                    lhs = V.act(x * y, beta, vec)
                    xy = _apply(V, x, _apply(V, y, {beta: vec}))
                    assert _clean(lhs) == _clean(xy)
                out = V.act(x, beta, vec)
                deg = x.degree()
                for gamma, v in out.items():
                    if any(v):
                        assert gamma == tuple(b - g for b, g in zip(beta, deg))


def _apply(V, a, vecs):
    out = {}
    for beta, v in vecs.items():
        for g, w in V.act(a, beta, v).items():
            if g in out:
                out[g] = [p + r for p, r in zip(out[g], w)]
            else:
                out[g] = list(w)
    return out


def _clean(vecs):
    return {b: v for b, v in vecs.items() if any(v)}


@pytest.mark.parametrize("name,hv", [("sl2", (2,)), ("osp12", (2,))])
def test_supertrace_is_colored_symmetric(name, hv):
    a = algebra(name)
    V = build_irreducible(a, weight(a.datum, *hv), 4)
    xs = random_monomials(a, 8, 2, seed=4)
    for x, y in zip(xs, xs[1:]):
        t = a.theta(x.degree(), y.degree())
        assert V.supertrace(x * y) == V.supertrace(y * x) * t


def test_supertrace_needs_exhaustion():
    a = algebra("sl2")
    V = build_irreducible(a, weight(a.datum, 5), 2)
    with pytest.raises(NotExhausted):
        V.supertrace(a.one())


def test_uv_isomorphism():
    a = algebra("sl2")
    assert check_uv_iso(a, weight(a.datum, 3), (2,))
    assert check_uv_iso(a, weight(a.datum, 3), (0,))
    with pytest.raises(DomainError):
        check_uv_iso(a, weight(a.datum, 1), (2,))
    b = algebra("borcherds_mixed")
    for gamma in b.datum.roots_up_to(3):
        assert check_uv_iso(b, weight(b.datum, 3, 1), gamma)


def test_r_lambda():
    d = algebra("borcherds_mixed").datum
    # lambda perpendicular to the imaginary node: each charge copy contributes
    assert len(r_lambda(d, weight(d, 1, 0), 3)) > 1
    assert r_lambda(d, weight(d, 1, 1), 3) == [(0, 0)]


@pytest.mark.parametrize("name,hv", [
    ("sl2", (1,)), ("sl2", (3,)), ("osp12", (2,)), ("a2", (1, 1)),
    ("borcherds_mixed", (1, 0)), ("borcherds_mixed", (1, 1)),
])
def test_character_formula_matches_module(name, hv):
    a = algebra(name)
    lam = weight(a.datum, *hv)
    V = build_irreducible(a, lam, 4)
    chars = character_formula(a.datum, lam, 4, a.reg)
    for beta in a.datum.roots_up_to(4):
        assert chars.get(beta, 0) == V.dim(beta)
