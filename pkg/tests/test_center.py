import pytest

from qborcherds.center import (
    casimir_rank1,
    casimir_variant,
    check_image_constraints,
    chi,
    f_lambda,
    harish_chandra,
    highest_weight_scalar,
    in_restricted_torus,
    is_central,
    weyl_invariant,
    xi_z_lambda,
)
from qborcherds.checks import algebra, rank1_casimir, weight
from qborcherds.errors import DomainError
from qborcherds.modules import build_irreducible
from qborcherds.scalars import ONE


def test_variants():
    assert casimir_variant(algebra("sl2").datum, 0) == "even"
    assert casimir_variant(algebra("osp12").datum, 0) == "odd"
    assert casimir_variant(algebra("odd_isotropic").datum, 0) == "isotropic-odd"


def test_sl2_harish_chandra_image():
    a = algebra("sl2")
    z = casimir_rank1(a)
    assert is_central(a, z)
    q = a.qexp(1)
    xi = q - q.inverse()
    c = (xi * xi).inverse()
    assert harish_chandra(a, z) == {(1, 0): c, (-1, 0): c}


def test_generator_is_not_central():
    a = algebra("sl2")
    assert not is_central(a, a.e(0))
    assert not is_central(a, a.toral((1, 0)))


def test_image_constraints_reject_lone_toral():
    d = algebra("sl2").datum
    assert not weyl_invariant(d, {(1, 0): ONE})
    assert weyl_invariant(d, {(1, 0): ONE, (-1, 0): ONE})
    # alpha(d_1) = 1 is odd, alpha(h_1) = 2 is fine
    assert in_restricted_torus(d, {(1, 0): ONE})
    assert not in_restricted_torus(d, {(0, 1): ONE})


@pytest.mark.parametrize("name", ["sl2", "osp12", "odd_isotropic"])
def test_central_character_matches_highest_weight_scalar(name):
    a = algebra(name, 6)
    z = rank1_casimir(a)
    assert is_central(a, z)
    t = harish_chandra(a, z)
    assert all(check_image_constraints(a.datum, t).values())
    for hv in [(0,), (2,), (5,)]:
        lam = weight(a.datum, *hv)
        lr = tuple(x + r for x, r in zip(lam, a.datum.rho))
        assert chi(a, lr, t) == highest_weight_scalar(a, z, lam)


def test_isotropic_even_has_no_element():
    from qborcherds.algebra import Algebra
    from qborcherds.datum import CartanDatum

    d = CartanDatum.from_dict(dict(index=["1"], A=[[0]], s=[1], m=[1], theta=[[1]]))
    with pytest.raises(DomainError):
        casimir_rank1(Algebra(d, 2))


def test_isotropic_odd_needs_coweight():
    with pytest.raises(DomainError):
        casimir_rank1(algebra("odd_isotropic"))


@pytest.mark.parametrize("name,hv", [("sl2", (1,)), ("osp12", (2,))])
def test_f_lambda_is_ad_invariant(name, hv):
    a = algebra(name)
    V = build_irreducible(a, weight(a.datum, *hv), a.depth)
    base = f_lambda(a, V, a.one())
    for _, g in a.generators():
        for v in [a.one()] + [x for _, x in a.generators()]:
            assert f_lambda(a, V, a.ad(g, v)) == a.counit(g) * f_lambda(a, V, v)
    assert base


def test_xi_z_lambda_examples():
    a = algebra("sl2")
    t = xi_z_lambda(a, weight(a.datum, 1), 4)
    assert t == {(-1, 0): ONE, (1, 0): ONE}
    o = algebra("osp12")
    t = xi_z_lambda(o, weight(o.datum, 2), 4)
    assert t == {(-2, 0): ONE, (0, 0): -ONE, (2, 0): ONE}
    assert all(check_image_constraints(o.datum, t).values())


def test_xi_z_lambda_needs_finite_type():
    b = algebra("borcherds_mixed")
    with pytest.raises(DomainError):
        xi_z_lambda(b, weight(b.datum, 1, 1), 3)
