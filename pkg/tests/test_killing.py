import pytest

from qborcherds.checks import algebra, low_triples
from qborcherds.killing import KillingForm
from qborcherds.linalg import EXACT
from qborcherds.scalars import ZERO


def test_toral_values():
    a = algebra("a2")
    kf = KillingForm(a)
    d = a.datum
    for h in [(1, 0, 0, 0), (0, 1, 1, 0), (2, -1, 0, 1)]:
        for g in [(1, 0, 0, 0), (0, 0, 0, 1), (1, 1, 0, 0)]:
            assert kf(a.toral(h), a.toral(g)) == a.qexp(-d.coweight_form(h, g) / 2)


def test_generator_pairing():
    a = algebra("sl2")
    kf = KillingForm(a)
    q = a.qexp(1)
    assert kf(a.e(0), a.f(0)) == -(q - q.inverse()).inverse()


def test_degree_mismatch_is_zero():
    a = algebra("a2")
    kf = KillingForm(a)
    assert kf(a.e(0), a.e(0)) == ZERO
    assert kf(a.e(0), a.f(1)) == ZERO
    assert kf(a.e(0), a.one()) == ZERO


@pytest.mark.parametrize("name", ["sl2", "osp12", "odd_isotropic"])
def test_invariance(name):
    a = algebra(name)
    kf = KillingForm(a)
    vs = low_triples(a, 1, [a.zero_h, a.datum.h_basis(0)])
    for _, u in a.generators():
        for v in vs:
            lhs_v = a.ad(u, v)
            for vp in vs:
                rhs = kf(v, a.adt(vp, u)) * a.theta(u.degree(), v.degree()) * a.theta(u.degree(), vp.degree())
                assert kf(lhs_v, vp) == rhs


@pytest.mark.parametrize("name,length", [("sl2", 2), ("osp12", 2), ("a2", 1)])
def test_nondegenerate_on_low_triples(name, length):
    a = algebra(name)
    kf = KillingForm(a)
    vs = low_triples(a, length, [a.zero_h, a.datum.h_basis(0)])
    gram = [[kf(x, y) for y in vs] for x in vs]
    assert len(EXACT.row_profile(gram, len(vs))) == len(vs)
