import pytest

from qborcherds.algebra import TensorElement
from qborcherds.checks import algebra, weight
from qborcherds.errors import DepthExceeded
from qborcherds.modules import build_irreducible
from qborcherds.rmatrix import RMatrix, r_operator, ybe_check
from qborcherds.scalars import ONE, ZERO


@pytest.fixture(scope="module")
def sl2():
    return RMatrix(algebra("sl2"))


def test_dual_basis_at_simple_root(sl2):
    a = sl2.alg
    q = a.qexp(1)
    can = sl2.dual_bases((1,))
    assert can.xs == [a.e(0)]
    assert can.ys == [a.f(0).scale(-(q - q.inverse()))]


@pytest.mark.parametrize("name", ["sl2", "osp12", "a2", "borcherds_mixed"])
def test_dual_bases_are_dual(name):
    a = algebra(name)
    rm = RMatrix(a)
    for beta in a.datum.roots_up_to(3):
        m = rm.dual_bases(beta).duality_matrix(a)
        n = len(m)
        assert m == [[ONE if r == s else ZERO for s in range(n)] for r in range(n)]


def test_weight_zero_summand_is_unit(sl2):
    a = sl2.alg
    assert sl2.c_summand((0,)) == TensorElement.pure(a.one(), a.one())
    assert sl2.quasi_R(0).total(a) == TensorElement.pure(a.one(), a.one())


@pytest.mark.parametrize("name", ["sl2", "osp12", "odd_isotropic", "a2"])
def test_six_identities(name):
    a = algebra(name)
    rm = RMatrix(a)
    for beta in a.datum.roots_up_to(2):
        for i, k in a.datum.letters:
            assert all(rm.six_identities(beta, i, k).values()), beta


@pytest.mark.parametrize("name", ["sl2", "osp12"])
def test_inverse_and_intertwining(name):
    rm = RMatrix(algebra(name))
    assert all(rm.inverse_check(3).values())
    assert all(rm.intertwining_check(2).values())
    assert all(rm.p3_p4_check(2).values())
    assert all(rm.p5_p6_check(2).values())


def test_depth_guard(sl2):
    with pytest.raises(DepthExceeded):
        sl2.quasi_R(sl2.alg.reg.depth + 1)


def test_r_operator_and_ybe_mixed_modules():
    a = algebra("sl2")
    rm = RMatrix(a)
    V1 = build_irreducible(a, weight(a.datum, 1), a.depth)
    V2 = build_irreducible(a, weight(a.datum, 2), a.depth)
    op = r_operator(rm, V1, V2)
    assert op.blockwise_invertible()
    assert op.inverse_matches()
    assert all(op.intertwines(g) for _, g in a.generators())
    rep = ybe_check(rm, V1, V2, V1)
    assert rep.dim == 12
    assert rep.ok and rep.residual_entries == 0


def test_ybe_osp():
    a = algebra("osp12")
    V = build_irreducible(a, weight(a.datum, 2), a.depth)
    rep = ybe_check(RMatrix(a), V, V, V)
    assert rep.total_entries == 27 * 27
    assert rep.ok
