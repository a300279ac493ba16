import itertools

import pytest

from qborcherds.checks import INVALID_DATA
from qborcherds.datum import SAMPLE_NAMES, CartanDatum, parse_weight, sample_datum
from qborcherds.errors import DatumAxiomError, DomainError, ParseError


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_samples_validate(name):
    sample_datum(name).validate()


@pytest.mark.parametrize("axiom", sorted(INVALID_DATA))
def test_invalid_data_report_their_axiom(axiom):
    with pytest.raises(DatumAxiomError) as err:
        CartanDatum.from_dict(INVALID_DATA[axiom]).validate()
    assert err.value.axiom == axiom


def test_malformed_json_is_a_parse_error():
    with pytest.raises((ParseError, DatumAxiomError)):
        CartanDatum.from_json("{not json")


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_json_round_trip(name):
    d = sample_datum(name)
    again = CartanDatum.from_json(d.to_json())
    assert again.to_dict() == d.to_dict()
    assert again.digest == d.digest


def small_roots(d, bound=2):
    return list(itertools.product(range(bound + 1), repeat=d.rank))


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_root_form_agrees_with_coweight_form(name):
    d = sample_datum(name)
    for b, c in itertools.product(small_roots(d), repeat=2):
        assert d.root_form(b, c) == d.coweight_form(d.h_beta(b), d.h_beta(c))
        assert d.root_form(b, c) == d.root_form(c, b)


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_theta_is_a_symmetric_bicharacter(name):
    d = sample_datum(name)
    roots = small_roots(d)
    for b, c in itertools.product(roots, repeat=2):
        assert d.theta_bicharacter(b, c) * d.theta_bicharacter(c, b) == 1
        for g in roots[:3]:
            bg = tuple(x + y for x, y in zip(b, g))
            assert d.theta_bicharacter(bg, c) == d.theta_bicharacter(b, c) * d.theta_bicharacter(g, c)


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_weight_form_is_integral_on_roots(name):
    d = sample_datum(name)
    for b, c in itertools.product(small_roots(d), repeat=2):
        v = d.weight_form(d.root_as_weight(b), d.root_as_weight(c))
        assert v == int(v)


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_reflections_are_involutions(name):
    d = sample_datum(name)
    lam = tuple(range(1, 2 * d.rank + 1))
    for i in range(d.rank):
        if d.A[i][i] == 0:
            continue
        assert d.reflect_weight(i, d.reflect_weight(i, lam)) == lam
        assert d.reflect_coweight(i, d.reflect_coweight(i, lam)) == lam
        ai = d.simple_root(i)
        assert d.reflect_root(i, ai) == tuple(-x for x in ai)


def test_two_rho():
    assert sample_datum("sl2").two_rho_in_Q() == (1,)
    assert sample_datum("a2").two_rho_in_Q() == (2, 2)
    assert sample_datum("osp12").two_rho_in_Q() == (1,)
    with pytest.raises(DomainError):
        sample_datum("borcherds_mixed").two_rho_in_Q()


def test_parse_weight():
    d = sample_datum("a2")
    assert parse_weight(d, "h1=2,d2=1") == (2, 0, 0, 1)
    assert parse_weight(d, "") == (0, 0, 0, 0)
    with pytest.raises(ParseError):
        parse_weight(d, "x1=2")


def test_dominance():
    d = sample_datum("sl2")
    assert d.is_dominant(parse_weight(d, "h1=3"))
    assert not d.is_dominant(parse_weight(d, "h1=-1"))
