import pytest
from hypothesis import given

from pbwdisc.errors import ParseError
from pbwdisc.parsing import parse_commpoly, parse_element, parse_element_list, parse_scalar
from pbwdisc.presets import preset, quantum_plane_extension

from strategies import K3, commpolys, cyclotomic_scalars, ncpolys

W2, C2 = preset("Wn:2")
KQ3 = quantum_plane_extension(3)[0]


def test_grammar_basics():
    assert parse_element("x2*x1", W2).to_text() == "-x1*x2 + 1"
    assert parse_element("-(x1 + 1)^2", W2).to_text() == "-x1^2 - 2*x1 - 1"
    assert parse_element("1/2*x1 - 3/4", W2).to_text() == "1/2*x1 - 3/4"
    assert parse_commpoly("(z1 - z2)*(z1 + z2)", 2) == parse_commpoly("z1^2 - z2^2", 2)
    assert parse_scalar("-3/6") == parse_scalar("-1/2")
    assert len(parse_element_list("x1, x2, x1*x2", W2)) == 3


@pytest.mark.parametrize("text", ["x1 +", "x0", "x3", "2/0", "x1 ^ x2", "(x1", "x1 x2", "y1", "x"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_element(text, W2)


def test_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_element("x1 + $", W2)
    assert err.value.location == 5


def test_center_variables_need_a_center():
    with pytest.raises(ParseError):
        parse_element("z1*x1", W2)
    assert parse_element("z2", W2, C2) == parse_element("x2^2", W2)


@given(ncpolys(W2, max_terms=5, max_exp=3))
def test_ncpoly_round_trip(f):
    assert parse_element(f.to_text(), W2) == f


@given(ncpolys(KQ3, max_terms=4, max_exp=3, coeffs=cyclotomic_scalars()))
def test_ncpoly_round_trip_cyclotomic(f):
    assert parse_element(f.to_text(), KQ3) == f


@given(commpolys(3, max_terms=5, max_deg=3, coeffs=cyclotomic_scalars()))
def test_commpoly_round_trip_cyclotomic(f):
    assert parse_commpoly(str(f), 3, K3) == f
