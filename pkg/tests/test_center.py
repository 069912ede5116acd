from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbwdisc.algebra import GeneratorMap, omega
from pbwdisc.automorphisms import z_action
from pbwdisc.center import (
    decompose_over_center,
    left_mult_matrix,
    regular_trace,
    validate_center,
)
from pbwdisc.errors import NotCentral
from pbwdisc.parsing import parse_commpoly, parse_element
from pbwdisc.poly import CommPoly, PolyMatrix, is_cwlt, principal_term
from pbwdisc.presets import preset, quantum_plane_extension, v_n, weyl_minus_one

from oracles import oracle_trace
from strategies import commpolys, ncpolys, odd_ncpolys

W2, C2 = preset("Wn:2")
W4, C4 = preset("Wn:4")
KQ3, KQ3_POWERS = quantum_plane_extension(3)
CQ3 = validate_center(KQ3, KQ3_POWERS)


def test_validate_center_examples():
    assert C2.rank == 4
    assert [W2.monomial(e).to_text() for e in C2.basis] == ["1", "x1", "x2", "x1*x2"]
    assert CQ3.rank == 9
    with pytest.raises(NotCentral) as err:
        validate_center(W2, (1, 2))
    assert (err.value.i, err.value.j) == (0, 1)
    assert str(err.value) == "x1^1 does not commute with x2"
    with pytest.raises(ValueError):
        validate_center(W2, (2,))


def test_decompose_examples():
    d = decompose_over_center(parse_element("x1^3", W2), C2)
    assert d.components == {(1, 0): CommPoly.variable(2, 0)}
    d = decompose_over_center(parse_element("x1*x2", W2), C2)
    assert d.component((1, 1)) == CommPoly.one(2)
    assert decompose_over_center(W2.zero(), C2).components == {}


@given(ncpolys(W4, max_exp=4))
def test_decompose_round_trip(f):
    assert decompose_over_center(f, C4).reassemble() == f


@given(ncpolys(KQ3, max_exp=5))
def test_decompose_round_trip_cyclotomic(f):
    assert decompose_over_center(f, CQ3).reassemble() == f


def test_left_mult_examples():
    assert left_mult_matrix(W2.one(), C2) == PolyMatrix.identity(4, 2)
    m = left_mult_matrix(W2.gen(0), C2)
    assert all(m[i, i].is_zero() for i in range(4))


@given(ncpolys(W2, 3, 3), ncpolys(W2, 3, 3))
def test_left_mult_is_a_representation(f, g):
    # rows hold coordinates of f*X_e, so the row-convention matrix reverses
    # products; its transpose (columns = coordinates) is multiplicative
    lm = lambda h: left_mult_matrix(h, C2)
    assert lm(f * g) == lm(g) @ lm(f)
    assert lm(f * g).transpose() == lm(f).transpose() @ lm(g).transpose()


def test_trace_examples():
    assert regular_trace(W4.one(), C4) == CommPoly.constant(4, 16)
    assert regular_trace(parse_element("x1*x2", W4), C4) == CommPoly.constant(4, 8)
    assert regular_trace(parse_element("x1*x2", W2), C2) == CommPoly.constant(2, 2)
    assert regular_trace(W2.gen(0), C2).is_zero()


@given(ncpolys(W2, 4, 4))
def test_trace_matches_oracle_w2(f):
    assert regular_trace(f, C2) == oracle_trace(f, C2)


@given(ncpolys(KQ3, 3, 4))
def test_trace_matches_oracle_cyclotomic(f):
    assert regular_trace(f, CQ3) == oracle_trace(f, CQ3)


@given(ncpolys(W4, 3, 3), ncpolys(W4, 3, 3))
def test_trace_symmetry_w4(a, b):
    assert regular_trace(a * b, C4) == regular_trace(b * a, C4)


@given(ncpolys(KQ3, 3, 4), ncpolys(KQ3, 3, 4))
def test_trace_symmetry_cyclotomic(a, b):
    assert regular_trace(a * b, CQ3) == regular_trace(b * a, CQ3)


@given(commpolys(4, max_terms=3, max_deg=2), ncpolys(W4, 3, 3))
def test_trace_is_r_linear(r, f):
    assert regular_trace(C4.embed(r) * f, C4) == r * regular_trace(f, C4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_odd_elements_have_zero_trace(n):
    spec, center = preset(f"Wn:{n}")

    @given(odd_ncpolys(spec))
    def check(f):
        assert regular_trace(f, center).is_zero()

    check()


@given(st.lists(ncpolys(W4, 2, 2), min_size=1, max_size=2).map(lambda fs: fs * 2))
def test_trace_of_even_omega_vanishes(fs):
    # w = 2 or 4 arguments
    assert regular_trace(omega(fs), C4).is_zero()


def test_trace_of_random_vn_even_omega():
    spec = v_n(4, {(0, 1): 2, (0, 2): -1, (1, 3): 3})
    c = validate_center(spec, (2, 2, 2, 2))
    assert regular_trace(omega(spec.gens()), c).is_zero()


@pytest.mark.parametrize("n", [4, 6])
def test_increasing_monomial_trace_table(n):
    spec = weyl_minus_one(n)
    center = validate_center(spec, (2,) * n)
    for s in range(n + 1):
        expected = CommPoly.constant(n, 2 ** (n - s // 2)) if s % 2 == 0 else CommPoly.zero(n)
        for idx in combinations(range(n), s):
            e = tuple(int(i in idx) for i in range(n))
            assert regular_trace(spec.monomial(e), center) == expected


def test_square_traces_have_cwlt_tails():
    for s in range(5):
        for idx in combinations(range(4), s):
            e = tuple(int(i in idx) for i in range(4))
            x = W4.monomial(e)
            t = regular_trace(x * x, C4)
            top = tuple(int(i in idx) for i in range(4))
            pr = principal_term(t, C4.weights)
            assert set(pr.terms) == {top}
            assert all(m == top or is_cwlt(m, top) for m in t.terms)


@given(ncpolys(W4, 3, 3))
def test_trace_commutes_with_monomial_automorphisms(f):
    for perm, scales in [((0, 1, 2, 3), (-1,) * 4), ((2, 0, 3, 1), (1,) * 4), ((1, 0, 3, 2), (-1,) * 4)]:
        g = GeneratorMap.monomial(W4, perm, scales)
        assert z_action(C4, perm, scales)(regular_trace(f, C4)) == regular_trace(g(f), C4)


def test_trace_with_center_variables_in_expressions():
    f = parse_element("z1*x1*x2", W2, C2)
    assert f == parse_element("x1^3*x2", W2)
    assert regular_trace(f, C2) == parse_commpoly("2*z1", 2)
