from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbwdisc.algebra import AlgebraSpec
from pbwdisc.center import validate_center
from pbwdisc.discriminant import (
    _CACHE,
    base_change_check,
    compound_certificate,
    compound_matrix,
    discriminant,
    omega_basis_block_diagonal,
    opposite_discriminant_check,
    question_matrix,
    tensor_discriminant_check,
    trace_matrix,
    verify_conjecture_412,
    vn_principal_term_check,
)
from pbwdisc.errors import DimensionMismatch, PreconditionViolation, SizeLimit
from pbwdisc.parsing import parse_commpoly
from pbwdisc.poly import CommPoly, PolyMatrix, bareiss_determinant, equal_up_to_unit
from pbwdisc.presets import preset, quantum_plane_extension, trivial_spec

from oracles import cofactor_det
from strategies import K3, matrices

W2, C2 = preset("Wn:2")
S2, CS2 = preset("kminus1:2")


def P(text, n=2):
    return parse_commpoly(text, n)


def test_w2_trace_matrix():
    tm = trace_matrix(W2, C2)
    expected = [["4", "0", "0", "2"], ["0", "4*z1", "2", "0"], ["0", "2", "4*z2", "0"], ["2", "0", "0", "-4*z1*z2 + 2"]]
    assert [[str(tm[i, j]) for j in range(4)] for i in range(4)] == expected


def test_w4_trace_matrix_is_symmetric_with_corner():
    W4, C4 = preset("Wn:4")
    tm = trace_matrix(W4, C4)
    assert tm.is_symmetric()
    assert tm[0, 0] == CommPoly.constant(4, 16)


def test_discriminant_examples():
    d = discriminant(W2, C2)
    assert d.raw_det == P("-16*(4*z1*z2 - 1)^2")
    assert d.principal == P("-256*z1^2*z2^2")
    assert d.dominating_sufficient and d.rank == 4
    assert equal_up_to_unit(discriminant(S2, CS2).raw_det, P("-256*z1^2*z2^2")) is not None
    spec, powers = quantum_plane_extension(3)
    dq = discriminant(spec, validate_center(spec, powers))
    assert equal_up_to_unit(dq.raw_det, P("z1^6*z2^6", 3)) is not None
    assert not dq.dominating_sufficient


def test_w2_discriminant_matches_cofactor_oracle():
    tm = trace_matrix(W2, C2)
    rows = [[tm[i, j] for j in range(4)] for i in range(4)]
    assert cofactor_det(rows, 2) == discriminant(W2, C2).raw_det


def test_size_limit():
    W4, C4 = preset("Wn:4")
    with pytest.raises(SizeLimit):
        discriminant(W4, C4, max_rank=8)


def test_parallel_workers_give_identical_results():
    W3, C3 = preset("Wn:3")
    serial = discriminant(W3, C3).raw_det
    _CACHE.clear()
    parallel = discriminant(W3, C3, workers=2).raw_det
    assert serial == parallel and str(serial) == str(parallel)
    assert trace_matrix(W3, C3, workers=2) == trace_matrix(W3, C3)


def test_base_change_examples():
    assert base_change_check(W2, C2, PolyMatrix.identity(4, 2))
    singular = PolyMatrix([[CommPoly.constant(2, v) for v in row] for row in
                           [[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]], 2)
    assert base_change_check(W2, C2, singular)
    with pytest.raises(DimensionMismatch):
        base_change_check(W2, C2, PolyMatrix.identity(3, 2))


@settings(max_examples=20)
@given(matrices(4, nvars=2, max_deg=1))
def test_base_change_law_w2(m):
    assert base_change_check(W2, C2, m)


@settings(max_examples=20)
@given(matrices(4, nvars=2, max_deg=1))
def test_base_change_law_skew(m):
    assert base_change_check(S2, CS2, m)


def test_tensor_identity():
    assert tensor_discriminant_check(W2, C2, W2, C2)
    assert tensor_discriminant_check(W2, C2, S2, CS2)
    t = trivial_spec()
    assert tensor_discriminant_check(W2, C2, t, validate_center(t, ()))


def test_opposite_identity():
    W4, C4 = preset("Wn:4")
    assert opposite_discriminant_check(W4, C4)
    kq = AlgebraSpec(2, q={(0, 1): K3.zeta()}, field=K3)
    assert opposite_discriminant_check(kq, validate_center(kq, (3, 3)))
    assert opposite_discriminant_check(S2, CS2)
    a = AlgebraSpec(2, q={(0, 1): -1}, a={(0, 1): 3})
    assert opposite_discriminant_check(a, validate_center(a, (2, 2)))


def test_conjecture_small_cases():
    r = verify_conjecture_412(2)
    assert r.D == P("4*z1*z2 - 1")
    assert r.omega_square_matches_D and r.unit1 == -1
    assert r.disc_matches_D_power and r.unit2 == -16
    r4 = verify_conjecture_412(4)
    assert r4.omega_square_matches_D and r4.disc_matches_D_power
    with pytest.raises(PreconditionViolation):
        verify_conjecture_412(3)
    with pytest.raises(SizeLimit):
        verify_conjecture_412(8)


def test_question_matrix_determinant():
    assert bareiss_determinant(question_matrix(2)) == P("4*z1*z2 - 1")


@pytest.mark.parametrize("a, n", [(1, 2), (1, 3), (1, 4), ({(0, 1): 2, (2, 3): -3}, 4), (0, 3)])
def test_principal_term_check(a, n):
    assert vn_principal_term_check(a, n)


def test_omega_basis_diagnostic_runs():
    assert omega_basis_block_diagonal(2) in (True, False)


@pytest.mark.parametrize("n", [2, 4])
def test_compound_route_agrees_with_direct_route(n):
    direct = verify_conjecture_412(n)
    cert = verify_conjecture_412(n, route="compound")
    assert cert.disc_matches_D_power and cert.unit2 == direct.unit2
    assert cert.unit1 == direct.unit1


def test_compound_certificate_n6():
    r = verify_conjecture_412(6, route="compound")
    assert r.omega_square_matches_D and r.unit1 == -8100
    assert r.disc_matches_D_power and r.unit2 == 2 ** 192
    cert = compound_certificate(6)
    assert len(cert.block_scalars) == 7 and all(cert.block_scalars)


def test_unknown_route():
    with pytest.raises(PreconditionViolation):
        verify_conjecture_412(2, route="magic")


@pytest.mark.parametrize("n", [3, 4])
def test_sylvester_franke_on_question_matrix(n):
    M = question_matrix(n)
    D = bareiss_determinant(M)
    for s in range(1, n + 1):
        assert bareiss_determinant(compound_matrix(M, s)) == D ** comb(n - 1, s - 1)


@given(st.integers(2, 3).flatmap(lambda n: matrices(n, nvars=2, max_deg=1)), st.integers(1, 3))
def test_sylvester_franke_random(m, s):
    s = min(s, m.rows)
    det = bareiss_determinant(m)
    assert bareiss_determinant(compound_matrix(m, s)) == det ** comb(m.rows - 1, s - 1)
