"""Acceptance criteria 1 to 9; criterion 8 is split per property.

Every test records a PASS/FAIL line with its wall time; the lines are printed
in the terminal summary (see conftest.py).  The n=6 conjecture instance is
opt-in: set PBWDISC_N6=1.
"""

import os
import random
import time
from contextlib import contextmanager
from itertools import combinations
from math import factorial

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pbwdisc.algebra import filtration_degree, omega, verify_automorphism_pair, verify_homomorphism
from pbwdisc.automorphisms import (
    affine_closure_check,
    build_elementary_odd_aut,
    discriminant_invariance_check,
    enumerate_monomial_automorphisms,
    explicit_automorphisms,
    z_action,
)
from pbwdisc.center import regular_trace, validate_center
from pbwdisc.discriminant import (
    base_change_check,
    discriminant,
    opposite_discriminant_check,
    tensor_discriminant_check,
    trace_matrix,
    verify_conjecture_412,
    vn_principal_term_check,
)
from pbwdisc.parsing import parse_commpoly
from pbwdisc.poly import CommPoly, bareiss_determinant, equal_up_to_unit, is_cwlt, principal_term
from pbwdisc.presets import preset, quantum_plane_extension, skew_minus_one, v_n, weyl_minus_one, with_center
from pbwdisc.suite import random_a_table

from oracles import cofactor_det
from strategies import commpolys, matrices, ncpolys, odd_ncpolys

RESULTS = []

PROPERTY = settings(
    max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large, HealthCheck.filter_too_much],
)


@contextmanager
def criterion(number, title, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and limit is not None and dt >= limit:
            ok = False
            title += f" (over {limit:g} s budget)"
        RESULTS.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} [{dt:.2f} s]")
    assert ok, f"criterion {number} exceeded its {limit} s budget"


def P(text, n=2, field=None):
    return parse_commpoly(text, n) if field is None else parse_commpoly(text, n, field)


def test_criterion_1_w2_trace_matrix_and_discriminant():
    with criterion(1, "W2 trace matrix and d = -16(4z1z2 - 1)^2", limit=1):
        spec, center = preset("Wn:2")
        tm = trace_matrix(spec, center)
        expected = [["4", "0", "0", "2"], ["0", "4*z1", "2", "0"],
                    ["0", "2", "4*z2", "0"], ["2", "0", "0", "-4*z1*z2 + 2"]]
        assert [[tm[i, j] for j in range(4)] for i in range(4)] == [[P(e) for e in row] for row in expected]
        assert discriminant(spec, center).raw_det == P("-16*(4*z1*z2 - 1)^2")


def test_criterion_2_skew_plane():
    with criterion(2, "k_{-1}[x1,x2] discriminant is a unit times -256 z1^2 z2^2", limit=1):
        spec, center = preset("kminus1:2")
        assert equal_up_to_unit(discriminant(spec, center).raw_det, P("-256*z1^2*z2^2")) is not None


def test_criterion_3_trace_table():
    with criterion(3, "trace of increasing monomials in W4 and W6", limit=5):
        for n in (4, 6):
            spec = weyl_minus_one(n)
            center = validate_center(spec, (2,) * n)
            checked = 0
            for s in range(n + 1):
                want = CommPoly.constant(n, 2 ** (n - s // 2)) if s % 2 == 0 else CommPoly.zero(n)
                for idx in combinations(range(n), s):
                    e = tuple(int(i in idx) for i in range(n))
                    assert regular_trace(spec.monomial(e), center) == want, (n, e)
                    checked += 1
            assert checked == 2 ** n


def _check_principal(spec, n):
    result = discriminant(spec, validate_center(spec, (2,) * n))
    d = result.raw_det
    top = (2 ** (n - 1),) * n
    pr = principal_term(d, (1,) * n)
    assert set(pr.terms) == {top} and pr.terms[top] != 0
    assert all(m == top or is_cwlt(m, top) for m in d.terms)
    return result


def test_criterion_4_principal_terms():
    with criterion(4, "principal term c*(z1..zn)^(2^(n-1)) for W2, W3, W4 and two random V4"):
        rng = random.Random(4090)
        tables = [(1, 2), (1, 3), (1, 4), (random_a_table(4, rng), 4), (random_a_table(4, rng), 4)]
        for a, n in tables:
            t0 = time.perf_counter()
            assert vn_principal_term_check(a, n)
            d = _check_principal(v_n(n, a), n)
            if n % 2 == 0:
                assert d.dominating_sufficient
            if a == 1 and n == 4:
                assert time.perf_counter() - t0 < 60


def test_criterion_5_conjecture_n2_n4():
    with criterion(5, "D-identities for n=2 (units -1, -16) and n=4", limit=300):
        r2 = verify_conjecture_412(2)
        assert r2.D == P("4*z1*z2 - 1")
        assert r2.omega_square_matches_D and r2.unit1 == -1
        assert r2.disc_matches_D_power and r2.unit2 == -16
        r4 = verify_conjecture_412(4)
        assert r4.omega_square_matches_D and r4.disc_matches_D_power


def test_criterion_5_n6_compound_certificate():
    with criterion("5 (n=6)", "D-identities for n=6 via the Omega-basis compound certificate"):
        r6 = verify_conjecture_412(6, route="compound")
        assert r6.omega_square_matches_D and r6.disc_matches_D_power


@pytest.mark.skipif(os.environ.get("PBWDISC_N6") != "1", reason="set PBWDISC_N6=1 for the 64x64 instance")
def test_criterion_5_conjecture_n6():
    with criterion("5 (n=6 direct)", "D-identities for n=6 by expanding the 64x64 determinant"):
        r6 = verify_conjecture_412(6)
        assert r6.omega_square_matches_D and r6.disc_matches_D_power


def test_criterion_6_automorphism_groups():
    with criterion(6, "Aut(W4) has 48 members, Aut(W2) torus of rank 1, k_{-1}[x1..x4] is S4 x torus^4", limit=30):
        spec = weyl_minus_one(4)
        g4 = enumerate_monomial_automorphisms(spec)
        members = explicit_automorphisms(g4)
        assert len(members) == 48 and g4.symmetry_rank == 0 and g4.symmetry_index == 48
        maps = set()
        for fam, s, m in members:
            assert verify_homomorphism(m)[0]
            assert verify_automorphism_pair(m, fam.inverse_map(s))
            maps.add(m)
        assert len(maps) == 48
        assert all(a.compose(b) in maps for a in maps for b in maps)

        g2 = enumerate_monomial_automorphisms(weyl_minus_one(2))
        assert len(g2.families) == 2 and all(f.torus_dim == 1 for f in g2.families)
        assert g2.symmetry_rank == 1

        gs = enumerate_monomial_automorphisms(skew_minus_one(4))
        assert gs.symmetry_rank == 4 and gs.structure() == "S4 ⋉ (K^×)^4"
        assert len(gs.families) == factorial(4)


def test_criterion_7_root_of_unity_example():
    with criterion(7, "ell=3 example: d is a unit times z1^6 z2^6, not dominating", limit=60):
        spec, powers = quantum_plane_extension(3)
        d = discriminant(spec, validate_center(spec, powers))
        assert equal_up_to_unit(d.raw_det, P("z1^6*z2^6", 3, spec.field)) is not None
        assert not d.dominating_sufficient


# criterion 8 property suites, 100 derandomized cases each

W2, C2 = preset("Wn:2")
W4, C4 = preset("Wn:4")
S2, CS2 = preset("kminus1:2")
W4_MEMBERS = explicit_automorphisms(enumerate_monomial_automorphisms(W4))


@PROPERTY
@given(ncpolys(W4, 3, 3), ncpolys(W4, 3, 3))
def _trace_symmetry(a, b):
    assert regular_trace(a * b, C4) == regular_trace(b * a, C4)


@PROPERTY
@given(commpolys(4, max_terms=3, max_deg=2), commpolys(4, max_terms=3, max_deg=2), ncpolys(W4, 3, 3), ncpolys(W4, 3, 3))
def _r_linearity(r, s, f, g):
    lhs = regular_trace(C4.embed(r) * f + C4.embed(s) * g, C4)
    assert lhs == r * regular_trace(f, C4) + s * regular_trace(g, C4)


@PROPERTY
@given(st.sampled_from([2, 3, 4]).flatmap(lambda n: st.tuples(st.just(n), odd_ncpolys(weyl_minus_one(n)))),
       st.lists(ncpolys(W4, 2, 2), min_size=1, max_size=2))
def _vanishing(odd, fs):
    n, f = odd
    assert regular_trace(f, validate_center(f.spec, (2,) * n)).is_zero()
    assert regular_trace(omega(fs * 2), C4).is_zero()


@PROPERTY
@given(ncpolys(W4, max_exp=2).filter(bool), ncpolys(W4, max_exp=2).filter(bool))
def _degree_additivity(f, g):
    assert filtration_degree(f * g) == filtration_degree(f) + filtration_degree(g)


@PROPERTY
@given(st.sampled_from([(W2, C2), (S2, CS2)]), matrices(4, nvars=2, max_deg=1))
def _base_change(ac, m):
    assert base_change_check(ac[0], ac[1], m)


@PROPERTY
@given(ncpolys(W4, 3, 3), st.integers(0, len(W4_MEMBERS) - 1))
def _trace_automorphism(f, k):
    fam, s, g = W4_MEMBERS[k]
    assert z_action(C4, fam.perm, s)(regular_trace(f, C4)) == regular_trace(g(f), C4)


INVARIANCE_CASES = [preset(name) for name in ("Wn:2", "Wn:3", "Wn:4", "kminus1:2", "kminus1:3")]
INVARIANCE_GROUPS = [enumerate_monomial_automorphisms(spec) for spec, _ in INVARIANCE_CASES]
nonzero = st.integers(-6, 6).filter(bool)


@PROPERTY
@given(st.integers(0, len(INVARIANCE_CASES) - 1), st.lists(nonzero, min_size=3, max_size=3), st.data())
def _invariance(k, params, data):
    spec, center = INVARIANCE_CASES[k]
    group = INVARIANCE_GROUPS[k]
    members = explicit_automorphisms(group, params[: group.symmetry_rank] or None)
    fam, s, _ = members[data.draw(st.integers(0, len(members) - 1))]
    assert discriminant_invariance_check(spec, center, fam.perm, s) != 0


@PROPERTY
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.dictionaries(st.tuples(st.just(0), st.integers(1, n - 1)), st.integers(-3, 3)))),
    st.data())
def _anticommutation(na, data):
    n, a = na
    spec = v_n(n, a or 0)
    om = omega(spec.gens())
    f = data.draw(odd_ncpolys(spec))
    sign = (-1) ** (n - 1)
    assert f * om == (om * f).scale(sign)


@PROPERTY
@given(st.integers(-4, 4), st.integers(-4, 4))
def _tensor(a, b):
    A, cA = with_center(v_n(2, a), (2, 2))
    B, cB = with_center(v_n(2, b), (2, 2))
    assert tensor_discriminant_check(W2, C2, W2, C2)
    assert tensor_discriminant_check(A, cA, B, cB)


@PROPERTY
@given(st.integers(-5, 5), st.sampled_from([(2, 2), (2, 4), (4, 2)]))
def _opposite(a, powers):
    spec, center = with_center(v_n(2, a), powers)
    assert opposite_discriminant_check(spec, center)


@PROPERTY
@given(st.integers(1, 4).flatmap(lambda n: matrices(n)))
def _bareiss_vs_cofactor(m):
    rows = [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]
    assert bareiss_determinant(m) == cofactor_det(rows, m.nvars)


PROPERTIES = [
    ("trace symmetry", _trace_symmetry),
    ("R-linearity", _r_linearity),
    ("odd and even-Omega vanishing", _vanishing),
    ("degree additivity", _degree_additivity),
    ("base-change law", _base_change),
    ("trace-automorphism compatibility", _trace_automorphism),
    ("unit invariance of d", _invariance),
    ("Omega anticommutation n=2..5", _anticommutation),
    ("tensor identity", _tensor),
    ("opposite identity", _opposite),
    ("Bareiss vs cofactor", _bareiss_vs_cofactor),
]


@pytest.mark.parametrize("label, prop", PROPERTIES, ids=[p[0] for p in PROPERTIES])
def test_criterion_8_properties(label, prop):
    with criterion(8, f"property suite: {label} (100 cases)"):
        prop()


def test_criterion_9_odd_elementary_automorphism():
    with criterion(9, "x3 -> x3 + f*Omega(x1, x2) is a non-affine automorphism of W3", limit=10):
        for text in ("1", "z1", "z1*z2"):
            g, h = build_elementary_odd_aut(3, parse_commpoly(text, 2))
            assert verify_homomorphism(g)[0]
            assert verify_automorphism_pair(g, h)
            assert not affine_closure_check(g.spec, g)
