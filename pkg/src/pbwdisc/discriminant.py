"""Trace matrices, discriminants over a declared center and the identity checks built on them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .algebra import AlgebraSpec, omega, tensor_spec, opposite_spec
from .center import CenterSpec, decompose_over_center, regular_trace, validate_center
from .errors import DimensionMismatch, InternalInconsistency, PreconditionViolation, SizeLimit
from .poly import (
    CommPoly,
    PolyMatrix,
    bareiss_determinant,
    equal_up_to_unit,
    is_cwlt,
    is_dominating_sufficient,
    principal_term,
)

MAX_RANK = 64
CONJECTURE_BOUND = 6


@dataclass(frozen=True)
class DiscriminantResult:
    raw_det: CommPoly
    principal: CommPoly | None
    dominating_sufficient: bool
    rank: int

    def summary(self) -> dict:
        return {
            "discriminant": str(self.raw_det),
            "principal_term": None if self.principal is None else str(self.principal),
            "dominating_sufficient": self.dominating_sufficient,
            "rank": self.rank,
        }


def _trace_row(args):
    center, i = args
    basis = center.basis
    spec = center.spec
    xi = spec.monomial(basis[i])
    return [regular_trace(xi * spec.monomial(basis[j]), center) for j in range(i, len(basis))]


def trace_matrix(spec: AlgebraSpec, center: CenterSpec, workers: int = 1) -> PolyMatrix:
    """Matrix of tr(X_e X_e') over the basis box (symmetric, so only the upper half is traced)."""
    if center.spec != spec:
        raise DimensionMismatch("center belongs to a different algebra")
    w = center.rank
    jobs = [(center, i) for i in range(w)]
    if workers > 1 and w > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            upper = list(pool.map(_trace_row, jobs))
    else:
        upper = [_trace_row(job) for job in jobs]
    rows = [[None] * w for _ in range(w)]
    for i in range(w):
        for off, t in enumerate(upper[i]):
            rows[i][i + off] = t
            rows[i + off][i] = t
    return PolyMatrix(rows, spec.n)


_CACHE: dict = {}


def discriminant(spec: AlgebraSpec, center: CenterSpec, workers: int = 1,
                 max_rank: int = MAX_RANK) -> DiscriminantResult:
    """Raw signed determinant of the trace matrix, plus its principal term and dominance verdict."""
    if center.rank > max_rank:
        raise SizeLimit(f"rank {center.rank} exceeds the bound {max_rank}")
    key = (spec, center.powers)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    det = bareiss_determinant(trace_matrix(spec, center, workers))
    if det.is_zero():
        result = DiscriminantResult(det, None, False, center.rank)
    else:
        result = DiscriminantResult(
            det, principal_term(det, center.weights), is_dominating_sufficient(det), center.rank
        )
    _CACHE[key] = result
    return result


def base_change_check(spec: AlgebraSpec, center: CenterSpec, m: PolyMatrix) -> bool:
    """d(Y) == det(Y:Z)^2 d(Z) for Y = m Z, with d(Y) traced directly from the products y_i y_j."""
    w = center.rank
    if m.rows != w or m.cols != w or m.nvars != center.nvars:
        raise DimensionMismatch(f"base change matrix must be {w}x{w} over R")
    basis = [center.basis_element(e) for e in center.basis]
    ys = []
    for i in range(w):
        y = spec.zero()
        for j in range(w):
            if m[i, j]:
                y = y + center.embed(m[i, j]) * basis[j]
        ys.append(y)
    grams = [[None] * w for _ in range(w)]
    for i in range(w):
        for j in range(i, w):
            grams[i][j] = grams[j][i] = regular_trace(ys[i] * ys[j], center)
    lhs = bareiss_determinant(PolyMatrix(grams, center.nvars))
    rhs = bareiss_determinant(m) ** 2 * discriminant(spec, center).raw_det
    return lhs == rhs


def tensor_discriminant_check(A: AlgebraSpec, cA: CenterSpec, B: AlgebraSpec, cB: CenterSpec) -> bool:
    """d(A (x) B) equals d(A)^rank(B) * d(B)^rank(A) up to a unit."""
    T = tensor_spec(A, B)
    cT = validate_center(T, cA.powers + cB.powers)
    dT = discriminant(T, cT).raw_det
    dA = discriminant(A, cA).raw_det.embed(T.n, 0)
    dB = discriminant(B, cB).raw_det.embed(T.n, A.n)
    expected = dA ** cB.rank * dB ** cA.rank
    return equal_up_to_unit(dT, expected) is not None


def opposite_discriminant_check(A: AlgebraSpec, cA: CenterSpec) -> bool:
    op = opposite_spec(A)
    c_op = validate_center(op, cA.powers)
    return equal_up_to_unit(discriminant(A, cA).raw_det, discriminant(op, c_op).raw_det) is not None


def question_matrix(n: int) -> PolyMatrix:
    """n x n matrix with 2 z_i on the diagonal and 1 elsewhere."""
    return PolyMatrix(
        [[CommPoly.variable(n, i) * 2 if i == j else CommPoly.one(n) for j in range(n)] for i in range(n)],
        n,
    )


def compound_matrix(m: PolyMatrix, s: int) -> PolyMatrix:
    """s-th compound: minors det m[I, J] over s-subsets I, J in lex order."""
    subsets = list(combinations(range(m.rows), s))
    rows = [
        [bareiss_determinant(PolyMatrix([[m[i, j] for j in J] for i in I], m.nvars)) if s else CommPoly.one(m.nvars)
         for J in subsets]
        for I in subsets
    ]
    return PolyMatrix(rows, m.nvars)


@dataclass(frozen=True)
class CompoundCertificate:
    """Omega-basis factorization of the W_n trace matrix.

    ``block_scalars[s]`` is the constant c_s with T_Omega[s-block] = c_s * compound_s(M);
    ``transition_det`` is det P for the constant change of basis x_I -> Omega(x_I).
    """

    block_scalars: tuple
    transition_det: object

    def unit(self, n: int):
        u = 1
        for s, c in enumerate(self.block_scalars):
            u *= c ** comb(n, s)
        u = Fraction(u) / (self.transition_det * self.transition_det)
        return u.numerator if u.denominator == 1 else u


def compound_certificate(n: int) -> CompoundCertificate | None:
    """Certify d(W_n) = u * det(M)^(2^(n-1)) without expanding the determinant.

    Over K[x_i^2] the antisymmetrized products Omega(x_I) form a basis reached
    from the monomials x_I by a constant triangular matrix P.  If the trace
    matrix in that basis is block diagonal by |I| and each block is a scalar
    multiple of the compound matrix of M, then Sylvester-Franke
    (det compound_s(M) = det(M)^C(n-1, s-1)) gives the power of det(M).
    Returns None when the block structure does not hold.
    """
    from .presets import weyl_minus_one

    spec = weyl_minus_one(n)
    center = validate_center(spec, (2,) * n)
    gens = spec.gens()
    subsets = [I for s in range(n + 1) for I in combinations(range(n), s)]
    index = {e: k for k, e in enumerate(center.basis)}
    P = []
    for I in subsets:
        row = [0] * len(subsets)
        el = omega([gens[i] for i in I]) if I else spec.one()
        for e, r in decompose_over_center(el, center).components.items():
            if not r.is_constant():
                raise InternalInconsistency(f"Omega{I} has a non-constant coordinate")
            row[index[e]] = r.constant_term()
        P.append(row)
    Pm = PolyMatrix(P, n)
    t_omega = Pm @ trace_matrix(spec, center) @ Pm.transpose()
    M = question_matrix(n)
    scalars = []
    start = 0
    for s in range(n + 1):
        size = comb(n, s)
        block = slice(start, start + size)
        for i in range(block.start, block.stop):
            if any(t_omega[i, j] for j in range(len(subsets)) if not block.start <= j < block.stop):
                return None
        comp = compound_matrix(M, s)
        c = equal_up_to_unit(t_omega[block.start, block.start], comp[0, 0])
        if c is None:
            return None
        scaled = CommPoly.constant(n, c)
        if any(t_omega[block.start + a, block.start + b] != scaled * comp[a, b]
               for a in range(size) for b in range(size)):
            return None
        scalars.append(c)
        start += size
    det_p = bareiss_determinant(Pm).constant_term()
    return CompoundCertificate(tuple(scalars), det_p)


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    D: CommPoly
    omega_square: CommPoly | None
    omega_square_matches_D: bool
    disc_matches_D_power: bool
    unit1: object
    unit2: object
    route: str = "direct"

    def summary(self) -> dict:
        from .field import format_scalar

        return {
            "n": self.n,
            "route": self.route,
            "D": str(self.D),
            "omega_square": None if self.omega_square is None else str(self.omega_square),
            "omegaSquareMatchesD": self.omega_square_matches_D,
            "discMatchesDPower": self.disc_matches_D_power,
            "unit1": None if self.unit1 is None else format_scalar(self.unit1),
            "unit2": None if self.unit2 is None else format_scalar(self.unit2),
        }


def verify_conjecture_412(n: int, bound: int = CONJECTURE_BOUND, workers: int = 1,
                          route: str = "direct") -> ConjectureReport:
    """Test Omega_n^2 = c1*D and d(W_n) = c2*D^(2^(n-1)) in W_n over K[x_i^2].

    ``route="direct"`` expands the determinant and compares; ``"compound"``
    uses :func:`compound_certificate`, which never expands D^(2^(n-1)).
    """
    if route not in ("direct", "compound"):
        raise PreconditionViolation(f"unknown route {route!r}")
    from .presets import weyl_minus_one

    if n % 2 or n < 2:
        raise PreconditionViolation("the closed forms are stated for even n >= 2")
    if n > bound:
        raise SizeLimit(f"n = {n} exceeds the bound {bound}")
    spec = weyl_minus_one(n)
    center = validate_center(spec, (2,) * n)
    D = bareiss_determinant(question_matrix(n))
    om = omega(spec.gens(), bound=max(n, 7))
    parts = decompose_over_center(om * om, center).components
    zero = (0,) * n
    square = parts.get(zero) if set(parts) <= {zero} else None
    unit1 = None if square is None else equal_up_to_unit(square, D)
    if route == "direct":
        disc = discriminant(spec, center, workers).raw_det
        unit2 = equal_up_to_unit(disc, D ** (2 ** (n - 1)))
    else:
        cert = compound_certificate(n)
        unit2 = None if cert is None else cert.unit(n)
    return ConjectureReport(n, D, square, unit1 is not None, unit2 is not None, unit1, unit2, route)


def vn_principal_term_check(a, n: int) -> bool:
    """Principal term of d(V_n(a)/K[x_i^2]) is c*(z1...zn)^(2^(n-1)), the rest cwlt."""
    from .presets import v_n

    spec = v_n(n, a)
    center = validate_center(spec, (2,) * n)
    det = discriminant(spec, center).raw_det
    if det.is_zero():
        return False
    top = (2 ** (n - 1),) * n
    pr = principal_term(det, center.weights)
    if set(pr.terms) != {top}:
        return False
    return all(e == top or is_cwlt(e, top) for e in det.terms)


def omega_basis_block_diagonal(n: int) -> bool:
    """Diagnostic: is the trace matrix in the basis Omega(x_I), ordered by |I|, block diagonal?"""
    from itertools import combinations

    from .presets import weyl_minus_one

    spec = weyl_minus_one(n)
    center = validate_center(spec, (2,) * n)
    gens = spec.gens()
    subsets = [I for s in range(n + 1) for I in combinations(range(n), s)]
    elems = [omega([gens[i] for i in I]) if I else spec.one() for I in subsets]
    for a in range(len(subsets)):
        for b in range(a + 1, len(subsets)):
            if len(subsets[a]) != len(subsets[b]) and regular_trace(elems[a] * elems[b], center):
                return False
    return True

