"""Declared central subalgebras R = K[x1^d1, ..., xn^dn] and the regular trace.

The center variable z_i stands for x_i^{d_i}.  The algebra is free over R
with basis the monomials x^e, 0 <= e_i < d_i (the "basis box").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import AlgebraSpec, NCPoly
from .errors import AlgebraMismatch, NotCentral
from .poly import CommPoly, PolyMatrix, pack


@dataclass(frozen=True, eq=False)
class CenterSpec:
    spec: AlgebraSpec
    powers: tuple
    basis: tuple
    _trace_cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def nvars(self) -> int:
        return self.spec.n

    @property
    def weights(self) -> tuple:
        """Filtration degree of each center variable: d_i * deg(x_i)."""
        return tuple(d * w for d, w in zip(self.powers, self.spec.degrees))

    def __eq__(self, other):
        return isinstance(other, CenterSpec) and (self.spec, self.powers) == (other.spec, other.powers)

    def __hash__(self):
        return hash((self.spec, self.powers))

    def basis_element(self, e) -> NCPoly:
        return self.spec.monomial(e)

    def embed(self, r: CommPoly) -> NCPoly:
        """The algebra element obtained from r by z_i -> x_i^{d_i}."""
        if r.nvars != self.spec.n:
            raise AlgebraMismatch("center polynomial has the wrong number of variables")
        return NCPoly(
            self.spec,
            {tuple(k * d for k, d in zip(e, self.powers)): c for e, c in r.terms.items()},
        )


def _basis_order(e, degrees):
    # by filtration degree, then x1 before x2 before ... (so W2 gives 1, x1, x2, x1x2)
    return (sum(a * w for a, w in zip(e, degrees)), tuple(-a for a in e))


def validate_center(spec: AlgebraSpec, powers) -> CenterSpec:
    """Check that every x_i^{d_i} commutes with every generator."""
    powers = tuple(int(d) for d in powers)
    if len(powers) != spec.n or any(d < 1 for d in powers):
        raise ValueError("need one positive power per generator")
    gens = spec.gens()
    for i, d in enumerate(powers):
        zi = gens[i] ** d
        for j in range(spec.n):
            if j != i and gens[j] * zi != zi * gens[j]:
                raise NotCentral(i, j, d)
    basis = sorted(product(*(range(d) for d in powers)), key=lambda e: _basis_order(e, spec.degrees))
    return CenterSpec(spec, powers, tuple(basis))


@dataclass(frozen=True)
class CenterDecomposition:
    """Components of an element over the basis box, keyed by basis exponent."""

    center: CenterSpec
    components: dict

    def component(self, e) -> CommPoly:
        return self.components.get(tuple(e), CommPoly.zero(self.center.nvars))

    def reassemble(self) -> NCPoly:
        c = self.center
        acc = c.spec.zero()
        for e, r in self.components.items():
            acc = acc + c.embed(r) * c.basis_element(e)
        return acc


def _split(exps, powers):
    return tuple(e // d for e, d in zip(exps, powers)), tuple(e % d for e, d in zip(exps, powers))


def decompose_over_center(f: NCPoly, center: CenterSpec) -> CenterDecomposition:
    if f.spec != center.spec:
        raise AlgebraMismatch("element and center belong to different algebras")
    raw = {}
    for exps, c in f.terms.items():
        zexp, rest = _split(exps, center.powers)
        bucket = raw.setdefault(rest, {})
        k = pack(zexp)
        bucket[k] = bucket.get(k, 0) + c
    n = center.nvars
    comps = {}
    for e, t in raw.items():
        t = {k: v for k, v in t.items() if v}
        if t:
            comps[e] = CommPoly._wrap(n, t)
    return CenterDecomposition(center, comps)


def left_mult_matrix(f: NCPoly, center: CenterSpec) -> PolyMatrix:
    """Row e holds the coordinates of f * X_e, so lm(f*g) = lm(g) @ lm(f)."""
    basis = center.basis
    rows = []
    for e in basis:
        d = decompose_over_center(f * center.basis_element(e), center)
        rows.append([d.component(e2) for e2 in basis])
    return PolyMatrix(rows, center.nvars)


def _monomial_trace(r, center: CenterSpec) -> CommPoly:
    """Trace of the basis monomial x^r (r inside the basis box)."""
    hit = center._trace_cache.get(r)
    if hit is not None:
        return hit
    spec = center.spec
    acc = {}
    for e in center.basis:
        for w, c in spec.mul_monomials(r, e).items():
            zexp, rest = _split(w, center.powers)
            if rest == e:
                k = pack(zexp)
                acc[k] = acc.get(k, 0) + c
    out = CommPoly._wrap(center.nvars, {k: v for k, v in acc.items() if v})
    center._trace_cache[r] = out
    return out


def regular_trace(f: NCPoly, center: CenterSpec) -> CommPoly:
    """Trace of left multiplication by f on the free R-module."""
    if f.spec != center.spec:
        raise AlgebraMismatch("element and center belong to different algebras")
    acc = CommPoly.zero(center.nvars)
    for exps, c in f.terms.items():
        zexp, rest = _split(exps, center.powers)
        t = _monomial_trace(rest, center)
        if t:
            acc = acc + t * CommPoly.monomial(zexp, c)
    return acc

