"""Monomial automorphisms x_i -> r_i x_{s(i)} and the group they form.

For a fixed permutation s, substituting into the relation for i < j gives a
scalar condition on q and, when a_ij or its image is nonzero, a condition
r_i r_j = c_ij.  These multiplicative constraints form a graph on the
generators.  Each connected component is solved along a spanning tree with one
parameter t at the root, so r_v = c_v * t^(+-1).  A bipartite component keeps
t free (one torus dimension); an odd cycle pins t^2 to a constant.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial

from .algebra import AlgebraSpec, GeneratorMap, verify_automorphism_pair, verify_homomorphism
from .center import CenterSpec
from .errors import (
    InternalInconsistency,
    InvarianceViolated,
    NotAHomomorphism,
    PreconditionViolation,
    SizeLimit,
)
from .field import field_sqrt, format_scalar, normalize, scalar_div
from .poly import CommPoly, equal_up_to_unit

PERMUTATION_BOUND = 8


@dataclass(frozen=True)
class Component:
    vertices: tuple
    free: bool
    roots: tuple = ()


@dataclass(frozen=True)
class MonomialAutFamily:
    """All r with x_i -> r_i x_{perm[i]} an automorphism, for one permutation.

    ``coef[v]`` and ``sign[v]`` give r_v = coef[v] * t^sign[v], where t is the
    parameter of the component containing v.
    """

    spec: AlgebraSpec
    perm: tuple
    components: tuple
    coef: tuple
    sign: tuple
    comp_of: tuple = field(repr=False)

    @property
    def torus_dim(self) -> int:
        return sum(1 for c in self.components if c.free)

    @property
    def explicit_count(self) -> int:
        n = 1
        for c in self.components:
            if not c.free:
                n *= len(c.roots)
        return n

    def scales(self, params=(), choice=None) -> tuple:
        """Scaling vector for torus parameters ``params`` and a choice of finite roots."""
        params = list(params)
        if len(params) != self.torus_dim:
            raise ValueError(f"family has {self.torus_dim} free parameters")
        finite = [c for c in self.components if not c.free]
        choice = choice or (0,) * len(finite)
        t = {}
        pit, cit = iter(params), iter(choice)
        for idx, c in enumerate(self.components):
            t[idx] = next(pit) if c.free else c.roots[next(cit)]
        out = []
        for v in range(self.spec.n):
            tv = t[self.comp_of[v]]
            out.append(normalize(self.coef[v] * tv if self.sign[v] > 0 else scalar_div(self.coef[v], tv)))
        return tuple(out)

    def members(self, params=()):
        """Every explicit scaling vector for the given torus parameters."""
        finite = [c for c in self.components if not c.free]
        return [self.scales(params, ch) for ch in product(*(range(len(c.roots)) for c in finite))]

    def generator_map(self, scales) -> GeneratorMap:
        return GeneratorMap.monomial(self.spec, self.perm, scales)

    def inverse_map(self, scales) -> GeneratorMap:
        """x_{perm[i]} -> x_i / r_i."""
        n = self.spec.n
        inv = [0] * n
        for i, p in enumerate(self.perm):
            inv[p] = i
        return GeneratorMap.monomial(self.spec, inv, [scalar_div(1, scales[inv[j]]) for j in range(n)])


@dataclass(frozen=True)
class AutGroupDescription:
    spec: AlgebraSpec
    families: tuple
    symmetry_rank: int
    symmetry_index: int
    label: str = "monomial automorphisms only"

    def structure(self) -> str:
        n = self.spec.n
        perms = [f.perm for f in self.families]
        if len(perms) == factorial(n):
            perm_part = f"S{n}"
        elif len(perms) == 1:
            perm_part = "1"
        else:
            perm_part = f"G({len(perms)} permutations)"
        counts = {f.explicit_count for f in self.families}
        finite = ""
        if counts == {2} and self._identity_is_sign():
            finite = " × {±1}"
        elif counts != {1} and counts:
            finite = " × (finite part)"
        torus = ""
        if self.symmetry_rank == 1:
            torus = " ⋉ K^×"
        elif self.symmetry_rank > 1:
            torus = f" ⋉ (K^×)^{self.symmetry_rank}"
        return perm_part + finite + torus

    def _identity_is_sign(self) -> bool:
        ident = tuple(range(self.spec.n))
        for f in self.families:
            if f.perm == ident and f.torus_dim == 0:
                return sorted(map(tuple, f.members())) == sorted(
                    [(1,) * self.spec.n, (-1,) * self.spec.n]
                )
        return False

    def describe(self) -> str:
        return f"{self.structure()}; |S| = {self.symmetry_index}; rank = {self.symmetry_rank}"

    def summary(self) -> dict:
        return {
            "structure": self.structure(),
            "symmetry_index": self.symmetry_index,
            "symmetry_rank": self.symmetry_rank,
            "label": self.label,
            "families": [
                {
                    "permutation": [p + 1 for p in f.perm],
                    "torus_dim": f.torus_dim,
                    "explicit_count": f.explicit_count,
                    "scalings": [[format_scalar(r) for r in s] for s in f.members([1] * f.torus_dim)],
                }
                for f in self.families
            ],
        }


def _constraints(spec: AlgebraSpec, perm):
    """Edges {(i, j): c} with r_i r_j = c, or None when the permutation is impossible."""
    edges = {}
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            s, t = perm[i], perm[j]
            qij, aij = spec.q[i][j], spec.a[i][j]
            if s < t:
                if spec.q[s][t] != qij:
                    return None
                image_a = spec.a[s][t]
            else:
                if qij * spec.q[t][s] != 1:
                    return None
                image_a = -qij * spec.a[t][s]
            if not image_a and not aij:
                continue
            if not image_a or not aij:
                return None
            edges[(i, j)] = scalar_div(aij, image_a)
    return edges


def _solve(spec: AlgebraSpec, perm, edges):
    n = spec.n
    adj = {v: [] for v in range(n)}
    for (i, j), c in edges.items():
        adj[i].append((j, c))
        adj[j].append((i, c))
    coef, sign, comp_of = [None] * n, [0] * n, [None] * n
    components = []
    for root in range(n):
        if comp_of[root] is not None:
            continue
        idx = len(components)
        comp_of[root], coef[root], sign[root] = idx, 1, 1
        verts, queue = [root], deque([root])
        square = None
        while queue:
            u = queue.popleft()
            for v, c in adj[u]:
                if comp_of[v] is None:
                    comp_of[v], coef[v], sign[v] = idx, scalar_div(c, coef[u]), -sign[u]
                    verts.append(v)
                    queue.append(v)
        # every edge of the component, tree edges included, must hold
        for (i, j), c in edges.items():
            if comp_of[i] != idx:
                continue
            prod_coef = coef[i] * coef[j]
            if sign[i] + sign[j] == 0:
                if prod_coef != c:
                    return None
            else:
                val = scalar_div(c, prod_coef)
                if sign[i] < 0:
                    val = scalar_div(1, val)
                if square is None:
                    square = val
                elif square != val:
                    return None
        if square is None:
            components.append(Component(tuple(sorted(verts)), True))
        else:
            s = field_sqrt(square, spec.field)
            if s is None:
                return None
            components.append(Component(tuple(sorted(verts)), False, (normalize(s), normalize(-s))))
    return MonomialAutFamily(spec, tuple(perm), tuple(components), tuple(coef), tuple(sign), tuple(comp_of))


def enumerate_monomial_automorphisms(spec: AlgebraSpec, bound: int = PERMUTATION_BOUND) -> AutGroupDescription:
    if spec.n > bound:
        raise SizeLimit(f"{spec.n}! permutations exceed the bound n <= {bound}")
    families = []
    for perm in permutations(range(spec.n)):
        if any(spec.degrees[perm[i]] != spec.degrees[i] for i in range(spec.n)):
            continue
        edges = _constraints(spec, perm)
        if edges is None:
            continue
        fam = _solve(spec, perm, edges)
        if fam is not None:
            families.append(fam)
    ranks = {f.torus_dim for f in families}
    rank = max(ranks) if ranks else 0
    index = sum(f.explicit_count for f in families)
    return AutGroupDescription(spec, tuple(families), rank, index, completeness_label(spec))


def completeness_label(spec: AlgebraSpec) -> str:
    """Every automorphism of V_n(A), n even, is monomial; elsewhere the list is a lower bound."""
    n = spec.n
    skew = all(spec.q[i][j] == -1 for i in range(n) for j in range(i + 1, n))
    if n >= 2 and n % 2 == 0 and skew and set(spec.degrees) == {1}:
        return "complete"
    return "monomial automorphisms only"


def explicit_automorphisms(group: AutGroupDescription, params=None):
    """(family, scales, map) for every explicit member; torus parameters default to 1."""
    out = []
    for fam in group.families:
        p = params if params is not None else [1] * fam.torus_dim
        for s in fam.members(p):
            out.append((fam, s, fam.generator_map(s)))
    return out


def affine_closure_check(spec: AlgebraSpec, g: GeneratorMap) -> bool:
    """True iff every generator image lies in Y + K (terms of degree <= 1)."""
    ok, bad = verify_homomorphism(g)
    if not ok:
        raise NotAHomomorphism(f"relations {bad} are not preserved")
    return all(sum(e) <= 1 for img in g.images for e in img.terms)


def z_action(center: CenterSpec, perm, scales):
    """The induced map z_i -> r_i^{d_i} z_{perm[i]} on the center polynomials."""
    powers = center.powers
    for i, p in enumerate(perm):
        if powers[p] != powers[i]:
            raise PreconditionViolation("the map does not preserve the declared center")
    zs = [normalize(r ** d) for r, d in zip(scales, powers)]
    return lambda poly: poly.monomial_substitute(perm, zs)


def discriminant_invariance_check(spec: AlgebraSpec, center: CenterSpec, perm, scales):
    """Return the unit c with g(d) = c d for the monomial map g."""
    from .discriminant import discriminant

    d = discriminant(spec, center).raw_det
    moved = z_action(center, perm, scales)(d)
    c = equal_up_to_unit(moved, d)
    if c is None:
        raise InvarianceViolated(f"g(d) is not a unit multiple of d for perm={perm}, r={scales}")
    return c


def build_elementary_odd_aut(n: int, f: CommPoly):
    """In W_n, n odd: x_n -> x_n + f(x_1^2, .., x_{n-1}^2) Omega(x_1, .., x_{n-1}), with its inverse."""
    from .algebra import omega
    from .presets import weyl_minus_one

    if n % 2 == 0 or n < 3:
        raise PreconditionViolation("n must be odd and at least 3")
    if f.nvars != n - 1:
        raise PreconditionViolation(f"f must be a polynomial in z1..z{n - 1}")
    spec = weyl_minus_one(n)
    gens = spec.gens()
    om = omega(gens[:-1])
    lifted = spec.zero()
    for e, c in f.terms.items():
        lifted = lifted + spec.monomial(tuple(2 * k for k in e) + (0,), c)
    shift = lifted * om
    g = GeneratorMap(spec, gens[:-1] + [gens[-1] + shift])
    h = GeneratorMap(spec, gens[:-1] + [gens[-1] - shift])
    try:
        ok = verify_automorphism_pair(g, h)
    except NotAHomomorphism as exc:
        raise InternalInconsistency(str(exc)) from exc
    if not ok:
        raise InternalInconsistency("the candidate inverse does not invert the map")
    return g, h
