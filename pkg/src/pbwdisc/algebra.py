"""PBW algebras with relations x_j x_i = q_ij x_i x_j + a_ij (i < j, a_ij scalar).

Elements are stored in PBW normal form: a map from exponent vectors of the
ordered monomial x1^e1 ... xn^en to scalars.  Generator indices are 0-based
in the Python API and 1-based (``x1``..``xn``) in text.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import (
    AlgebraMismatch,
    IncompatibleField,
    NotAHomomorphism,
    PreconditionViolation,
    RelationIndexError,
    SizeLimit,
    ZeroPolynomial,
)
from .field import QQ, Coefficient, normalize, scalar_div
from .poly import _format_term, _join_terms

OMEGA_BOUND = 7

_SCALARS = (int, Fraction, Coefficient)


def _is_scalar(x):
    return isinstance(x, _SCALARS) and not isinstance(x, bool)


def _table(n, values, default, field, label):
    """Normalize q/a input (scalar, or dict keyed by 0-based (i, j), i < j) into an n x n table."""
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = field.element(default)
    if values is None:
        pass
    elif isinstance(values, dict):
        for (i, j), v in values.items():
            if not (0 <= i < j < n):
                raise RelationIndexError(f"{label} entry ({i + 1}, {j + 1}) needs 1 <= i < j <= {n}")
            rows[i][j] = field.element(v)
    else:
        v = field.element(values)
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = v
    return tuple(tuple(r) for r in rows)


def constant_allowed(q, i, j) -> bool:
    """Whether a_ij may be nonzero given the q table (overlaps x_k x_j x_i must resolve).

    Rewriting x_k x_j x_i (i < j < k) both ways leaves
    a_ij (q_ik q_jk - 1) x_k,  a_ik (q_jk - q_ij) x_j,  a_jk (1 - q_ij q_ik) x_i.
    """
    n = len(q)
    for k in range(n):
        if k > j and q[j][k] * q[i][k] != 1:
            return False
        if i < k < j and q[k][j] != q[i][k]:
            return False
        if k < i and q[k][i] * q[k][j] != 1:
            return False
    return True


class AlgebraSpec:
    """One PBW algebra: ``n`` generators, q/a tables, generator degrees and field.

    ``q`` and ``a`` may be a single scalar applied to every pair or a dict
    keyed by 0-based pairs ``(i, j)`` with ``i < j``; missing q entries are 1
    and missing a entries are 0.
    """

    def __init__(self, n, q=None, a=None, degrees=None, field=QQ, name=""):
        if n < 0:
            raise ValueError("generator count must be non-negative")
        self.n = n
        self.field = field
        self.name = name
        self.q = _table(n, q, 1, field, "q")
        self.a = _table(n, a, 0, field, "a")
        self.degrees = tuple(degrees) if degrees is not None else (1,) * n
        if len(self.degrees) != n or any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be n positive integers")
        for i in range(n):
            for j in range(i + 1, n):
                if not self.q[i][j]:
                    raise ValueError(f"q_{i + 1}{j + 1} must be nonzero")
        for i in range(n):
            for j in range(i + 1, n):
                if self.a[i][j] and not constant_allowed(self.q, i, j):
                    raise PreconditionViolation(
                        f"a_{i + 1}{j + 1} != 0 is incompatible with the q table: ordered monomials would not be a basis"
                    )
        self._key = (n, self.q, self.a, self.degrees, field)
        self._hash = hash(self._key)
        self._gen_cache = {}
        self._mono_cache = {}

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AlgebraSpec({self.name or 'unnamed'}, n={self.n})"

    # -- constructors for elements ------------------------------------------

    def zero(self) -> NCPoly:
        return NCPoly(self, {})

    def one(self) -> NCPoly:
        return self.scalar(1)

    def scalar(self, c) -> NCPoly:
        c = self.field.element(c) if not isinstance(c, Coefficient) else c
        return NCPoly(self, {(0,) * self.n: c} if c else {})

    def gen(self, i) -> NCPoly:
        if not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range")
        e = [0] * self.n
        e[i] = 1
        return NCPoly(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps, c=1) -> NCPoly:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ValueError("exponent vector has wrong length")
        return NCPoly(self, {exps: c} if c else {})

    def parse(self, text, center=None) -> NCPoly:
        from .parsing import parse_element

        return parse_element(text, self, center)

    # -- rewriting -----------------------------------------------------------

    def _times_gen(self, u, i):
        """Normal form of x^u * x_i as a dict."""
        key = (u, i)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        out = {}
        factor = 1
        # sweep x_i leftwards through x_n^{u_n}, ..., x_{i+1}^{u_{i+1}}
        for j in range(self.n - 1, i, -1):
            m = u[j]
            if not m:
                continue
            q, a = self.q[i][j], self.a[i][j]
            if a:
                qint = 0
                p = 1
                for _ in range(m):
                    qint = qint + p
                    p = p * q
                c = normalize(factor * a * qint)
                if c:
                    w = list(u)
                    w[j] -= 1
                    w = tuple(w)
                    out[w] = normalize(out.get(w, 0) + c)
                    if not out[w]:
                        del out[w]
            factor = factor * q ** m
        w = list(u)
        w[i] += 1
        out[tuple(w)] = normalize(factor)
        self._gen_cache[key] = out
        return out

    def mul_monomials(self, u, v) -> dict:
        """Normal form of X_u * X_v as a dict (exponent tuple -> scalar)."""
        key = (u, v)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        cur = {u: 1}
        for i in range(self.n):
            for _ in range(v[i]):
                nxt = {}
                for w, c in cur.items():
                    for w2, c2 in self._times_gen(w, i).items():
                        val = nxt.get(w2, 0) + c * c2
                        if val:
                            nxt[w2] = val
                        else:
                            nxt.pop(w2, None)
                cur = nxt
        cur = {w: normalize(c) for w, c in cur.items()}
        self._mono_cache[key] = cur
        return cur


def normal_form_product(u, v, spec: AlgebraSpec) -> NCPoly:
    return NCPoly(spec, spec.mul_monomials(tuple(u), tuple(v)))


class NCPoly:
    """Immutable algebra element in PBW normal form."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms):
        self.spec = spec
        self.terms = {e: c for e, c in terms.items() if c}

    def _check(self, other):
        if other.spec is not self.spec and other.spec != self.spec:
            raise AlgebraMismatch(f"{self.spec!r} vs {other.spec!r}")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if _is_scalar(other):
            if isinstance(other, Coefficient) and other.field != self.spec.field:
                raise IncompatibleField(f"{other.field!r} vs {self.spec.field!r}")
            return self.spec.scalar(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = normalize(out.get(e, 0) + c)
        return NCPoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        out = {}
        mul = self.spec.mul_monomials
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                cd = c * d
                for w, e in mul(u, v).items():
                    out[w] = out.get(w, 0) + cd * e
        return NCPoly(self.spec, {w: normalize(c) for w, c in out.items()})

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> NCPoly:
        if isinstance(c, Coefficient) and c.field != self.spec.field:
            raise IncompatibleField(f"{c.field!r} vs {self.spec.field!r}")
        return NCPoly(self.spec, {e: normalize(v * c) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.spec.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.spec == other.spec and self.terms == other.terms
        if _is_scalar(other):
            return self == self.spec.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """Terms in descending (total degree, lex) order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def degree(self) -> int:
        return filtration_degree(self)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def is_odd(self) -> bool:
        """True when every term has odd total degree (Z/2 grading of the generators)."""
        return all(sum(e) % 2 == 1 for e in self.terms)

    def is_even(self) -> bool:
        return all(sum(e) % 2 == 0 for e in self.terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"NCPoly({self.to_text()!r})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i + 1}")
                elif k > 1:
                    factors.append(f"x{i + 1}^{k}")
            parts.append(_format_term(c, factors))
        return _join_terms(parts)


def nc_arith(op: str, f: NCPoly, g):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    if op == "power":
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def filtration_degree(f: NCPoly) -> int:
    if not f.terms:
        raise ZeroPolynomial("degree of the zero element")
    d = f.spec.degrees
    return max(sum(e * w for e, w in zip(exps, d)) for exps in f.terms)


def omega(elements, bound: int = OMEGA_BOUND) -> NCPoly:
    """Antisymmetrized product: sum over permutations s of sign(s) f_s(1) ... f_s(w)."""
    elements = list(elements)
    w = len(elements)
    if w == 0:
        raise PreconditionViolation("omega needs at least one element")
    if w > bound:
        raise SizeLimit(f"omega of {w} elements exceeds bound {bound}")
    spec = elements[0].spec
    for f in elements:
        if f.spec != spec:
            raise AlgebraMismatch("omega arguments from different algebras")
    memo = {}

    # expand along the first factor: the sign of moving position t to the front is (-1)^t
    def rec(idx):
        if len(idx) == 1:
            return elements[idx[0]]
        hit = memo.get(idx)
        if hit is not None:
            return hit
        acc = spec.zero()
        for t, i in enumerate(idx):
            term = elements[i] * rec(idx[:t] + idx[t + 1:])
            acc = acc + term if t % 2 == 0 else acc - term
        memo[idx] = acc
        return acc

    return rec(tuple(range(w)))


def omega_bruteforce(elements) -> NCPoly:
    """Direct permutation sum; only for small cross-checks."""
    elements = list(elements)
    spec = elements[0].spec
    acc = spec.zero()
    for perm in permutations(range(len(elements))):
        inv = sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm)) if perm[x] > perm[y])
        prod = spec.one()
        for i in perm:
            prod = prod * elements[i]
        acc = acc + prod if inv % 2 == 0 else acc - prod
    return acc


# -- constructions -------------------------------------------------------------

def tensor_spec(A: AlgebraSpec, B: AlgebraSpec) -> AlgebraSpec:
    """A (x) B: generators of A then of B, cross pairs commute."""
    if A.field != B.field:
        raise IncompatibleField(f"{A.field!r} vs {B.field!r}")
    n = A.n + B.n
    q, a = {}, {}
    for S, off in ((A, 0), (B, A.n)):
        for i in range(S.n):
            for j in range(i + 1, S.n):
                q[(i + off, j + off)] = S.q[i][j]
                a[(i + off, j + off)] = S.a[i][j]
    name = f"{A.name}⊗{B.name}" if A.name and B.name else (A.name or B.name)
    return AlgebraSpec(n, q, a, A.degrees + B.degrees, A.field, name)


def opposite_spec(A: AlgebraSpec) -> AlgebraSpec:
    """Opposite algebra: q' = 1/q and a' = -a/q on the same generators."""
    q, a = {}, {}
    for i in range(A.n):
        for j in range(i + 1, A.n):
            inv = scalar_div(1, A.q[i][j])
            q[(i, j)] = inv
            a[(i, j)] = normalize(-inv * A.a[i][j])
    name = f"{A.name}^op" if A.name else ""
    return AlgebraSpec(A.n, q, a, A.degrees, A.field, name)


# -- generator maps ------------------------------------------------------------

class GeneratorMap:
    """An endomorphism given by the images of x1..xn."""

    __slots__ = ("spec", "images", "_powers")

    def __init__(self, spec: AlgebraSpec, images):
        images = tuple(images)
        if len(images) != spec.n:
            raise ValueError(f"need {spec.n} images, got {len(images)}")
        for f in images:
            if f.spec != spec:
                raise AlgebraMismatch("image lives in a different algebra")
        self.spec = spec
        self.images = images
        self._powers = {}

    @classmethod
    def identity(cls, spec):
        return cls(spec, spec.gens())

    @classmethod
    def monomial(cls, spec, perm, scales):
        """x_i -> scales[i] * x_{perm[i]}."""
        return cls(spec, [spec.gen(perm[i]) * scales[i] for i in range(spec.n)])

    def _power(self, i, k):
        key = (i, k)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.images[i] ** k
            self._powers[key] = hit
        return hit

    def __call__(self, f: NCPoly) -> NCPoly:
        return apply_map(self, f)

    def compose(self, other: GeneratorMap) -> GeneratorMap:
        """self o other: x_i -> self(other(x_i))."""
        if other.spec != self.spec:
            raise AlgebraMismatch("maps on different algebras")
        return GeneratorMap(self.spec, [self(img) for img in other.images])

    def __eq__(self, other):
        return isinstance(other, GeneratorMap) and self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        body = ", ".join(f"x{i + 1} -> {img}" for i, img in enumerate(self.images))
        return f"GeneratorMap({body})"


def apply_map(g: GeneratorMap, f: NCPoly) -> NCPoly:
    if f.spec != g.spec:
        raise AlgebraMismatch("map and element live in different algebras")
    acc = g.spec.zero()
    for exps, c in f.terms.items():
        prod = None
        for i, k in enumerate(exps):
            if k:
                p = g._power(i, k)
                prod = p if prod is None else prod * p
        if prod is None:
            prod = g.spec.one()
        acc = acc + prod.scale(c)
    return acc


def relation_residue(g: GeneratorMap, i: int, j: int) -> NCPoly:
    """g(x_j) g(x_i) - q_ij g(x_i) g(x_j) - a_ij for 0-based i < j."""
    s = g.spec
    gi, gj = g.images[i], g.images[j]
    return gj * gi - (gi * gj).scale(s.q[i][j]) - s.a[i][j]


def verify_homomorphism(g: GeneratorMap):
    """Return (ok, violated) where violated lists the 0-based pairs (i, j) that fail."""
    bad = []
    for i in range(g.spec.n):
        for j in range(i + 1, g.spec.n):
            if relation_residue(g, i, j):
                bad.append((i, j))
    return not bad, bad


def verify_automorphism_pair(g: GeneratorMap, h: GeneratorMap) -> bool:
    """Check that h is a two-sided inverse of g on the generators."""
    for m in (g, h):
        ok, bad = verify_homomorphism(m)
        if not ok:
            pairs = ", ".join(f"({i + 1},{j + 1})" for i, j in bad)
            raise NotAHomomorphism(f"relations {pairs} are not preserved")
    gens = g.spec.gens()
    return all(g(h(x)) == x and h(g(x)) == x for x in gens)
