"""Sparse multivariate polynomials over K in the center variables z1..zn.

Monomials are packed into a single ``int``: the total degree sits in the
most significant field, followed by the exponents of z1, z2, ..., zn.  With
that layout monomial multiplication is integer addition and integer order is
graded-lex order with z1 > z2 > ... > zn.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush

from .errors import DimensionMismatch, DivisionByZero, NotDivisible, ZeroPolynomial
from .field import Coefficient, format_scalar, is_rational_scalar, normalize, scalar_div

BITS = 32
MASK = (1 << BITS) - 1
MAX_DEGREE = 1 << (BITS - 1)


def pack(exps) -> int:
    key = sum(exps)
    if key >= MAX_DEGREE or any(e < 0 for e in exps):
        raise ValueError(f"exponent vector out of range: {exps}")
    for e in exps:
        key = (key << BITS) | e
    return key


def unpack(key: int, nvars: int) -> tuple:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & MASK
        key >>= BITS
    return tuple(out)


def _divides(small: int, big: int, nvars: int) -> bool:
    for _ in range(nvars):
        if (small & MASK) > (big & MASK):
            return False
        small >>= BITS
        big >>= BITS
    return True


# -- raw dict arithmetic (packed key -> scalar) ----------------------------

def _add(f, g):
    out = dict(f)
    for k, c in g.items():
        v = out.get(k)
        if v is None:
            out[k] = c
        else:
            v = v + c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _sub(f, g):
    out = dict(f)
    for k, c in g.items():
        v = out.get(k)
        if v is None:
            out[k] = -c
        else:
            v = v - c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _scale(f, c):
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


def _mul(f, g):
    if not f or not g:
        return {}
    if len(f) < len(g):
        f, g = g, f
    if len(g) == 1:
        ((kg, cg),) = g.items()
        if cg == 1:
            return {k + kg: v for k, v in f.items()}
        return {k + kg: v * cg for k, v in f.items()}
    out = {}
    get = out.get
    fitems = list(f.items())
    for kg, cg in g.items():
        for kf, cf in fitems:
            k = kf + kg
            out[k] = get(k, 0) + cf * cg
    return {k: v for k, v in out.items() if v}


def _divexact(f, g, nvars):
    if not g:
        raise DivisionByZero("exact division by the zero polynomial")
    if not f:
        return {}
    lk = max(g)
    lc = g[lk]
    if len(g) == 1:
        out = {}
        for k, c in f.items():
            if not _divides(lk, k, nvars):
                raise NotDivisible("monomial does not divide")
            out[k - lk] = scalar_div(c, lc)
        return out
    int_lead = type(lc) is int
    inv = None if int_lead else scalar_div(1, lc)
    offsets = [(k - lk, c) for k, c in g.items() if k != lk]
    r = dict(f)
    heap = [-k for k in r]
    heapify(heap)
    q = {}
    while heap:
        k = -heappop(heap)
        c = r.pop(k, None)
        if c is None:
            continue
        if not _divides(lk, k, nvars):
            raise NotDivisible("division is not exact")
        if int_lead and type(c) is int:
            qc, rem = divmod(c, lc)
            if rem:
                qc = Fraction(c, lc)
        else:
            qc = normalize(c * inv) if inv is not None else scalar_div(c, lc)
        q[k - lk] = qc
        for off, gc in offsets:
            kk = k + off
            v = r.get(kk)
            if v is None:
                r[kk] = -qc * gc
                heappush(heap, -kk)
            else:
                v = v - qc * gc
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return q


class CommPoly:
    """Immutable sparse polynomial in ``nvars`` commuting variables.

    Build from a mapping of exponent tuples to scalars; zero coefficients are
    dropped.  Scalars may be ``int``, ``Fraction`` or :class:`Coefficient`.
    """

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        t = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise DimensionMismatch(f"exponent {exps} has length != {nvars}")
                if c:
                    k = pack(exps)
                    v = t.get(k)
                    t[k] = c if v is None else v + c
        self._t = {k: normalize(v) for k, v in t.items() if v}
        self._hash = None

    @classmethod
    def _wrap(cls, nvars, raw):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._t = raw
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = normalize(c)
        return cls._wrap(nvars, {0: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars, i, power=1):
        exps = [0] * nvars
        exps[i] = power
        return cls._wrap(nvars, {pack(exps): 1})

    @classmethod
    def monomial(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): c})

    # -- views ---------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return {unpack(k, self.nvars): c for k, c in self._t.items()}

    def items(self):
        """(exponents, coefficient) pairs in descending graded-lex order."""
        n = self.nvars
        return [(unpack(k, n), self._t[k]) for k in sorted(self._t, reverse=True)]

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._t)

    def constant_term(self):
        return self._t.get(0, 0)

    def coefficient(self, exps):
        return self._t.get(pack(exps), 0)

    def total_degree(self) -> int:
        if not self._t:
            raise ZeroPolynomial("degree of zero polynomial")
        return max(self._t) >> (BITS * self.nvars)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading monomial."""
        if not self._t:
            raise ZeroPolynomial("leading term of zero polynomial")
        k = max(self._t)
        return unpack(k, self.nvars), self._t[k]

    # -- arithmetic ------------------------------------------------------------

    def _other(self, other):
        if isinstance(other, CommPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other._t
        if isinstance(other, (int, Fraction, Coefficient)) and not isinstance(other, bool):
            return {0: normalize(other)} if other else {}
        return None

    def __add__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        return CommPoly._wrap(self.nvars, _add(self._t, t))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        return CommPoly._wrap(self.nvars, _sub(self._t, t))

    def __rsub__(self, other):
        t = self._other(other)
        if t is None:
            return NotImplemented
        return CommPoly._wrap(self.nvars, _sub(t, self._t))

    def __neg__(self):
        return CommPoly._wrap(self.nvars, {k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, CommPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            if self._t and other._t and self.total_degree() + other.total_degree() >= MAX_DEGREE:
                raise ValueError("degree overflow")
            return CommPoly._wrap(self.nvars, _mul(self._t, other._t))
        if isinstance(other, (int, Fraction, Coefficient)) and not isinstance(other, bool):
            return CommPoly._wrap(self.nvars, _scale(self._t, normalize(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = CommPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CommPoly):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Fraction, Coefficient)):
            if not other:
                return not self._t
            return len(self._t) == 1 and self._t.get(0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def exact_divide(self, other: CommPoly) -> CommPoly:
        return exact_divide(self, other)

    # -- substitutions ----------------------------------------------------------

    def monomial_substitute(self, perm, scales) -> CommPoly:
        """Apply z_i -> scales[i] * z_{perm[i]} (a monomial change of variables)."""
        n = self.nvars
        out = {}
        for k, c in self._t.items():
            e = unpack(k, n)
            new = [0] * n
            for i, ei in enumerate(e):
                if ei:
                    new[perm[i]] += ei
                    c = c * scales[i] ** ei
            out[pack(new)] = normalize(c)
        return CommPoly._wrap(n, {k: v for k, v in out.items() if v})

    def embed(self, nvars: int, offset: int = 0) -> CommPoly:
        """Re-index into a ring with ``nvars`` variables, shifting z_i to z_{i+offset}."""
        if offset + self.nvars > nvars:
            raise DimensionMismatch("target ring too small")
        out = {}
        for k, c in self._t.items():
            e = [0] * nvars
            e[offset:offset + self.nvars] = unpack(k, self.nvars)
            out[pack(e)] = c
        return CommPoly._wrap(nvars, out)

    def evaluate(self, values):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    # -- text ------------------------------------------------------------------

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CommPoly({self.to_text()!r}, nvars={self.nvars})"

    def to_text(self, var: str = "z") -> str:
        if not self._t:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"{var}{i + 1}")
                elif k > 1:
                    factors.append(f"{var}{i + 1}^{k}")
            parts.append(_format_term(c, factors))
        return _join_terms(parts)


def _format_term(c, factors):
    """Return (negative, body) for one term of a printed polynomial."""
    mono = "*".join(factors)
    if is_rational_scalar(c):
        c = normalize(Fraction(c.residue[0]) if isinstance(c, Coefficient) else c)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            return neg, format_scalar(mag)
        if mag == 1:
            return neg, mono
        return neg, f"{format_scalar(mag)}*{mono}"
    body = f"({c})"
    return False, body if not mono else f"{body}*{mono}"


def _join_terms(parts):
    out = []
    for idx, (neg, body) in enumerate(parts):
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- module-level operations -------------------------------------------------

def exact_divide(f: CommPoly, g: CommPoly) -> CommPoly:
    """Return q with f = q*g; raises NotDivisible when no such q exists."""
    if f.nvars != g.nvars:
        raise DimensionMismatch(f"{f.nvars} vs {g.nvars} variables")
    return CommPoly._wrap(f.nvars, _divexact(f._t, g._t, f.nvars))


def weighted_degree(exps, weights) -> int:
    return sum(e * w for e, w in zip(exps, weights))


def principal_term(f: CommPoly, weights=None) -> CommPoly:
    """Sum of the terms of maximal weighted total degree."""
    if f.is_zero():
        raise ZeroPolynomial("principal term of zero")
    weights = weights or [1] * f.nvars
    if len(weights) != f.nvars:
        raise DimensionMismatch("one weight per variable is required")
    terms = f.terms
    top = max(weighted_degree(e, weights) for e in terms)
    return CommPoly(f.nvars, {e: c for e, c in terms.items() if weighted_degree(e, weights) == top})


def is_cwlt(a, b) -> bool:
    """Component-wise less than: a <= b everywhere, strictly somewhere."""
    if len(a) != len(b):
        raise DimensionMismatch("exponent vectors of different length")
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def is_dominating_sufficient(f: CommPoly) -> bool:
    """Sufficient dominance test: f = c*z^b + (terms cwlt b) with every b_i > 0."""
    if f.is_zero():
        raise ZeroPolynomial("dominance of zero")
    if f.nvars == 0:
        return False
    terms = f.terms
    top = tuple(max(col) for col in zip(*terms))
    # every term is <= the component-wise max; it suffices that the max is itself a term
    return top in terms and all(b > 0 for b in top)


def equal_up_to_unit(f: CommPoly, g: CommPoly):
    """Return c in K^x with f = c*g, or None when no such scalar exists."""
    if f.nvars != g.nvars:
        raise DimensionMismatch(f"{f.nvars} vs {g.nvars} variables")
    if f.is_zero() or g.is_zero():
        return 1 if f.is_zero() and g.is_zero() else None
    if len(f) != len(g):
        return None
    k = max(f._t)
    if k not in g._t:
        return None
    c = scalar_div(f._t[k], g._t[k])
    return c if f == g * c else None


class PolyMatrix:
    """Dense rectangular matrix of CommPoly entries sharing one variable count."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries, nvars=None):
        entries = [list(r) for r in entries]
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(r) != self.cols for r in entries):
            raise DimensionMismatch("ragged matrix")
        if nvars is None:
            nvars = entries[0][0].nvars if self.rows and self.cols else 0
        self.nvars = nvars
        for r in entries:
            for i, e in enumerate(r):
                if not isinstance(e, CommPoly):
                    r[i] = e = CommPoly.constant(nvars, e)
                if e.nvars != nvars:
                    raise DimensionMismatch("entries with different variable counts")
        self.entries = entries

    @classmethod
    def identity(cls, size, nvars):
        return cls(
            [[CommPoly.constant(nvars, int(i == j)) for j in range(size)] for i in range(size)],
            nvars,
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.nvars == other.nvars
            and self.entries == other.entries
        )

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows or self.nvars != other.nvars:
            raise DimensionMismatch("incompatible matrix shapes")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = {}
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = _add(acc, _mul(a._t, b._t))
                row.append(CommPoly._wrap(self.nvars, acc))
            out.append(row)
        return PolyMatrix(out, self.nvars)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix([list(col) for col in zip(*self.entries)], self.nvars)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def trace(self) -> CommPoly:
        acc = CommPoly.zero(self.nvars)
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def determinant(self) -> CommPoly:
        return bareiss_determinant(self)

    def __repr__(self):
        return f"PolyMatrix({[[str(e) for e in r] for r in self.entries]})"


def _blocks(a):
    """Connected components of the graph i ~ j iff a[i][j] or a[j][i] is nonzero."""
    n = len(a)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (a[i][j] or a[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def bareiss_determinant(m: PolyMatrix) -> CommPoly:
    """Fraction-free Gaussian elimination; every division is exact.

    The matrix is first split into diagonal blocks by a simultaneous row and
    column permutation (which leaves the determinant unchanged).
    """
    if m.rows != m.cols:
        raise DimensionMismatch(f"determinant of a {m.rows}x{m.cols} matrix")
    n, nv = m.rows, m.nvars
    if n == 0:
        return CommPoly.one(nv)
    a = [[e._t for e in row] for row in m.entries]
    det = {0: 1}
    for comp in _blocks(a):
        block = [[a[i][j] for j in comp] for i in comp]
        d = _bareiss(block, nv)
        if not d:
            return CommPoly.zero(nv)
        det = _mul(det, d)
    return CommPoly._wrap(nv, det)


def _bareiss(a, nv):
    n = len(a)
    if n == 1:
        return dict(a[0][0])
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for p in range(k + 1, n):
                if a[p][k]:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return {}
        pivot = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                aij = rowi[j]
                akj = rowk[j]
                t = _mul(pivot, aij) if aij else {}
                if aik and akj:
                    t = _sub(t, _mul(aik, akj))
                if prev is not None and t:
                    t = _divexact(t, prev, nv)
                rowi[j] = t
            rowi[k] = {}
        prev = pivot
    det = a[n - 1][n - 1]
    if sign < 0:
        det = {k: -c for k, c in det.items()}
    return det


def cpoly_arith(op: str, f: CommPoly, g: CommPoly | None = None) -> CommPoly:
    if op == "negate":
        return -f
    if g is None or g.nvars != f.nvars:
        raise DimensionMismatch("operands live in different polynomial rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
