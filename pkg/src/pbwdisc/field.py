"""Exact arithmetic in K = Q[z]/(m(z)) for a monic rational polynomial m.

Over Q itself (m = z - 1) the rest of the package works with plain ``int``
and ``Fraction`` scalars, which keeps the hot polynomial loops cheap.  For a
proper extension, scalars are :class:`Coefficient` instances.  Both kinds
support the usual number operators, so downstream code is written once.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, IncompatibleField, NotAField


def normalize(x):
    """Collapse an integral ``Fraction`` to ``int``; pass everything else through."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def scalar_div(a, b):
    if isinstance(b, Coefficient) or isinstance(a, Coefficient):
        return a / b
    if b == 0:
        raise DivisionByZero("division by zero scalar")
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return normalize(Fraction(a) / Fraction(b))


def scalar_inverse(x):
    return scalar_div(1, x)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- dense polynomials over Q, ascending coefficient lists -----------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    for i, b in enumerate(q):
        p[i] -= b
    return _trim(p)


def _poly_divmod(p, q):
    p, q = _trim(p), _trim(q)
    if not q:
        raise DivisionByZero("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        c = Fraction(p[-1]) / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        p = _trim(p)
    return _trim(quot), p


def _ext_gcd(a, b):
    """Return (g, s) with g = gcd(a, b) and s*a = g mod b."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        qt, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(qt, s1))
    return r0, s0


class NumberField:
    """The minimal polynomial m of the primitive element, as a field object.

    ``coefficients`` are ascending (constant term first) and m is monic.
    Irreducibility is not checked; a failed inversion raises ``NotAField``.
    """

    __slots__ = ("coefficients", "degree", "name")

    def __init__(self, coefficients, name=None):
        coeffs = tuple(Fraction(c) for c in coefficients)
        coeffs = tuple(_trim(coeffs))
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.coefficients = coeffs
        self.degree = len(coeffs) - 1
        self.name = name

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(("NumberField", self.coefficients))

    def __repr__(self):
        if self.name:
            return f"NumberField({self.name})"
        return f"NumberField({self.minpoly_str()})"

    def minpoly_str(self) -> str:
        return _format_zeta_poly(list(self.coefficients))

    # -- element construction ------------------------------------------------

    def element(self, x):
        """Coerce ``x`` into this field's canonical scalar type."""
        if isinstance(x, Coefficient):
            if x.field != self:
                raise IncompatibleField(f"{x.field!r} vs {self!r}")
            if self.is_rational:
                return normalize(x.residue[0])
            return x
        if isinstance(x, str):
            from .parsing import parse_scalar

            return parse_scalar(x, self)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        if self.is_rational:
            return normalize(x)
        return Coefficient(self, (x,))

    def coefficient(self, x) -> Coefficient:
        """Like :meth:`element` but always returns a :class:`Coefficient`."""
        if isinstance(x, Coefficient):
            if x.field != self:
                raise IncompatibleField(f"{x.field!r} vs {self!r}")
            return x
        if isinstance(x, str):
            x = self.element(x)
            return x if isinstance(x, Coefficient) else Coefficient(self, (x,))
        return Coefficient(self, (x,))

    def zeta(self):
        if self.is_rational:
            return normalize(-self.coefficients[0])
        return Coefficient(self, (0, 1))

    def reduce(self, poly):
        """Reduce an ascending coefficient list modulo m; returns a residue tuple."""
        p = [Fraction(c) for c in poly]
        m = self.coefficients
        d = self.degree
        for top in range(len(p) - 1, d - 1, -1):
            c = p[top]
            if c:
                shift = top - d
                for i in range(d):
                    p[shift + i] -= c * m[i]
            p[top] = Fraction(0)
        p = p[:d] + [Fraction(0)] * (d - len(p))
        return tuple(p)


QQ = NumberField((-1, 1), name="Q")


def cyclotomic_field(order: int) -> NumberField:
    """Q(zeta_l) via the l-th cyclotomic polynomial."""
    if order < 1:
        raise ValueError("order must be positive")
    if order <= 2:
        # Phi_1 = z - 1, Phi_2 = z + 1; both give Q
        return NumberField((-1, 1) if order == 1 else (1, 1), name=f"Q(zeta_{order})")
    poly = [Fraction(-1)] + [Fraction(0)] * (order - 1) + [Fraction(1)]
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_field(d).coefficients))
            assert not rem
    return NumberField(poly, name=f"Q(zeta_{order})")


class Coefficient:
    """An element of K, stored as its fully reduced residue (ascending powers of z)."""

    __slots__ = ("field", "residue")

    def __init__(self, field: NumberField, residue):
        residue = [Fraction(c) for c in residue]
        if len(residue) != field.degree:
            residue = list(field.reduce(residue))
        self.field = field
        self.residue = tuple(residue)

    @classmethod
    def _raw(cls, field, residue):
        obj = object.__new__(cls)
        obj.field = field
        obj.residue = residue
        return obj

    def _coerce(self, other):
        if isinstance(other, Coefficient):
            if other.field != self.field:
                raise IncompatibleField(f"{self.field!r} vs {other.field!r}")
            return other.residue
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return Coefficient._raw(self.field, tuple(a + b for a, b in zip(self.residue, r)))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return Coefficient._raw(self.field, tuple(a - b for a, b in zip(self.residue, r)))

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return Coefficient._raw(self.field, tuple(b - a for a, b in zip(self.residue, r)))

    def __neg__(self):
        return Coefficient._raw(self.field, tuple(-a for a in self.residue))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Coefficient._raw(self.field, tuple(a * other for a in self.residue))
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return Coefficient._raw(self.field, self.field.reduce(_poly_mul(self.residue, r)))

    __rmul__ = __mul__

    def inverse(self) -> Coefficient:
        res = _trim(self.residue)
        if not res:
            raise DivisionByZero("inverse of zero")
        g, s = _ext_gcd(res, list(self.field.coefficients))
        if len(g) != 1:
            raise NotAField(
                f"{self} shares a factor with the modulus {self.field.minpoly_str()}"
            )
        s = [c / g[0] for c in s]
        return Coefficient(self.field, self.field.reduce(s))

    def __truediv__(self, other):
        if isinstance(other, Coefficient):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZero("division by zero scalar")
            return Coefficient._raw(self.field, tuple(a / other for a in self.residue))
        return NotImplemented

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is None:
            return NotImplemented
        return Coefficient._raw(self.field, r) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Coefficient._raw(self.field, self._coerce(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.residue)

    def is_rational(self) -> bool:
        return not any(self.residue[1:])

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.field == other.field and self.residue == other.residue
        if isinstance(other, (int, Fraction)):
            return self.residue[0] == other and not any(self.residue[1:])
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.residue[0])
        return hash(self.residue)

    def __str__(self):
        return _format_zeta_poly(list(self.residue))

    def __repr__(self):
        return f"Coefficient({self})"


def _format_zeta_poly(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            body = format_rational(abs(c))
        else:
            power = "z" if k == 1 else f"z^{k}"
            body = power if abs(c) == 1 else f"{format_rational(abs(c))}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts) if parts else "0"


def format_scalar(x) -> str:
    if isinstance(x, Coefficient):
        return str(x)
    return format_rational(x)


def is_rational_scalar(x) -> bool:
    if isinstance(x, Coefficient):
        return x.is_rational()
    return True


def rational_part(x) -> Fraction:
    if isinstance(x, Coefficient):
        return x.residue[0]
    return Fraction(x)


# -- square roots ---------------------------------------------------------

def rational_sqrt(x):
    """Exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return normalize(Fraction(rn, rd))
    return None


def field_sqrt(c, field: NumberField):
    """Return one square root of ``c`` in ``field`` (the other is its negative), or None.

    Exact over Q and over quadratic fields.  For larger fields only roots of
    the form rational * z^k are found.
    """
    if c == 0:
        return field.element(0)
    if field.is_rational:
        return rational_sqrt(rational_part(c))
    c = field.coefficient(c)
    if field.degree == 2:
        return _quadratic_field_sqrt(c, field)
    zeta = field.coefficient(field.zeta())
    power = field.coefficient(1)
    seen = set()
    for _ in range(4 * field.degree * field.degree + 4):
        if power.residue in seen:
            break
        seen.add(power.residue)
        t = c / (power * power)
        if t.is_rational():
            r = rational_sqrt(t.residue[0])
            if r is not None:
                return power * r
        power = power * zeta
    return None


def _quadratic_field_sqrt(c: Coefficient, field: NumberField):
    # m = z^2 + p z + s, y = a + b z, y^2 = (a^2 - s b^2) + (2ab - p b^2) z
    s, p = field.coefficients[0], field.coefficients[1]
    c0, c1 = c.residue
    if c1 == 0:
        a = rational_sqrt(c0)
        if a is not None:
            return field.coefficient(a)
    # with u = b^2: (p^2 - 4s) u^2 + (2 p c1 - 4 c0) u + c1^2 = 0
    A, B, C = p * p - 4 * s, 2 * p * c1 - 4 * c0, c1 * c1
    roots = []
    if A == 0:
        if B != 0:
            roots.append(-C / B)
    else:
        disc = B * B - 4 * A * C
        r = rational_sqrt(disc)
        if r is not None:
            roots.extend({(-B + r) / (2 * A), (-B - r) / (2 * A)})
    for u in sorted(roots):
        b = rational_sqrt(u)
        if b is None or b == 0:
            continue
        a = (c1 + p * b * b) / (2 * b)
        y = Coefficient(field, (a, b))
        if y * y == c:
            return y
    return None


def field_arith(op: str, x, y):
    """``add``, ``sub`` or ``mul`` of two scalars of the same field."""
    if isinstance(x, Coefficient) and isinstance(y, Coefficient) and x.field != y.field:
        raise IncompatibleField(f"{x.field!r} vs {y.field!r}")
    if op == "add":
        return normalize(x + y)
    if op == "sub":
        return normalize(x - y)
    if op == "mul":
        return normalize(x * y)
    raise ValueError(f"unknown operation {op!r}")


def field_inverse(x):
    return normalize(scalar_inverse(x))
