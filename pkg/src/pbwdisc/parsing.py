"""Recursive-descent parser for scalars, center polynomials and algebra elements.

Grammar (one shared grammar, three targets)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | 'z' | 'z'uint | 'x'uint | '(' expr ')'
    rational := int ('/' uint)?

``z`` alone is the primitive element of the coefficient field, ``z3`` is the
third center variable and ``x3`` the third generator.  ``*`` is left
associative and, for algebra elements, noncommutative.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import QQ, NumberField

_TOKEN = re.compile(r"\s*(?:(\d+)|([xz])(\d*)|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches something
            raise ParseError("unexpected input", pos)
        num, letter, index, other = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("int", int(num), start))
        elif letter is not None:
            if index:
                tokens.append((letter, int(index), start))
            elif letter == "z":
                tokens.append(("zeta", None, start))
            else:
                raise ParseError("generator 'x' needs an index", start)
        elif other in "+-*^/(),":
            tokens.append((other, None, start))
        else:
            raise ParseError(f"unexpected character {other!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.tokens = tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", f"column {tok[2] + 1}")
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.tokens[self.i]
        if tok[0] not in ("end",):
            raise ParseError(f"unexpected {tok[0]!r}", f"column {tok[2] + 1}")
        return value

    def parse_list(self):
        values = [self.expr()]
        while self.peek() == ",":
            self.take(",")
            values.append(self.expr())
        self.take("end")
        return values

    def expr(self):
        negate = False
        if self.peek() in "+-":
            negate = self.take()[0] == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take("*")
            value = value * self.factor()
        return value

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            exponent = self.take("int")[1]
            result = self.ctx.const(1)
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def atom(self):
        kind, value, pos = self.tokens[self.i]
        where = f"column {pos + 1}"
        if kind == "int":
            self.take()
            if self.peek() == "/":
                self.take("/")
                den = self.take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator", where)
                return self.ctx.const(Fraction(value, den))
            return self.ctx.const(value)
        if kind == "zeta":
            self.take()
            return self.ctx.zeta()
        if kind in ("x", "z"):
            self.take()
            if value < 1:
                raise ParseError(f"index must be >= 1 in {kind}{value}", where)
            return self.ctx.gen(value - 1, where) if kind == "x" else self.ctx.var(value - 1, where)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {kind!r}", where)


class _ScalarContext:
    def __init__(self, field):
        self.field = field

    def const(self, c):
        return self.field.element(c)

    def zeta(self):
        return self.field.zeta()

    def gen(self, i, where):
        raise ParseError("generators are not allowed in a coefficient literal", where)

    var = gen


class _CommContext(_ScalarContext):
    def __init__(self, nvars, field):
        super().__init__(field)
        self.nvars = nvars

    def const(self, c):
        from .poly import CommPoly

        return CommPoly.constant(self.nvars, self.field.element(c))

    def zeta(self):
        from .poly import CommPoly

        return CommPoly.constant(self.nvars, self.field.zeta())

    def var(self, i, where):
        from .poly import CommPoly

        if i >= self.nvars:
            raise ParseError(f"z{i + 1} out of range (only {self.nvars} variables)", where)
        return CommPoly.variable(self.nvars, i)

    def gen(self, i, where):
        raise ParseError("generators are not allowed in a center polynomial", where)


class _AlgebraContext(_ScalarContext):
    def __init__(self, spec, center=None):
        super().__init__(spec.field)
        self.spec = spec
        self.center = center

    def const(self, c):
        return self.spec.scalar(self.field.element(c))

    def zeta(self):
        return self.spec.scalar(self.field.zeta())

    def gen(self, i, where):
        if i >= self.spec.n:
            raise ParseError(f"x{i + 1} out of range (algebra has {self.spec.n} generators)", where)
        return self.spec.gen(i)

    def var(self, i, where):
        if self.center is None:
            raise ParseError("center variables need a declared center", where)
        if i >= self.spec.n:
            raise ParseError(f"z{i + 1} out of range", where)
        return self.spec.gen(i) ** self.center.powers[i]


def parse_scalar(text: str, field: NumberField = QQ):
    return _Parser(text, _ScalarContext(field)).parse()


def parse_commpoly(text: str, nvars: int, field: NumberField = QQ):
    return _Parser(text, _CommContext(nvars, field)).parse()


def parse_element(text: str, spec, center=None):
    """Parse an algebra element; ``zi`` is accepted when a center is given."""
    return _Parser(text, _AlgebraContext(spec, center)).parse()


def parse_element_list(text: str, spec, center=None):
    return _Parser(text, _AlgebraContext(spec, center)).parse_list()
