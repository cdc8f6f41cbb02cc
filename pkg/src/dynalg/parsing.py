"""Expression grammar for maps in the variable z, plus the canonical printer.

Grammar: scalar literals, `z`, `+ - * / ^` with nonnegative integer
exponents, parentheses, and the atom `i` when the field is Q(i).  The
printer emits the same grammar, and parse(print(x)) == x on canonical
forms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .poly import Polynomial
from .ratfunc import PointP1, RationalFunction
from .scalars import ExactScalar, Field, QQ, parse_scalar

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, k))
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(("int", text[start:k], start))
            continue
        if ch == "z":
            tokens.append(("z", ch, k))
            k += 1
            continue
        if ch == "i":
            tokens.append(("i", ch, k))
            k += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", k, expected="token")
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(
                f"expected {kind!r} but found {tok[1]!r}", tok[2], expected=kind
            )
        self.pos += 1
        return tok

    def parse(self) -> RationalFunction:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(
                f"trailing input starting at {tok[1]!r}", tok[2], expected="eof"
            )
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> RationalFunction:
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return -self.unary()
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            return base ** int(tok[1])
        return base

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok[0] == "int":
            return RationalFunction.constant(ExactScalar(Fraction(tok[1])))
        if tok[0] == "z":
            return RationalFunction.variable()
        if tok[0] == "i":
            if not self.field.has_i:
                raise ParseError(
                    "the atom 'i' needs field Qi", tok[2], expected="atom"
                )
            return RationalFunction.constant(ExactScalar(0, 1))
        if tok[0] == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(
            f"expected a value but found {tok[1] or 'end of input'!r}",
            tok[2],
            expected="atom",
        )


def parse_ratfunc(text: str, field: Field = QQ) -> RationalFunction:
    """Parse an expression in z into a reduced, denominator-monic map."""
    return _Parser(text, field).parse()


def parse_point(text: str, field: Field = QQ) -> PointP1:
    s = text.strip()
    if s in ("inf", "oo", "infinity"):
        return PointP1.infinity()
    return PointP1(parse_scalar(s, field))


# -- canonical printer ------------------------------------------------------


def format_scalar_factor(c: ExactScalar) -> str:
    """Scalar as a multiplicative factor; complex values get parentheses."""
    if c.is_real():
        return str(c)
    return f"({c})"


def _format_term(c: ExactScalar, k: int) -> str:
    if k == 0:
        return format_scalar_factor(c)
    var = "z" if k == 1 else f"z^{k}"
    if c.is_one():
        return var
    if c == ExactScalar(-1):
        return f"-{var}"
    return f"{format_scalar_factor(c)}*{var}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeff(k)
        if c.is_zero():
            continue
        term = _format_term(c, k)
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(term)
        else:
            parts.append("+" + term)
    return "".join(parts)


def format_ratfunc(r: RationalFunction) -> str:
    if r.den.degree() == 0 and r.den.leading().is_one():
        return format_polynomial(r.num)
    return f"({format_polynomial(r.num)})/({format_polynomial(r.den)})"
