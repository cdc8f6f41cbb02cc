"""Exact scalars: elements of Q or Q(i) in canonical normalized form.

An ExactScalar is a Gaussian rational stored as two fractions.  Values in
Q-mode simply keep the imaginary part at zero; the active field (Q or Qi)
is a property of the computation, fixed per invocation, and is enforced at
the parsing and root-extraction boundaries rather than on every value.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from .errors import DivisionByZero, ScalarParseError


class Field:
    """Coefficient field selector, Q or Q(i)."""

    def __init__(self, name: str):
        self.name = name

    @property
    def has_i(self) -> bool:
        return self.name == "Qi"

    def __repr__(self):
        return f"Field({self.name})"

    def __str__(self):
        return self.name


QQ = Field("Q")
QI = Field("Qi")


def field_by_name(name: str) -> Field:
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Qi", "QI", "Q(i)"):
        return QI
    raise ScalarParseError(f"unknown field {name!r}; use Q or Qi")


class ExactScalar:
    """Immutable Gaussian rational with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "ExactScalar":
        return ExactScalar(n)

    @staticmethod
    def i() -> "ExactScalar":
        return ExactScalar(0, 1)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            return ExactScalar(self.re * other.re)
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        if not self.im and not other.im:
            return ExactScalar(self.re / other.re)
        n2 = other.re * other.re + other.im * other.im
        return ExactScalar(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ExactScalar(1) / self ** (-k)
        out = ExactScalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Exact |z|^2 as a fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparison and hashing ------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        # total order used only for deterministic output, not field order
        return (self.re, self.im)

    def bit_size(self) -> int:
        return (
            self.re.numerator.bit_length()
            + self.re.denominator.bit_length()
            + self.im.numerator.bit_length()
            + self.im.denominator.bit_length()
        )

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        im_abs = -self.im if self.im < 0 else self.im
        unit = "i" if im_abs == 1 else f"{im_abs}i"
        sign = "-" if self.im < 0 else "+"
        if not self.re:
            return ("-" + unit) if self.im < 0 else unit
        return f"{self.re}{sign}{unit}"

    def __repr__(self):
        return f"ExactScalar({str(self)!r})"


def _coerce(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    return NotImplemented


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)

UNITS_Q = (ONE, -ONE)
UNITS_QI = (ONE, I, -ONE, -I)


def units(field: Field):
    return UNITS_QI if field.has_i else UNITS_Q


_RAT = r"\d+(?:/\d+)?"
_RE_REAL = _re.compile(rf"^([+-]?{_RAT})$")
_RE_IMAG = _re.compile(rf"^([+-]?)({_RAT})?i$")
_RE_BOTH = _re.compile(rf"^([+-]?{_RAT})([+-])({_RAT})?i$")


def parse_scalar(text: str, field: Field = QQ) -> ExactScalar:
    """Parse a scalar literal: `p`, `p/q`, or `p/q+r/si` with optional sign.

    Whitespace-insensitive.  Imaginary parts are rejected unless the field
    is Q(i).
    """
    s = "".join(text.split())
    if not s:
        raise ScalarParseError("empty scalar literal")
    m = _RE_REAL.match(s)
    if m:
        return ExactScalar(Fraction(m.group(1)))
    m = _RE_IMAG.match(s)
    if m:
        if not field.has_i:
            raise ScalarParseError(f"imaginary literal {text!r} is not in field Q")
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        return ExactScalar(0, -mag if m.group(1) == "-" else mag)
    m = _RE_BOTH.match(s)
    if m:
        if not field.has_i:
            raise ScalarParseError(f"imaginary literal {text!r} is not in field Q")
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        return ExactScalar(Fraction(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ScalarParseError(f"cannot parse scalar literal {text!r}")
