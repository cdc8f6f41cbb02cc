"""Dense univariate polynomials over ExactScalar, ascending coefficients."""

from __future__ import annotations

from .errors import DivisionByZero
from .scalars import ExactScalar, ONE, ZERO


class Polynomial:
    """Polynomial with exact coefficients; the zero polynomial is empty."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, ExactScalar) else ExactScalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial([c])

    @staticmethod
    def variable() -> "Polynomial":
        return Polynomial([0, 1])

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> ExactScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def constant_term(self) -> ExactScalar:
        return self.coeffs[0] if self.coeffs else ZERO

    def coeff(self, k: int) -> ExactScalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return Polynomial([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: ExactScalar) -> "Polynomial":
        return Polynomial([a * c for a in self.coeffs])

    def divmod(self, other: "Polynomial"):
        """Exact field division with remainder."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree() < other.degree():
            return Polynomial(), self
        rem = list(self.coeffs)
        q = [ZERO] * (self.degree() - other.degree() + 1)
        lead = other.leading()
        for k in range(len(q) - 1, -1, -1):
            top = rem[k + other.degree()]
            if top.is_zero():
                continue
            factor = top / lead
            q[k] = factor
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * b
        return Polynomial(q), Polynomial(rem[: other.degree()])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead.is_one():
            return self
        inv = ONE / lead
        return Polynomial([c * inv for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor over the field."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Polynomial":
        return Polynomial(
            [self.coeffs[k] * k for k in range(1, len(self.coeffs))]
        )

    def evaluate(self, x: ExactScalar) -> ExactScalar:
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose(self, inner: "Polynomial") -> "Polynomial":
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * inner + Polynomial([c])
        return out

    def compose_fraction(self, num: "Polynomial", den: "Polynomial") -> "Polynomial":
        """Numerator of self(num/den), i.e. sum c_k num^k den^(deg-k)."""
        d = self.degree()
        if d < 0:
            return Polynomial()
        out = Polynomial()
        num_pow = Polynomial([1])
        den_pows = [Polynomial([1])]
        for _ in range(d):
            den_pows.append(den_pows[-1] * den)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + (num_pow * den_pows[d - k]).scale(c)
            if k < d:
                num_pow = num_pow * num
        return out

    def shift_argument(self, c: ExactScalar) -> "Polynomial":
        """self(z + c)."""
        return self.compose(Polynomial([c, 1]))

    def reversed_coeffs(self) -> "Polynomial":
        """z^deg * self(1/z)."""
        return Polynomial(list(reversed(self.coeffs)))

    def trailing_order(self) -> int:
        """Multiplicity of the root z = 0; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return -1

    def __str__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, ExactScalar)):
        return Polynomial([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")
