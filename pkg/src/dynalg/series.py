"""Truncated power/Laurent series and the two functional-equation solvers.

The linearization solver produces the unique series P with P(0) = z0,
P'(0) = 1 and A(P(z)) = P(lam*z) mod z^(N+1), by the mismatch recursion
p_k = m_k / (lam^k - lam).  The Boettcher solver produces the Laurent
series B = a(-1) z + a0 + a1/z + ... with B(z^n) = A(B(z)), solved top
down after pinning a(-1) by exact root extraction in the field.
"""

from __future__ import annotations

from .errors import (
    DegreeTooSmall,
    LeadingCoefficientNotSolvable,
    NotAFixedPoint,
    PoleAtBasePoint,
    ResonantMultiplier,
    ZeroMultiplier,
)
from .numtheory import nth_root_in_field
from .poly import Polynomial
from .ratfunc import PointP1, RationalFunction, multiplier_at
from .scalars import ExactScalar, Field, ONE, QQ, ZERO, units


class TruncatedPowerSeries:
    """Coefficients c0..cN around z = 0; arithmetic never reads past N."""

    __slots__ = ("base_point", "coeffs")

    def __init__(self, coeffs, base_point=None):
        cs = tuple(
            c if isinstance(c, ExactScalar) else ExactScalar(c) for c in coeffs
        )
        if not cs:
            raise ValueError("a truncated series needs at least c0")
        if base_point is None:
            base_point = PointP1(cs[0])
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "base_point", base_point)

    def __setattr__(self, name, v):
        raise AttributeError("TruncatedPowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ExactScalar:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedPowerSeries) and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, n: int) -> "TruncatedPowerSeries":
        if n >= self.order:
            return self
        return TruncatedPowerSeries(self.coeffs[: n + 1], self.base_point)

    def __add__(self, other):
        n = min(self.order, other.order)
        return TruncatedPowerSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        )

    def __sub__(self, other):
        n = min(self.order, other.order)
        return TruncatedPowerSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)]
        )

    def __neg__(self):
        return TruncatedPowerSeries([-c for c in self.coeffs], self.base_point)

    def scale(self, c) -> "TruncatedPowerSeries":
        c = c if isinstance(c, ExactScalar) else ExactScalar(c)
        return TruncatedPowerSeries([a * c for a in self.coeffs])

    def __mul__(self, other):
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedPowerSeries(out)

    def argument_scale(self, c) -> "TruncatedPowerSeries":
        """self(c*z)."""
        c = c if isinstance(c, ExactScalar) else ExactScalar(c)
        out = []
        power = ONE
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return TruncatedPowerSeries(out, self.base_point)

    def divide(self, other: "TruncatedPowerSeries") -> "TruncatedPowerSeries":
        """Exact series division; the divisor needs a nonzero constant term."""
        if other.coeffs[0].is_zero():
            raise PoleAtBasePoint("series division by a series vanishing at 0")
        n = min(self.order, other.order)
        inv0 = ONE / other.coeffs[0]
        out = [ZERO] * (n + 1)
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                b = other.coeffs[j]
                if not b.is_zero():
                    acc = acc - b * out[k - j]
            out[k] = acc * inv0
        return TruncatedPowerSeries(out)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def first_nonzero_index(self):
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def to_json(self) -> dict:
        return {
            "base_point": str(self.base_point),
            "order": str(self.order),
            "coefficients": [str(c) for c in self.coeffs],
        }

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedPowerSeries([{head}{tail}], order={self.order})"


def compose_polynomial(p: Polynomial, s: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """p(s), truncated at the order of s."""
    out = TruncatedPowerSeries([ZERO] * (s.order + 1))
    for c in reversed(p.coeffs):
        out = out * s + TruncatedPowerSeries([c] + [ZERO] * s.order)
    return out


def compose_ratfunc(R: RationalFunction, s: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """R(s) via numerator/denominator series and exact division."""
    den = compose_polynomial(R.den, s)
    if den.coeffs[0].is_zero():
        raise PoleAtBasePoint(
            f"the map has a pole at the series base point {s.coeffs[0]}"
        )
    num = compose_polynomial(R.num, s)
    return num.divide(den)


def series_substitute_power(s: TruncatedPowerSeries, d: int) -> TruncatedPowerSeries:
    """s(z^d); coefficients spread to multiples of d, order d * N."""
    if d < 1:
        raise ValueError("power substitution needs d >= 1")
    if d == 1:
        return s
    out = [ZERO] * (s.order * d + 1)
    for k, c in enumerate(s.coeffs):
        out[k * d] = c
    return TruncatedPowerSeries(out, s.base_point)


def poincare_series(
    A: RationalFunction, z0: PointP1, order: int
) -> TruncatedPowerSeries:
    """Normalized linearizing series at a fixed point with multiplier lam.

    Requires lam != 0 and lam^k != lam for 2 <= k <= order (automatic at a
    repelling point).  The base point must be finite and not a pole of A;
    conjugate by 1/z first otherwise.
    """
    if order < 1:
        raise ValueError("series order must be >= 1")
    if z0.is_infinity:
        raise PoleAtBasePoint(
            "base point at infinity: conjugate the map by 1/z first"
        )
    if A.den.evaluate(z0.value).is_zero():
        raise PoleAtBasePoint(
            "base point is a pole: conjugate the map by 1/z first"
        )
    if A.evaluate(z0) != z0:
        raise NotAFixedPoint(f"{z0} is not a fixed point of the map")
    lam = multiplier_at(A, z0)
    if lam.is_zero():
        raise ZeroMultiplier("superattracting fixed point has no linearization")
    lam_pow = lam
    for k in range(2, order + 1):
        lam_pow = lam_pow * lam
        if lam_pow == lam:
            raise ResonantMultiplier(f"multiplier resonance lam^{k} = lam")
    coeffs = [z0.value, ONE]
    lam_pow = lam
    for k in range(2, order + 1):
        lam_pow = lam_pow * lam
        partial = TruncatedPowerSeries(coeffs + [ZERO])
        lhs = compose_ratfunc(A, partial)
        rhs = partial.argument_scale(lam)
        mismatch = lhs.coeffs[k] - rhs.coeffs[k]
        coeffs.append(mismatch / (lam_pow - lam))
    return TruncatedPowerSeries(coeffs, z0)


def poincare_residual(
    A: RationalFunction, s: TruncatedPowerSeries, lam: ExactScalar
) -> TruncatedPowerSeries:
    """A(s(z)) - s(lam z), truncated at the order of s."""
    return compose_ratfunc(A, s) - s.argument_scale(lam)


def match_scale(
    target: TruncatedPowerSeries,
    candidate: TruncatedPowerSeries,
    field: Field = QQ,
):
    """Scalar c with candidate(c*z) == target through the common order, or None.

    This implements comparison up to the argument-rescaling freedom of
    linearizing series.
    """
    n = min(target.order, candidate.order)
    t, c = target.truncate(n), candidate.truncate(n)
    if t.coeffs[0] != c.coeffs[0]:
        return None
    k = next(
        (
            j
            for j in range(1, n + 1)
            if not t.coeffs[j].is_zero() or not c.coeffs[j].is_zero()
        ),
        None,
    )
    if k is None:
        return ONE
    if t.coeffs[k].is_zero() or c.coeffs[k].is_zero():
        return None
    ratio = t.coeffs[k] / c.coeffs[k]
    base = nth_root_in_field(ratio, k, field)
    if base is None:
        return None
    for u in units(field):
        scl = base * u
        if (scl**k) == ratio and c.argument_scale(scl).coeffs == t.coeffs:
            return scl
    return None


def transport_poincare(
    X: RationalFunction, P: TruncatedPowerSeries
) -> TruncatedPowerSeries:
    """X composed with a linearizing series; X must be finite at P(0)."""
    return compose_ratfunc(X, P)


class BoettcherSeries:
    """Laurent data a(-1) z + a0 + a1/z + ... + aM/z^M with a(-1) != 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(
            c if isinstance(c, ExactScalar) else ExactScalar(c) for c in coeffs
        )
        if len(cs) < 2:
            raise ValueError("need at least a(-1) and a0")
        if cs[0].is_zero():
            raise ValueError("leading Laurent coefficient a(-1) must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, v):
        raise AttributeError("BoettcherSeries is immutable")

    @property
    def order(self) -> int:
        """Largest k with a_k stored."""
        return len(self.coeffs) - 2

    def a(self, k: int) -> ExactScalar:
        """Coefficient a_k of z^(-k), for -1 <= k <= order."""
        return self.coeffs[k + 1]

    def __eq__(self, other):
        return isinstance(other, BoettcherSeries) and self.coeffs == other.coeffs

    def to_phi(self) -> TruncatedPowerSeries:
        """The power series phi with B(z) = z * phi(1/z)."""
        return TruncatedPowerSeries(self.coeffs)

    def to_laurent(self) -> "LaurentSeries":
        return LaurentSeries(1, self.coeffs)

    def to_json(self) -> dict:
        return {
            "leading_index": "-1",
            "order": str(self.order),
            "coefficients": [str(c) for c in self.coeffs],
        }

    def __repr__(self):
        return f"BoettcherSeries({[str(c) for c in self.coeffs[:6]]}...)"


def _as_polynomial(A) -> Polynomial:
    if isinstance(A, Polynomial):
        return A
    if isinstance(A, RationalFunction):
        if A.den.degree() != 0:
            raise DegreeTooSmall("Boettcher series needs a polynomial map")
        lead = A.den.leading()
        return A.num if lead.is_one() else A.num.scale(ONE / lead)
    raise TypeError("expected a polynomial")


def _boettcher_rhs(A: Polynomial, phi: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """sum_j A_j w^(n-j) phi(w)^j, truncated at the order of phi."""
    n = A.degree()
    order = phi.order
    zero = [ZERO] * (order + 1)
    out = TruncatedPowerSeries(zero)
    for j in range(n, -1, -1):
        out = out * phi
        cj = A.coeff(j)
        if not cj.is_zero() and n - j <= order:
            bump = list(zero)
            bump[n - j] = cj
            out = out + TruncatedPowerSeries(bump)
    return out


def boettcher_series(
    A,
    order: int,
    leading_choice: ExactScalar | None = None,
    field: Field = QQ,
) -> BoettcherSeries:
    """Solve B(z^n) = A(B(z)) through Laurent coefficients a(-1)..a(order).

    The leading coefficient must satisfy lead(A) * a(-1)^(n-1) = 1; when
    several field solutions exist, the one with positive real part, then
    positive imaginary part, is chosen.
    """
    A = _as_polynomial(A)
    n = A.degree()
    if n < 2:
        raise DegreeTooSmall("Boettcher series needs degree >= 2")
    lead = A.leading()
    radicand = ONE / lead
    if leading_choice is not None:
        if lead * leading_choice ** (n - 1) != ONE:
            raise LeadingCoefficientNotSolvable(
                f"supplied leading coefficient does not satisfy "
                f"lead * a^{n - 1} = 1",
                radicand=radicand,
                exponent=n - 1,
            )
        a_lead = leading_choice
    else:
        a_lead = nth_root_in_field(radicand, n - 1, field)
        if a_lead is None:
            raise LeadingCoefficientNotSolvable(
                f"no element of {field} solves a^{n - 1} = {radicand}",
                radicand=radicand,
                exponent=n - 1,
            )
    # phi(w) = a(-1) + a0 w + a1 w^2 + ...; solve phi(w^n) = sum_j A_j w^(n-j) phi^j
    bs = [a_lead]
    n_scalar = ExactScalar(n)
    for k in range(1, order + 2):
        partial = TruncatedPowerSeries(bs + [ZERO])
        rhs = _boettcher_rhs(A, partial)
        lhs = series_substitute_power(partial, n).truncate(k)
        residual = rhs.coeffs[k] - lhs.coeffs[k]
        bs.append(-(residual / n_scalar))
    return BoettcherSeries(bs)


def boettcher_residual(A, B: BoettcherSeries, terms: int) -> list[ExactScalar]:
    """Laurent coefficients of B(z^n) - A(B(z)) from power n downward."""
    A = _as_polynomial(A)
    n = A.degree()
    phi = B.to_phi()
    avail = min(terms, phi.order)
    rhs = _boettcher_rhs(A, phi)
    lhs = series_substitute_power(phi, n).truncate(phi.order)
    diff = lhs - rhs
    return list(diff.coeffs[: avail + 1])


# -- Laurent series helper ---------------------------------------------------


class LaurentSeries:
    """Finitely many Laurent coefficients descending from a top power."""

    __slots__ = ("top", "coeffs")

    def __init__(self, top: int, coeffs):
        cs = tuple(
            c if isinstance(c, ExactScalar) else ExactScalar(c) for c in coeffs
        )
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, v):
        raise AttributeError("LaurentSeries is immutable")

    @property
    def valid_bottom(self) -> int:
        return self.top - len(self.coeffs) + 1

    def coeff(self, power: int) -> ExactScalar:
        idx = self.top - power
        if idx < 0:
            return ZERO
        if idx >= len(self.coeffs):
            raise IndexError(f"power {power} below validity window")
        return self.coeffs[idx]

    @staticmethod
    def constant(c, length: int) -> "LaurentSeries":
        return LaurentSeries(0, [c] + [ZERO] * (length - 1))

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.top, [a * c for a in self.coeffs])

    def add(self, other: "LaurentSeries") -> "LaurentSeries":
        top = max(self.top, other.top)
        bottom = max(self.valid_bottom, other.valid_bottom)
        out = []
        for power in range(top, bottom - 1, -1):
            a = self.coeff(power) if power >= self.valid_bottom else ZERO
            b = other.coeff(power) if power >= other.valid_bottom else ZERO
            out.append(a + b)
        return LaurentSeries(top, out)

    def mul(self, other: "LaurentSeries") -> "LaurentSeries":
        top = self.top + other.top
        bottom = max(
            self.valid_bottom + other.top, other.valid_bottom + self.top
        )
        length = top - bottom + 1
        out = [ZERO] * length
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= length:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LaurentSeries(top, out)

    def compose_polynomial(self, p: Polynomial) -> "LaurentSeries":
        """p(self) by Horner."""
        window = len(self.coeffs)
        out = LaurentSeries(0, [ZERO] * window)
        for c in reversed(p.coeffs):
            out = out.mul(self)
            out = out.add(LaurentSeries.constant(c, 1))
        return out

    def substitute_power(self, d: int) -> "LaurentSeries":
        """self(z^d)."""
        if d < 1:
            raise ValueError("need d >= 1")
        top = self.top * d
        length = (len(self.coeffs) - 1) * d + 1
        out = [ZERO] * length
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return LaurentSeries(top, out)

    def agrees_with(self, other: "LaurentSeries", down_to: int) -> bool:
        """Coefficientwise equality for all powers >= down_to."""
        top = max(self.top, other.top)
        if down_to < max(self.valid_bottom, other.valid_bottom):
            raise IndexError("comparison window below validity")
        for power in range(top, down_to - 1, -1):
            a = self.coeff(power)
            b = other.coeff(power)
            if a != b:
                return False
        return True

    def __repr__(self):
        return f"LaurentSeries(top={self.top}, len={len(self.coeffs)})"
